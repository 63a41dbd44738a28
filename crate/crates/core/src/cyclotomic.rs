//! Cyclotomic polynomials and exact remainders modulo them.
//!
//! A Fourier coefficient of an integer mask on `Z_n^d` is `P(ω_n)` for an integer
//! polynomial `P` of degree `< n`. Because `Φ_n` is the minimal polynomial of
//! `ω_n`, `P(ω_n) = 0` exactly when `Φ_n` divides `P`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{divisors, totient};
use crate::error::{Error, Result};

/// Coefficients of `Φ_m`, lowest degree first, with a machine-word copy when every
/// coefficient fits.
#[derive(Debug)]
pub struct Cyclotomic {
    pub big: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl Cyclotomic {
    pub fn degree(&self) -> usize {
        self.big.len() - 1
    }
}

/// Memoized `m ↦ Φ_m`. Concurrent readers share the lock; concurrent inserts of
/// the same `m` are idempotent.
#[derive(Debug, Default)]
pub struct CyclotomicCache {
    map: RwLock<HashMap<u64, Arc<Cyclotomic>>>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache.
    pub fn global() -> &'static CyclotomicCache {
        static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
        CACHE.get_or_init(CyclotomicCache::new)
    }

    pub fn get(&self, m: u64) -> Arc<Cyclotomic> {
        assert!(m >= 1, "cyclotomic index must be positive");
        if let Some(c) = self.map.read().expect("cache poisoned").get(&m) {
            return Arc::clone(c);
        }
        // z^m - 1 divided by Φ_d for every proper divisor d.
        let mut quotient = vec![BigInt::zero(); m as usize + 1];
        quotient[0] = -BigInt::one();
        quotient[m as usize] = BigInt::one();
        for d in divisors(m).into_iter().filter(|&d| d < m) {
            let phi_d = self.get(d);
            let (q, r) = divrem_monic(&quotient, &phi_d.big);
            assert!(
                r.iter().all(Zero::is_zero),
                "Φ_{d} does not divide z^{m} - 1 after earlier divisions"
            );
            quotient = q;
        }
        let entry = Arc::new(Self::checked(m, quotient));
        let mut map = self.map.write().expect("cache poisoned");
        Arc::clone(map.entry(m).or_insert(entry))
    }

    fn checked(m: u64, coeffs: Vec<BigInt>) -> Cyclotomic {
        assert_eq!(coeffs.len() as u64 - 1, totient(m), "deg Φ_{m} ≠ φ({m})");
        assert!(coeffs.last().unwrap().is_one(), "Φ_{m} not monic");
        let small = coeffs.iter().map(ToPrimitive::to_i64).collect();
        Cyclotomic { big: coeffs, small }
    }
}

/// `Φ_m` from the global cache.
pub fn cyclotomic(m: u64) -> Arc<Cyclotomic> {
    CyclotomicCache::global().get(m)
}

/// Quotient and remainder of `num` by a monic `den`.
pub fn divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (vec![BigInt::zero()], num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den[..dd].iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
        quot[i - dd] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rem_small(p: &[i64], phi: &[i64]) -> Option<Vec<i128>> {
    let deg = phi.len() - 1;
    let mut r: Vec<i128> = p.iter().map(|&c| c as i128).collect();
    for i in (deg..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi[..deg].iter().enumerate() {
            let t = c.checked_mul(pj as i128)?;
            r[i - deg + j] = r[i - deg + j].checked_sub(t)?;
        }
        r[i] = 0;
    }
    r.truncate(deg.min(r.len()));
    Some(r)
}

/// `P mod Φ_m` for an integer polynomial `P` (lowest degree first), computed exactly.
///
/// Machine-width arithmetic is tried first; overflow falls back to big integers.
pub fn reduce_mod_cyclotomic(p: &[i64], m: u64) -> Vec<BigInt> {
    let phi = cyclotomic(m);
    if let Some(small) = &phi.small {
        if let Some(r) = rem_small(p, small) {
            return r.into_iter().map(BigInt::from).collect();
        }
    }
    let big: Vec<BigInt> = p.iter().map(|&c| BigInt::from(c)).collect();
    divrem_monic(&big, &phi.big).1
}

/// Whether `P(e^{2πi/m}) = 0`, i.e. `Φ_m | P`.
pub fn vanishes_at_root(p: &[i64], m: u64) -> bool {
    reduce_mod_cyclotomic(p, m).iter().all(Zero::is_zero)
}

/// Checks `∏_{d | m} Φ_d = z^m − 1`.
pub fn verify_product_identity(m: u64) -> Result<()> {
    let mut prod = vec![BigInt::one()];
    for d in divisors(m) {
        prod = poly_mul(&prod, &cyclotomic(d).big);
    }
    let mut expected = vec![BigInt::zero(); m as usize + 1];
    expected[0] = -BigInt::one();
    expected[m as usize] = BigInt::one();
    if prod != expected {
        return Err(Error::InternalInconsistency(format!(
            "product of Φ_d over d | {m} is not z^{m} - 1"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(m: u64) -> Vec<i64> {
        cyclotomic(m).big.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(coeffs(1), vec![-1, 1]);
        assert_eq!(coeffs(2), vec![1, 1]);
        assert_eq!(coeffs(3), vec![1, 1, 1]);
        assert_eq!(coeffs(4), vec![1, 0, 1]);
        assert_eq!(coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_coefficient_of_minus_two() {
        assert!(coeffs(105).contains(&-2));
    }

    #[test]
    fn product_identity_up_to_64() {
        for m in 1..=64 {
            verify_product_identity(m).unwrap();
        }
    }

    #[test]
    fn independent_cache_agrees_with_global() {
        let local = CyclotomicCache::new();
        for m in [1, 7, 30, 36] {
            assert_eq!(local.get(m).big, cyclotomic(m).big);
        }
    }

    #[test]
    fn concurrent_inserts_are_consistent() {
        let cache = Arc::new(CyclotomicCache::new());
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let cache = Arc::clone(&cache);
                std::thread::spawn(move || (1..=40).map(|m| cache.get(m).degree()).collect::<Vec<_>>())
            })
            .collect();
        let expected: Vec<usize> = (1..=40).map(|m| totient(m) as usize).collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), expected);
        }
    }

    #[test]
    fn vanishing_sums() {
        // 1 + z + z^2 vanishes at ω_3; 2 + z^4 does not vanish at ω_12.
        assert!(vanishes_at_root(&[1, 1, 1], 3));
        let mut p = vec![0i64; 12];
        p[0] = 2;
        p[4] = 1;
        assert!(!vanishes_at_root(&p, 12));
    }

    #[test]
    fn machine_and_big_paths_agree() {
        let mut seed = 0x9e37_79b9u64;
        for m in [5u64, 12, 30, 105] {
            let phi = cyclotomic(m);
            for _ in 0..20 {
                let p: Vec<i64> = (0..m)
                    .map(|_| {
                        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (seed >> 40) as i64 % 7 - 3
                    })
                    .collect();
                let big: Vec<BigInt> = p.iter().map(|&c| BigInt::from(c)).collect();
                let expected = divrem_monic(&big, &phi.big).1;
                assert_eq!(reduce_mod_cyclotomic(&p, m), expected);
            }
        }
    }
}
