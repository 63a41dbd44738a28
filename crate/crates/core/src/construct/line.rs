//! Deciding whether a set of prime size tiles the integers.
//!
//! A set `A ⊂ Z` of prime size `p` tiles `Z` iff `Φ_{p^k}` divides its mask
//! polynomial for some `k ≥ 1`. Since `deg Φ_{p^k} = p^{k−1}(p−1)` cannot exceed
//! the degree of the mask polynomial, only finitely many `k` need checking.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::cyclotomic::vanishes_at_root;
use crate::error::{Error, Result};
use crate::fourier::PointMultiset;
use crate::group::GroupContext;
use crate::verify::{verify_tiling_direct, TilingCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum LineDecision {
    /// `A ⊕ ({0, …, p^{k−1} − 1} + p^k Z) = Z`, checked on one period.
    Tiles {
        k: u32,
        period: u64,
        complement: Vec<u64>,
        certificate: TilingCertificate,
    },
    NonTile,
}

impl LineDecision {
    pub fn tiles(&self) -> bool {
        matches!(self, LineDecision::Tiles { .. })
    }
}

pub fn prime_size_tiles_z(a: &[i64]) -> Result<LineDecision> {
    let p = a.len() as u64;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("entries must be distinct".into()));
    }
    let min = sorted[0];
    let diam = (sorted[sorted.len() - 1] - min) as u64;
    let mut mask = vec![0i64; diam as usize + 1];
    for &x in &sorted {
        mask[(x - min) as usize] = 1;
    }

    let mut k = 1u32;
    let mut low = 1u64;
    while low * (p - 1) <= diam {
        let period = low * p;
        if vanishes_at_root(&mask, period) {
            return recipe(&sorted, p, k, low, period);
        }
        k += 1;
        low = period;
    }
    Ok(LineDecision::NonTile)
}

fn recipe(a: &[i64], p: u64, k: u32, low: u64, period: u64) -> Result<LineDecision> {
    let mut residues: Vec<u64> = a.iter().map(|&x| x.rem_euclid(period as i64) as u64).collect();
    residues.sort_unstable();
    let r = residues[0] % low;
    let expected: Vec<u64> = {
        let mut e: Vec<u64> = (0..p).map(|j| r + j * low).collect();
        e.sort_unstable();
        e
    };
    if residues != expected {
        return Err(Error::InternalInconsistency(format!(
            "residues mod {period} are {residues:?}, expected {expected:?}"
        )));
    }
    let ctx = GroupContext::new(period, 1)?;
    let am = PointMultiset::from_set(&ctx, residues.iter().map(|&x| ctx.canonical(vec![x]).unwrap()))?;
    let complement: Vec<u64> = (0..low).collect();
    let bm = PointMultiset::from_set(&ctx, complement.iter().map(|&x| ctx.canonical(vec![x]).unwrap()))?;
    let certificate = verify_tiling_direct(&am, &bm)?;
    if !certificate.verdict {
        return Err(Error::InternalInconsistency(format!("recipe for k = {k} failed the cover check")));
    }
    Ok(LineDecision::Tiles {
        k,
        period,
        complement,
        certificate,
    })
}
