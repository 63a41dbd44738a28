//! Tiling complements and spectra for `p` points in general linear position in `Z^d`.
//!
//! The points are pushed into `Z_m^d` along a functional `w` for which the values
//! `⟨w, a⟩ mod m` are `p` distinct multiples of `m / p`. The preimage of
//! `{0, …, m/p − 1}` is then a complement and the multiples of `w` form a
//! spectrum, both checked in the image group. Usually `m = p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{adjugate, rank, IntegerMatrix};
use crate::arith::{inv_mod_prime, is_prime, rem_euclid};
use crate::error::{Error, Result};
use crate::fourier::PointMultiset;
use crate::group::{GroupContext, GroupElement};
use crate::verify::{verify_spectral, verify_tiling_direct, SearchOptions, SpectralCertificate, TilingCertificate};

/// How the functional or complement was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Linear solve on an invertible maximal minor.
    Solver,
    /// Exhaustive scan of `Z_p^d`.
    Scan,
    /// Adjugate lift into `Z_{p^{e+1}}`, where `p^e` exactly divides a maximal minor.
    Lift,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functional {
    pub w: Vec<u64>,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPositionResult {
    pub points: Vec<Vec<i64>>,
    /// The functional, reduced mod `modulus`.
    pub functional_w: Vec<u64>,
    pub route: Route,
    /// `p`, or `p^{e+1}` after the adjugate lift.
    pub modulus: u64,
    pub complement_descr: String,
    pub image_pair: TilingCertificate,
    pub spectrum: Vec<GroupElement>,
    pub spectral: SpectralCertificate,
    pub fallback_used: bool,
}

fn validate(points: &[Vec<i64>]) -> Result<(u64, usize)> {
    let p = points.len() as u64;
    if p < 2 {
        return Err(Error::Precondition("need at least two points".into()));
    }
    let d = points[0].len();
    if let Some(bad) = points.iter().find(|x| x.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
    }
    if d < p as usize - 1 {
        return Err(Error::Dimension { d, needed: p as usize - 1 });
    }
    Ok((p, d))
}

fn differences(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    points[1..]
        .iter()
        .map(|x| x.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect()
}

/// Whether the differences from the first point are linearly independent over `Q`.
pub fn check_general_position(points: &[Vec<i64>]) -> Result<bool> {
    let (p, _) = validate(points)?;
    Ok(rank(&differences(points)) == p as usize - 1)
}

fn distinct_values(diffs: &[Vec<i64>], w: &[u64], p: u64) -> bool {
    let mut seen = vec![false; p as usize];
    seen[0] = true;
    for v in diffs {
        let s: i128 = v.iter().zip(w).map(|(&a, &b)| a as i128 * b as i128).sum();
        let r = s.rem_euclid(p as i128) as usize;
        if seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

fn next_subset(idx: &mut [usize], d: usize) -> bool {
    let q = idx.len();
    for i in (0..q).rev() {
        if idx[i] < d - q + i {
            idx[i] += 1;
            for j in i + 1..q {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn solve(diffs: &[Vec<i64>], p: u64, d: usize) -> Option<Vec<u64>> {
    let q = diffs.len();
    let mut cols: Vec<usize> = (0..q).collect();
    loop {
        let rows: Vec<Vec<i64>> = diffs.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
        let m = IntegerMatrix::from_rows(&rows);
        let (adj, det) = adjugate(&m);
        let det_mod = det.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        if det_mod != 0 {
            let inv = inv_mod_prime(det_mod, p).expect("nonzero residue mod a prime");
            let mut w = vec![0u64; d];
            for (i, &c) in cols.iter().enumerate() {
                let s: BigInt = (0..q).map(|j| adj.get(i, j) * BigInt::from(j as u64 + 1)).sum();
                let s = s.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                w[c] = s * inv % p;
            }
            return Some(w);
        }
        if !next_subset(&mut cols, d) {
            return None;
        }
    }
}

/// A functional `w ∈ Z_p^d` separating the points mod `p`.
///
/// The solver route returns `⟨w, v_i⟩ ≡ i` for the differences `v_i` from the
/// first point, using the first coordinate set whose minor is a unit mod `p`.
/// Otherwise every `w` is tried in lexicographic order, up to `scan_bound` candidates.
pub fn separating_functional(points: &[Vec<i64>], scan_bound: u64) -> Result<Option<Functional>> {
    let (p, d) = validate(points)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let diffs = differences(points);
    if let Some(w) = solve(&diffs, p, d) {
        if !distinct_values(&diffs, &w, p) {
            return Err(Error::InternalInconsistency(format!("solved functional {w:?} does not separate")));
        }
        return Ok(Some(Functional { w, route: Route::Solver }));
    }
    let ctx = GroupContext::new(p, d)?.with_bound(scan_bound);
    for w in ctx.elements()? {
        if distinct_values(&diffs, w.coords(), p) {
            return Ok(Some(Functional {
                w: w.coords().to_vec(),
                route: Route::Scan,
            }));
        }
    }
    Ok(None)
}

/// The adjugate lift: on the `(p−1)`-coordinate minor whose determinant `D` has the
/// smallest `p`-adic valuation `e`, `w = adj(V)·(1, …, p−1)` gives `⟨w, v_i⟩ = D·i`.
/// These values are distinct multiples of `p^e` modulo `p^{e+1}`. Returns `w` reduced
/// mod `p^{e+1}` together with that modulus.
fn lifted_functional(diffs: &[Vec<i64>], p: u64, d: usize) -> Result<(Vec<u64>, u64)> {
    let q = diffs.len();
    let bp = BigInt::from(p);
    let mut best: Option<(u32, Vec<usize>, IntegerMatrix, BigInt)> = None;
    let mut cols: Vec<usize> = (0..q).collect();
    loop {
        let rows: Vec<Vec<i64>> = diffs.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
        let (adj, det) = adjugate(&IntegerMatrix::from_rows(&rows));
        if !det.is_zero() {
            let mut e = 0;
            let mut rest = det.clone();
            while rest.is_multiple_of(&bp) {
                rest /= &bp;
                e += 1;
            }
            if best.as_ref().is_none_or(|b| e < b.0) {
                best = Some((e, cols.clone(), adj, det));
            }
        }
        if !next_subset(&mut cols, d) {
            break;
        }
    }
    let (e, cols, adj, _) = best.ok_or(Error::NotInGeneralPosition)?;
    let m = p
        .checked_pow(e + 1)
        .ok_or_else(|| Error::NotConstructed(format!("modulus {p}^{} overflows", e + 1)))?;
    let bm = BigInt::from(m);
    let mut w = vec![0u64; d];
    for (i, &c) in cols.iter().enumerate() {
        let s: BigInt = (0..q).map(|j| adj.get(i, j) * BigInt::from(j as u64 + 1)).sum();
        w[c] = s.mod_floor(&bm).to_u64().unwrap();
    }
    Ok((w, m))
}

/// Verifies the pair induced by `w` in `Z_m^d` (or in `Z_m` through `x ↦ ⟨w, x⟩`
/// when `m^d` exceeds the search bound). `m / p` residues form the complement.
fn push_forward(
    translated: &[Vec<i64>],
    w: &[u64],
    m: u64,
    p: u64,
    opts: &SearchOptions,
) -> Result<(TilingCertificate, SpectralCertificate)> {
    let d = w.len();
    let low = m / p;
    let value = |x: &[i64]| -> u64 {
        let s: i128 = x.iter().zip(w).map(|(&a, &b)| a as i128 * b as i128).sum();
        s.rem_euclid(m as i128) as u64
    };
    let full = GroupContext::new(m, d)?;
    let fits = full.size().map_or(false, |s| s as u64 <= opts.max_group);
    let (ctx, a, b, s) = if fits {
        let (a, _) = PointMultiset::from_int_points(&full, translated)?;
        let mut b = Vec::new();
        for x in full.elements()? {
            let xs: Vec<i64> = x.coords().iter().map(|&c| c as i64).collect();
            if value(&xs) < low {
                b.push(x);
            }
        }
        let wel = full.canonical(w.to_vec())?;
        let s: Vec<GroupElement> = (0..p).map(|j| full.scale(&wel, j)).collect();
        (full, a, b, s)
    } else {
        let line = GroupContext::new(m, 1)?;
        let pts: Vec<Vec<i64>> = translated.iter().map(|x| vec![value(x) as i64]).collect();
        let (a, _) = PointMultiset::from_int_points(&line, &pts)?;
        let b = (0..low).map(|r| line.canonical(vec![r])).collect::<Result<Vec<_>>>()?;
        let s = (0..p).map(|j| line.canonical(vec![j])).collect::<Result<Vec<_>>>()?;
        (line, a, b, s)
    };
    if !a.is_set() {
        return Err(Error::InternalInconsistency(format!("points collide under w = {w:?} mod {m}")));
    }
    let tiling = verify_tiling_direct(&a, &PointMultiset::from_set(&ctx, b)?)?;
    let spectral = verify_spectral(&a, &s)?;
    if !tiling.verdict || !spectral.verdict {
        return Err(Error::InternalInconsistency(format!(
            "w = {w:?} mod {m} failed verification: tiling {}, spectral {}",
            tiling.verdict, spectral.verdict
        )));
    }
    Ok((tiling, spectral))
}

fn describe(w: &[u64], m: u64, p: u64) -> String {
    let d = w.len();
    let terms: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, c)| format!("{c}·x{}", i + 1))
        .collect();
    let form = terms.join(" + ");
    if m == p {
        format!("{{x ∈ Z^{d} : {form} ≡ 0 mod {p}}}")
    } else {
        format!("{{x ∈ Z^{d} : ({form} mod {m}) < {}}}", m / p)
    }
}

/// Builds and verifies a complement and a spectrum for `p` points in general position.
///
/// A separating functional mod `p` is used when one exists. Otherwise the
/// adjugate lift supplies a functional into `Z_{p^{e+1}}` and `fallback_used` is set.
/// All returned certificates have been checked.
pub fn general_position_tiling(points: &[Vec<i64>], opts: &SearchOptions) -> Result<GeneralPositionResult> {
    let (p, d) = validate(points)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !check_general_position(points)? {
        return Err(Error::NotInGeneralPosition);
    }
    let diffs = differences(points);
    let translated: Vec<Vec<i64>> = std::iter::once(vec![0; d]).chain(diffs.iter().cloned()).collect();

    let (w, m, route) = match separating_functional(points, opts.max_group)? {
        Some(f) => (f.w, p, f.route),
        None => {
            let (w, m) = lifted_functional(&diffs, p, d)?;
            (w, m, Route::Lift)
        }
    };
    let (image_pair, spectral) = push_forward(&translated, &w, m, p, opts)?;
    Ok(GeneralPositionResult {
        points: points.to_vec(),
        complement_descr: describe(&w, m, p),
        functional_w: w,
        route,
        modulus: m,
        spectrum: spectral.s.clone(),
        image_pair,
        spectral,
        fallback_used: route == Route::Lift,
    })
}

/// Rank of the differences from the first point over `F_p`; the solver route
/// applies exactly when this is `p − 1`.
pub fn rank_mod_p(points: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = differences(points)
        .iter()
        .map(|v| v.iter().map(|&c| rem_euclid(c, p)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod_prime(a[r][c], p).expect("nonzero pivot mod a prime");
        for i in r + 1..a.len() {
            let f = a[i][c] * inv % p;
            for j in c..cols {
                a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}
