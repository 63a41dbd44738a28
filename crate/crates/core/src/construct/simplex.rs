//! The simplex `{0, e_1, 2e_2, …, (p−1)e_{p−1}}` in `Z_p^{p−1}` with an explicit
//! tiling complement and spectrum.

use crate::arith::{is_prime, mod_pow};
use crate::error::{Error, Result};
use crate::fourier::PointMultiset;
use crate::group::{cyclic_span, orthogonal_group, subgroup_span, GroupContext, GroupElement};
use crate::verify::{verify_spectral, verify_tiling_direct, SpectralCertificate, TilingCertificate};

#[derive(Debug, Clone)]
pub struct SimplexPair {
    pub ctx: GroupContext,
    pub a: Vec<GroupElement>,
    pub b: Vec<GroupElement>,
    pub s: Vec<GroupElement>,
    pub tiling: TilingCertificate,
    pub spectral: SpectralCertificate,
}

/// Columns of the Vandermonde matrix over `F_p` on the nodes `1, …, p−1`; column
/// `j` is `(1, j, j², …, j^{p−2})`, so the first column is all ones.
pub fn fourier_columns(ctx: &GroupContext, p: u64) -> Result<Vec<GroupElement>> {
    (1..p)
        .map(|node| ctx.canonical((0..p - 1).map(|i| mod_pow(node, i, p)).collect()))
        .collect()
}

pub fn simplex_tiling_pair(p: u64, bound: u64) -> Result<SimplexPair> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = (p - 1) as usize;
    let ctx = GroupContext::new(p, d)?.with_bound(bound);
    ctx.size()?;

    let mut a = vec![ctx.zero()];
    for i in 1..=d {
        let mut coords = vec![0u64; d];
        coords[i - 1] = i as u64;
        a.push(ctx.canonical(coords)?);
    }
    a.sort();

    let columns = fourier_columns(&ctx, p)?;
    let ones = columns[0].clone();
    let s = cyclic_span(&ctx, &ones);
    let b = subgroup_span(&ctx, &columns[1..])?;

    let expected = p.pow(p as u32 - 2) as usize;
    if b.order() != expected {
        return Err(Error::InternalInconsistency(format!(
            "span of the Fourier columns has {} elements, expected {expected}",
            b.order()
        )));
    }
    if orthogonal_group(&ctx, &s)?.members != b.members {
        return Err(Error::InternalInconsistency(
            "complement differs from the orthogonal group of the all-ones line".into(),
        ));
    }

    let mask = PointMultiset::from_set(&ctx, a.iter().cloned())?;
    let bmask = PointMultiset::from_set(&ctx, b.members.iter().cloned())?;
    let tiling = verify_tiling_direct(&mask, &bmask)?;
    let spectral = verify_spectral(&mask, &s.members)?;
    if !tiling.verdict || !spectral.verdict {
        return Err(Error::InternalInconsistency(format!(
            "simplex certificates failed: tiling {}, spectral {}",
            tiling.verdict, spectral.verdict
        )));
    }
    Ok(SimplexPair {
        ctx,
        a,
        b: b.members,
        s: s.members,
        tiling,
        spectral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_BOUND;

    #[test]
    fn p2_and_p3() {
        let r = simplex_tiling_pair(2, DEFAULT_ENUMERATION_BOUND).unwrap();
        let g = &r.ctx;
        let e = |c: &[i64]| g.element(c).unwrap();
        assert_eq!((r.a.clone(), r.b.clone(), r.s.clone()), (vec![e(&[0]), e(&[1])], vec![e(&[0])], vec![e(&[0]), e(&[1])]));

        let r = simplex_tiling_pair(3, DEFAULT_ENUMERATION_BOUND).unwrap();
        let g = &r.ctx;
        let e = |c: &[i64]| g.element(c).unwrap();
        assert_eq!(r.a, vec![e(&[0, 0]), e(&[0, 2]), e(&[1, 0])]);
        assert_eq!(r.b, vec![e(&[0, 0]), e(&[1, 2]), e(&[2, 1])]);
        assert_eq!(r.s, vec![e(&[0, 0]), e(&[1, 1]), e(&[2, 2])]);
    }

    #[test]
    fn p5_covers_625_elements() {
        let r = simplex_tiling_pair(5, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(r.b.len(), 125);
        assert_eq!(r.ctx.size().unwrap(), 625);
        assert!(r.tiling.verdict && r.spectral.verdict);
    }

    #[test]
    fn vandermonde_columns_are_independent_mod_p() {
        // Brute force: the span of all p−1 columns is the whole group.
        for p in [3u64, 5] {
            let ctx = GroupContext::new(p, (p - 1) as usize).unwrap();
            let cols = fourier_columns(&ctx, p).unwrap();
            assert_eq!(subgroup_span(&ctx, &cols).unwrap().order(), ctx.size().unwrap());
        }
    }

    #[test]
    fn rejects_large_and_composite() {
        assert!(matches!(simplex_tiling_pair(11, DEFAULT_ENUMERATION_BOUND), Err(Error::EnumerationBound { .. })));
        assert_eq!(simplex_tiling_pair(4, DEFAULT_ENUMERATION_BOUND).unwrap_err(), Error::NotPrime(4));
    }
}
