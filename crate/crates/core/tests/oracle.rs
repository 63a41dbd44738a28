//! Verdicts compared against brute force written independently of the library.

use std::f64::consts::TAU;

use fuglede::verify::{search_tiling_complement, verify_spectral, verify_tiling_direct, verify_tiling_fourier, SearchOptions};
use fuglede::{GroupContext, PointMultiset};

/// All subsets of `Z_n` as bit masks, with the set sums computed by hand.
fn tiles(n: usize, a: u32, b: u32) -> bool {
    let mut hits = vec![0; n];
    for i in (0..n).filter(|i| a >> i & 1 == 1) {
        for j in (0..n).filter(|j| b >> j & 1 == 1) {
            hits[(i + j) % n] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

fn dft_zero(n: usize, a: u32, x: usize) -> bool {
    let (mut re, mut im) = (0.0, 0.0);
    for i in (0..n).filter(|i| a >> i & 1 == 1) {
        let t = TAU * (i * x) as f64 / n as f64;
        re += t.cos();
        im += t.sin();
    }
    re.hypot(im) < 1e-9
}

fn spectral(n: usize, a: u32, s: u32) -> bool {
    if a.count_ones() != s.count_ones() {
        return false;
    }
    let idx: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
    idx.iter()
        .all(|&x| idx.iter().all(|&y| x == y || dft_zero(n, a, (x + n - y) % n)))
}

fn mask(ctx: &GroupContext, bits: u32) -> PointMultiset {
    let n = ctx.modulus() as usize;
    PointMultiset::from_set(ctx, (0..n).filter(|i| bits >> i & 1 == 1).map(|i| ctx.element(&[i as i64]).unwrap())).unwrap()
}

#[test]
fn tiling_verdicts_match_brute_force() {
    for n in [4usize, 6, 8] {
        let ctx = GroupContext::new(n as u64, 1).unwrap();
        let (mut yes, mut no) = (0, 0);
        for a in 1u32..1 << n {
            for b in 1u32..1 << n {
                if (a.count_ones() * b.count_ones()) as usize != n {
                    continue;
                }
                let expected = tiles(n, a, b);
                let (am, bm) = (mask(&ctx, a), mask(&ctx, b));
                assert_eq!(verify_tiling_direct(&am, &bm).unwrap().verdict, expected, "n={n} a={a:b} b={b:b}");
                assert_eq!(verify_tiling_fourier(&am, &bm).unwrap().verdict, expected, "n={n} a={a:b} b={b:b}");
                if expected {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
        }
        assert!(yes > 0 && no > 0);
    }
}

#[test]
fn spectral_verdicts_match_floating_point_dft() {
    for n in [5usize, 6, 8] {
        let ctx = GroupContext::new(n as u64, 1).unwrap();
        for a in 1u32..1 << n {
            for s in (1u32..1 << n).filter(|s| s & 1 == 1 && s.count_ones() == a.count_ones()) {
                let sm = mask(&ctx, s).to_vec();
                assert_eq!(
                    verify_spectral(&mask(&ctx, a), &sm).unwrap().verdict,
                    spectral(n, a, s),
                    "n={n} a={a:b} s={s:b}"
                );
            }
        }
    }
}

#[test]
fn complement_search_matches_brute_force() {
    let opts = SearchOptions::default();
    for n in [6usize, 8, 9, 10] {
        let ctx = GroupContext::new(n as u64, 1).unwrap();
        for a in (1u32..1 << n).filter(|a| a & 1 == 1) {
            let expected = (1u32..1 << n).any(|b| tiles(n, a, b));
            let found = search_tiling_complement(&mask(&ctx, a), &opts).unwrap();
            assert_eq!(found.is_some(), expected, "n={n} a={a:b}");
        }
    }
}
