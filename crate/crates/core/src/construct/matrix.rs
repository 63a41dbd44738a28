//! Exact integer matrices: determinant, adjugate and rank.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntegerMatrix {
            dim,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    fn zeros(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = BigInt::zero();
                for k in 0..self.dim {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scaled_identity(dim: usize, c: &BigInt) -> IntegerMatrix {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, c.clone());
        }
        m
    }

    fn minor(&self, row: usize, col: usize) -> IntegerMatrix {
        let d = self.dim - 1;
        let mut out = Self::zeros(d);
        for (oi, i) in (0..self.dim).filter(|&i| i != row).enumerate() {
            for (oj, j) in (0..self.dim).filter(|&j| j != col).enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// Adjugate `V'` (transposed signed cofactors) and `D = det V`, with `V'V = VV' = D·I`
/// checked before returning.
pub fn adjugate(v: &IntegerMatrix) -> (IntegerMatrix, BigInt) {
    let n = v.dim();
    let det = v.determinant();
    let mut adj = IntegerMatrix::zeros(n);
    if n == 1 {
        adj.set(0, 0, BigInt::one());
    } else {
        for i in 0..n {
            for j in 0..n {
                let cofactor = v.minor(i, j).determinant();
                let signed = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
                adj.set(j, i, signed);
            }
        }
    }
    let expected = IntegerMatrix::scaled_identity(n, &det);
    assert_eq!(adj.mul(v), expected, "V'V ≠ D·I");
    assert_eq!(v.mul(&adj), expected, "VV' ≠ D·I");
    (adj, det)
}

/// Rank over the rationals of a rectangular integer matrix (rows of equal length).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (top, below) = (a[r][c].clone(), a[i][c].clone());
            for j in c..cols {
                let v = &a[i][j] * &top - &a[r][j] * &below;
                a[i][j] = v;
            }
            let g = a[i].iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            if !g.is_zero() && !g.abs().is_one() {
                for x in a[i].iter_mut() {
                    *x /= &g;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    /// Leibniz expansion, independent of the elimination routine.
    fn leibniz(v: &IntegerMatrix) -> BigInt {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = v.dim();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let prod = (0..n).fold(BigInt::one(), |acc, i| acc * v.get(i, p[i]));
                if inversions % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .sum()
    }

    #[test]
    fn adjugate_examples() {
        let (adj, d) = adjugate(&m(&[&[1, 0], &[0, 2]]));
        assert_eq!((adj, d), (m(&[&[2, 0], &[0, 1]]), BigInt::from(2)));
        let (adj, d) = adjugate(&IntegerMatrix::identity(4));
        assert_eq!((adj, d), (IntegerMatrix::identity(4), BigInt::one()));
        let (adj, d) = adjugate(&m(&[&[2, 1], &[1, 1]]));
        assert_eq!((adj, d), (m(&[&[1, -1], &[-1, 2]]), BigInt::one()));
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let (adj, d) = adjugate(&m(&[&[1, 2], &[2, 4]]));
        assert!(d.is_zero());
        assert_eq!(adj, m(&[&[4, -2], &[-2, 1]]));
    }

    #[test]
    fn random_adjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = rng.gen_range(1..=4);
            let rows: Vec<Vec<i64>> = (0..q).map(|_| (0..q).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let v = IntegerMatrix::from_rows(&rows);
            // adjugate() asserts V'V = VV' = D·I itself.
            let (_, d) = adjugate(&v);
            assert_eq!(d, leibniz(&v));
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[vec![1, 1], vec![2, 2]]), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 2]]), 2);
        assert_eq!(rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 2);
        assert_eq!(rank(&[vec![0, 0, 0]]), 0);
        assert_eq!(rank(&[vec![3], vec![4]]), 1);
    }
}
