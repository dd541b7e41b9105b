//! Exact linear algebra over scalars, and integer diagonalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::kernel::Scalar;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let inner = b.len();
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut s = Scalar::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s += &(x * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Scalar], m: &Matrix) -> Vec<Scalar> {
    let cols = m.first().map_or(0, Vec::len);
    assert_eq!(v.len(), m.len(), "dimension mismatch");
    let mut out = vec![Scalar::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o += &(x * y);
            }
        }
    }
    out
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Some solution of `A x = b` (free variables zero), or `None`.
pub fn solve(a: &Matrix, b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.resize(ncols, Scalar::zero());
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Basis of `{x : A x = 0}` with `ncols` unknowns.
pub fn nullspace(a: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Matrix = a
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, Scalar::zero());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][f];
            }
            v
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(vec![]);
    }
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn scale(m: &Matrix, c: &Scalar) -> Matrix {
    m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(Scalar::is_zero))
}

/// Integer diagonalization `U A V = D` with `U`, `V` unimodular.
///
/// `D` is diagonal with nonnegative entries; the nonzero ones come first.
/// The divisibility chain of a true Smith form is not enforced (nothing
/// here needs it).
pub struct Diagonalization {
    pub u: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
    pub v: Vec<Vec<BigInt>>,
    pub rank: usize,
}

pub fn diagonalize(a: &[Vec<BigInt>], cols: usize) -> Diagonalization {
    let rows = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let unit = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    let mut u = unit(rows);
    let mut v = unit(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            for j in 0..cols {
                let d = &q * &m[t][j];
                m[i][j] -= d;
            }
            for j in 0..rows {
                let d = &q * &u[t][j];
                u[i][j] -= d;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in 0..rows {
                let d = &q * &m[i][t];
                m[i][j] -= d;
            }
            for i in 0..cols {
                let d = &q * &v[i][t];
                v[i][j] -= d;
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue; // a smaller remainder appeared; pivot again
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    Diagonalization { u, diag, v, rank: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn solve_and_nullspace() {
        let a = from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let b = vec![Scalar::from_int(6), Scalar::from_int(12)];
        let x = solve(&a, &b, 3).unwrap();
        assert_eq!(vec_mat(&x, &transpose(&a)), b);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(vec_mat(v, &transpose(&a)).iter().all(Scalar::is_zero));
        }
        assert!(solve(&a, &[Scalar::one(), Scalar::zero()], 3).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&from_ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn diagonalize_example() {
        let a = int_mat(&[&[1, 1]]);
        let d = diagonalize(&a, 2);
        assert_eq!(d.rank, 1);
        let prod = int_mul(&int_mul(&d.u, &a), &d.v);
        assert_eq!(prod, int_mat(&[&[1, 0]]));
    }

    proptest! {
        #[test]
        fn diagonalize_is_equivalence(entries in proptest::collection::vec(-6i64..6, 12)) {
            let a: Vec<Vec<BigInt>> = entries.chunks(4).map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let d = diagonalize(&a, 4);
            let prod = int_mul(&int_mul(&d.u, &a), &d.v);
            for (i, row) in prod.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if i != j {
                        prop_assert!(x.is_zero());
                    } else {
                        prop_assert_eq!(x, &d.diag[i]);
                    }
                }
            }
            let sa: Matrix = a.iter().map(|r| r.iter().map(|x| Scalar::from_bigint(x.clone())).collect()).collect();
            prop_assert_eq!(d.rank, rank(&sa));
        }
    }
}
