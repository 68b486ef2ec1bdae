//! Integer lattice linear algebra: kernels via Hermite-style row reduction,
//! LLL reduction and Smith normal form diagonals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(a: &[Vec<i64>]) -> IntMatrix {
    a.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// A Z-basis of `{v : A v = 0}` for an `r x n` matrix `A`.
///
/// Rows of `[Aᵀ | I]` are reduced with unimodular operations until the
/// `Aᵀ` part is in echelon form; the identity part of the zero rows then
/// spans the kernel.
pub fn kernel_basis(a: &IntMatrix, ncols: usize) -> IntMatrix {
    let r = a.len();
    let n = ncols;
    let mut m: IntMatrix = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..r).map(|i| a[i][j].clone()).collect();
            row.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..r {
        if rank == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in rank..n {
                if !m[i][c].is_zero() && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            m.swap(rank, p);
            let mut done = true;
            for i in rank + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[rank][c]);
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                rank += 1;
                break;
            }
        }
    }
    m[rank..].iter().map(|row| row[r..].to_vec()).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(b: &IntMatrix) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Rational>) {
    let n = b.len();
    let mut bstar: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let bi: Vec<Rational> = b[i].iter().map(|x| Rational::from_integer(x.clone())).collect();
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = dot(&bi, &bstar[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(dot(&v, &v));
        bstar.push(v);
    }
    (bstar, mu, norms)
}

/// LLL-reduces a basis of linearly independent integer vectors (δ = 3/4).
pub fn lll(basis: IntMatrix) -> IntMatrix {
    let n = basis.len();
    if n < 2 {
        return basis;
    }
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let mut b = basis;
    let (_, mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round().to_integer();
            if q.is_zero() {
                continue;
            }
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &q * y;
            }
            let qr = Rational::from_integer(q);
            for l in 0..j {
                let t = &qr * &mu[j][l];
                mu[k][l] -= t;
            }
            mu[k][j] -= &qr;
        }
        let lhs = norms[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let gs = gram_schmidt(&b);
            mu = gs.1;
            norms = gs.2;
            k = (k - 1).max(1);
        }
    }
    b
}

/// Nonzero invariant factors of an integer matrix (Smith normal form).
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
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
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let pivot = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot) {
                *x -= &q * y;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in 0..rows {
                let y = m[i][t].clone();
                m[i][j] -= &q * y;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition: fold any entry not divisible by the pivot
        let p = m[t][t].clone();
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !m[i][j].is_multiple_of(&p) {
                    for jj in 0..cols {
                        let y = m[i][jj].clone();
                        m[t][jj] += y;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            diag.push(p.abs());
            t += 1;
        }
    }
    diag
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    smith_diagonal(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let a = to_big(&[vec![1, 0], vec![0, 1]]);
        assert!(kernel_basis(&a, 2).is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = to_big(&[vec![1, 1, 1, 1, 1], vec![0, 1, 0, 3, 2], vec![0, 0, 1, 0, 1]]);
        let k = lll(kernel_basis(&a, 5));
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mul(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn smith_of_small_matrices() {
        let a = to_big(&[vec![2, 4], vec![6, 8]]);
        let d = smith_diagonal(&a);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
        let a = to_big(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_diagonal(&a), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(rank(&to_big(&[vec![1, 2], vec![2, 4]])), 1);
    }
}
