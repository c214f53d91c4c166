//! Exact linear algebra: fraction-free rank over the integers and Gaussian
//! elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::smt::Coeff;

/// Rank of an integer matrix by Bareiss elimination.
pub fn rank_bigint(mut rows: Vec<Vec<BigInt>>) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..m {
            let factor = rows[r][col].clone();
            for c in col..n {
                let v = &pivot * &rows[r][c] - &factor * &rows[rank][c];
                rows[r][c] = v / &prev;
            }
            // entries left of the pivot column are zero already
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix: rows are cleared of denominators first.
pub fn rank_rational(rows: &[Vec<Coeff>]) -> usize {
    let ints = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    rank_bigint(ints)
}

/// Solve `a · x = b` for a unique `x`. Returns `None` when the system is
/// inconsistent or its solution is not unique.
pub fn solve_unique(a: &[Vec<Coeff>], b: &[Coeff]) -> Option<Vec<Coeff>> {
    let m = a.len();
    assert_eq!(m, b.len(), "right-hand side length");
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Coeff>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let p = (rank..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(rank, p);
        let inv = aug[rank][col].recip();
        for c in col..=n {
            aug[rank][c] = &aug[rank][c] * &inv;
        }
        for r in 0..m {
            if r == rank || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let v = &aug[rank][c] * &factor;
                aug[r][c] -= v;
            }
        }
        rank += 1;
    }
    if aug[rank..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Determinant of a square rational matrix.
pub fn determinant(mut a: Vec<Vec<Coeff>>) -> Coeff {
    let n = a.len();
    let mut det = Coeff::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Coeff::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let v = &a[col][c] * &factor;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant_bigint(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign.is_negative() {
        -d
    } else {
        d
    }
}
