//! Exact dense linear algebra over ℚ and ℤ on plain row vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type QRow = Vec<BigRational>;

pub(crate) fn to_q(row: &[BigInt]) -> QRow {
    row.iter().cloned().map(BigRational::from_integer).collect()
}

pub(crate) fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<QRow>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank_q(rows: &[QRow], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

pub(crate) fn rank_int(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let m: Vec<QRow> = rows.iter().map(|r| to_q(r)).collect();
    rank_q(&m, ncols)
}

/// Inverse of a square rational matrix, if it is invertible.
pub(crate) fn inverse(mat: &[QRow]) -> Option<Vec<QRow>> {
    let n = mat.len();
    let mut aug: Vec<QRow> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn mat_mul(a: &[QRow], b: &[QRow]) -> Vec<QRow> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub(crate) fn determinant(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = mat.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub(crate) fn is_unimodular(mat: &[Vec<BigInt>]) -> bool {
    determinant(mat).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = ints(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = 2*(-26) - 2 = -54
        assert_eq!(determinant(&m), BigInt::from(-54));
        let swap = ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&swap), BigInt::from(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let m: Vec<QRow> = ints(&[&[1, 2], &[3, 5]]).iter().map(|r| to_q(r)).collect();
        let inv = inverse(&m).unwrap();
        let id = mat_mul(&m, &inv);
        assert_eq!(id[0][0], BigRational::one());
        assert!(id[0][1].is_zero());
        assert!(inverse(&[to_q(&ints(&[&[1, 2]])[0]), to_q(&ints(&[&[2, 4]])[0])]).is_none());
    }
}
