//! Smith normal form over ℤ with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type IntMatrix = Vec<Vec<BigInt>>;

/// `left · A · right = diag(invariant factors)` with `left`, `right` unimodular.
/// `right_inverse` is kept alongside so that saturations can be read off.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

struct State {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.right.iter_mut()) {
            r.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }

    /// row_i ← row_i − k·row_j
    fn row_sub(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let t = k * &self.a[j][c];
            self.a[i][c] -= t;
        }
        for c in 0..self.rows {
            let t = k * &self.left[j][c];
            self.left[i][c] -= t;
        }
    }

    /// col_i ← col_i − k·col_j (and the inverse row operation on right_inv)
    fn col_sub(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let t = k * &self.a[r][j];
            self.a[r][i] -= t;
        }
        for r in 0..self.cols {
            let t = k * &self.right[r][j];
            self.right[r][i] -= t;
        }
        // E = I − k e_j e_iᵀ applied on the right, E⁻¹ = I + k e_j e_iᵀ on the left
        for c in 0..self.cols {
            let t = k * &self.right_inv[i][c];
            self.right_inv[j][c] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.left[i].iter_mut()) {
            *x = -x.clone();
        }
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut st = State {
        a: a.to_vec(),
        left: identity(rows),
        right: identity(cols),
        right_inv: identity(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !st.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| st.a[i][j].abs() < st.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&st.a[t][t]);
                    st.row_sub(i, t, &q);
                    if !st.a[i][t].is_zero() {
                        st.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&st.a[t][t]);
                    st.col_sub(j, t, &q);
                    if !st.a[t][j].is_zero() {
                        st.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !st.a[i][j].is_multiple_of(&st.a[t][t]));
            match bad {
                Some((i, _)) => {
                    // row_t ← row_t + row_i brings the offending entry into row t
                    st.row_sub(t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..t).map(|i| st.a[i][i].clone()).collect();
    SmithForm {
        invariant_factors,
        diagonal: st.a,
        left: st.left,
        right: st.right,
        right_inverse: st.right_inv,
    }
}

/// A basis of `ℤ^n ∩ span_ℚ(rows)`.
pub fn saturation_basis(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let snf = smith_normal_form(rows);
    // rows = left⁻¹ · D · right⁻¹, so the row lattice is spanned by d_i · (right⁻¹)_i
    snf.right_inverse[..snf.rank()].to_vec()
}

/// Whether the rows extend to a basis of `ℤ^n`.
pub fn extends_to_basis(rows: &[Vec<BigInt>]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let snf = smith_normal_form(rows);
    snf.rank() == rows.len() && snf.invariant_factors.iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::linalg::determinant;

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(mul(&mul(&s.left, a), &s.right), s.diagonal);
        assert!(determinant(&s.left).abs().is_one());
        assert!(determinant(&s.right).abs().is_one());
        assert_eq!(mul(&s.right, &s.right_inverse), identity(s.right.len()));
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn classic_example() {
        let s = check(&ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.invariant_factors, vec![2.into(), 6.into(), 12.into()]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&ints(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(s.invariant_factors, vec![BigInt::one()]);
        let s = check(&ints(&[&[0, 0], &[0, 0]]));
        assert!(s.invariant_factors.is_empty());
    }

    #[test]
    fn saturation_of_doubled_vector() {
        let b = saturation_basis(&ints(&[&[2, 4]]), 2);
        assert_eq!(b.len(), 1);
        assert!(b[0] == ints(&[&[1, 2]])[0] || b[0] == ints(&[&[-1, -2]])[0]);
    }

    #[test]
    fn smoothness_by_invariant_factors() {
        assert!(extends_to_basis(&ints(&[&[0, 1], &[-1, -1]])));
        assert!(!extends_to_basis(&ints(&[&[1, 0], &[1, 2]])));
        assert!(extends_to_basis(&ints(&[&[1, 1, 0]])));
        assert!(!extends_to_basis(&ints(&[&[2, 2, 0]])));
    }
}
