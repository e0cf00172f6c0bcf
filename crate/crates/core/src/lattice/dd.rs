//! Double description: generators of `{x : a·x ≥ 0 (a ∈ A), b·x = 0 (b ∈ B)}`.
//!
//! Constraints are processed one at a time starting from the whole space.
//! The current cone is kept as `lineality + cone(rays)`, rays being the
//! extreme rays modulo the lineality space. Adjacency of two rays is decided
//! combinatorially from their sets of tight constraints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::linalg::dot_int;
use super::vector::{primitive_direction, primitive_int};

#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    /// Extreme rays modulo the lineality space, primitive integer vectors.
    pub rays: Vec<Vec<BigInt>>,
    /// Basis of the lineality space, primitive integer vectors.
    pub lineality: Vec<Vec<BigInt>>,
}

impl Generators {
    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

enum Kind {
    Inequality,
    Equality,
}

pub(crate) fn double_description(
    dim: usize,
    inequalities: &[Vec<BigRational>],
    equalities: &[Vec<BigRational>],
) -> Generators {
    let mut constraints: Vec<(Vec<BigInt>, Kind)> = Vec::new();
    // equalities first: they shrink the lineality space cheaply
    for row in equalities {
        if row.iter().any(|c| !c.is_zero()) {
            constraints.push((primitive_direction(row), Kind::Equality));
        }
    }
    for row in inequalities {
        if row.iter().any(|c| !c.is_zero()) {
            constraints.push((primitive_direction(row), Kind::Inequality));
        }
    }

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for (a, kind) in constraints {
        if let Some(pos) = lineality.iter().position(|l| !dot_int(&a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            if dot_int(&a, &l0).is_negative() {
                l0 = l0.iter().map(|c| -c).collect();
            }
            let a_l0 = dot_int(&a, &l0);
            for l in lineality.iter_mut() {
                let a_l = dot_int(&a, l);
                if !a_l.is_zero() {
                    *l = combine(&a_l0, l, &a_l, &l0);
                }
            }
            for r in rays.iter_mut() {
                let a_r = dot_int(&a, r);
                if !a_r.is_zero() {
                    *r = combine(&a_l0, r, &a_r, &l0);
                }
            }
            if matches!(kind, Kind::Inequality) {
                rays.push(l0);
            }
            processed.push(a);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(&a, r)).collect();
        let zero_sets: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|p| dot_int(p, r).is_zero()).collect())
            .collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();

        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..rays.len() {
            let keep = match kind {
                Kind::Inequality => !values[i].is_negative(),
                Kind::Equality => values[i].is_zero(),
            };
            if keep {
                next.push(rays[i].clone());
            }
        }
        for &p in &pos {
            for &q in &neg {
                if adjacent(p, q, &zero_sets) {
                    // (a·p) q − (a·q) p has a·x = 0 and positive weights on p, q
                    let w = combine(&values[p], &rays[q], &values[q], &rays[p]);
                    next.push(w);
                }
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(a);
    }

    lineality.sort();
    rays.sort();
    Generators { rays, lineality }
}

/// `α·x − β·y`, normalized to a primitive integer vector.
fn combine(alpha: &BigInt, x: &[BigInt], beta: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    primitive_int(
        x.iter()
            .zip(y)
            .map(|(xi, yi)| alpha * xi - beta * yi)
            .collect(),
    )
}

fn adjacent(p: usize, q: usize, zero_sets: &[Vec<bool>]) -> bool {
    let common: Vec<usize> = (0..zero_sets[p].len())
        .filter(|&k| zero_sets[p][k] && zero_sets[q][k])
        .collect();
    !zero_sets
        .iter()
        .enumerate()
        .any(|(r, z)| r != p && r != q && common.iter().all(|&k| z[k]))
}
