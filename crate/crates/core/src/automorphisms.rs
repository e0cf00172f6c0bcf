//! Lattice automorphisms preserving a fan, and equivalence of roots under them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::linalg::{determinant, inverse, is_unimodular, mat_mul, rank_int, QRow};
use crate::lattice::{DualVector, LatticeVector};
use crate::roots::{condition1, DemazureRoot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("the rays of the fan do not span the ambient space")]
    UnsupportedFan,
}

/// `φ ∈ GL(N)` with `φ(n_ρ) = n_{π(ρ)}`, mapping cones of the fan to cones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FanAutomorphism {
    /// Row-major; acts on column vectors of `N`.
    pub matrix: Vec<Vec<BigInt>>,
    pub ray_permutation: Vec<usize>,
}

impl FanAutomorphism {
    pub fn identity(fan: &Fan) -> Self {
        let n = fan.rank();
        let matrix = (0..n)
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
            .collect();
        Self {
            matrix,
            ray_permutation: (0..fan.rays().len()).collect(),
        }
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `(φ⁻¹)ᵀ e`, the action on `M` that preserves the pairing.
    pub fn act_on_dual(&self, e: &DualVector) -> DualVector {
        let inv = self.inverse_matrix();
        let n = inv.len();
        DualVector::new(
            (0..n)
                .map(|j| (0..n).map(|i| &inv[i][j] * &e.coords()[i]).sum())
                .collect(),
        )
    }

    fn inverse_matrix(&self) -> Vec<Vec<BigInt>> {
        let q: Vec<QRow> = self
            .matrix
            .iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        inverse(&q)
            .expect("automorphisms are invertible")
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| &self.matrix[i][k] * &other.matrix[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let ray_permutation = other
            .ray_permutation
            .iter()
            .map(|&r| self.ray_permutation[r])
            .collect();
        Self {
            matrix,
            ray_permutation,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.ray_permutation.len()];
        for (i, &j) in self.ray_permutation.iter().enumerate() {
            perm[j] = i;
        }
        Self {
            matrix: self.inverse_matrix(),
            ray_permutation: perm,
        }
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.matrix)
    }
}

/// The group of automorphisms of the fan, sorted with the identity first.
///
/// The images of a fixed basis among the rays determine `φ`; every injective
/// assignment of rays to that basis is tried and the resulting map is kept
/// when it is integral, unimodular, permutes the rays and preserves cones.
pub fn fan_automorphisms(fan: &Fan) -> Result<Vec<FanAutomorphism>, AutomorphismError> {
    let n = fan.rank();
    let rays = fan.rays();
    let basis = independent_rays(rays, n).ok_or(AutomorphismError::UnsupportedFan)?;
    let source: Vec<QRow> = columns(&basis.iter().map(|&i| &rays[i]).collect::<Vec<_>>());
    let source_inv = inverse(&source).expect("basis rays are independent");
    let cone_sets: BTreeSet<Vec<usize>> =
        fan.cones().iter().map(|c| c.ray_indices.clone()).collect();

    let mut found = Vec::new();
    let mut images = Vec::with_capacity(n);
    assignments(rays.len(), n, &mut images, &mut |img| {
        let target = columns(&img.iter().map(|&i| &rays[i]).collect::<Vec<_>>());
        let phi = mat_mul(&target, &source_inv);
        if phi.iter().flatten().any(|x| !x.is_integer()) {
            return;
        }
        let matrix: Vec<Vec<BigInt>> = phi
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer()).collect())
            .collect();
        if !is_unimodular(&matrix) {
            return;
        }
        let cand = FanAutomorphism {
            matrix,
            ray_permutation: Vec::new(),
        };
        let mut perm = Vec::with_capacity(rays.len());
        for r in rays {
            match rays.iter().position(|x| *x == cand.apply(r)) {
                Some(j) => perm.push(j),
                None => return,
            }
        }
        let mapped = cone_sets.iter().all(|c| {
            let mut img: Vec<usize> = c.iter().map(|&r| perm[r]).collect();
            img.sort_unstable();
            cone_sets.contains(&img)
        });
        if mapped {
            found.push(FanAutomorphism {
                ray_permutation: perm,
                ..cand
            });
        }
    });
    found.sort_by(|a, b| a.ray_permutation.cmp(&b.ray_permutation));
    Ok(found)
}

fn independent_rays(rays: &[LatticeVector], n: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut rows: Vec<Vec<BigInt>> =
            chosen.iter().map(|&j| rays[j].coords().to_vec()).collect();
        rows.push(rays[i].coords().to_vec());
        if rank_int(&rows, n) == rows.len() {
            chosen.push(i);
        }
        if chosen.len() == n {
            return Some(chosen);
        }
    }
    (n == 0).then(Vec::new)
}

/// Matrix with the given vectors as columns.
fn columns(vs: &[&LatticeVector]) -> Vec<QRow> {
    let n = vs.first().map_or(0, |v| v.rank());
    (0..n)
        .map(|i| {
            vs.iter()
                .map(|v| BigRational::from_integer(v.coords()[i].clone()))
                .collect()
        })
        .collect()
}

fn assignments(l: usize, k: usize, current: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if current.len() == k {
        f(current);
        return;
    }
    for i in 0..l {
        if !current.contains(&i) {
            current.push(i);
            assignments(l, k, current, f);
            current.pop();
        }
    }
}

/// Orbits of `roots` under the automorphism group. Roots inside each class
/// are sorted, and classes are sorted by their first root.
pub fn classify_roots(
    fan: &Fan,
    roots: &[DemazureRoot],
) -> Result<Vec<Vec<DemazureRoot>>, AutomorphismError> {
    let group = fan_automorphisms(fan)?;
    let mut class_of: Vec<Option<usize>> = vec![None; roots.len()];
    let mut classes: Vec<Vec<DemazureRoot>> = Vec::new();
    for i in 0..roots.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for phi in &group {
            let image = phi.act_on_dual(&roots[i].e);
            if let Some(j) = roots.iter().position(|r| r.e == image) {
                if class_of[j].is_none() {
                    class_of[j] = Some(id);
                    members.push(roots[j].clone());
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    classes.sort();
    Ok(classes)
}

/// Image of a root under an automorphism, with its new distinguished ray.
pub fn transport_root(
    fan: &Fan,
    phi: &FanAutomorphism,
    root: &DemazureRoot,
) -> Option<DemazureRoot> {
    let e = phi.act_on_dual(&root.e);
    let rho = condition1(fan.rays(), &e)?;
    Some(DemazureRoot {
        e,
        distinguished_ray: rho,
        source: root.source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::*;
    use crate::lattice::pairing;
    use crate::roots::{roots_of_fan, verify_root};

    fn group_axioms(fan: &Fan, g: &[FanAutomorphism]) {
        assert_eq!(g[0], FanAutomorphism::identity(fan));
        for a in g {
            assert!(g.contains(&a.inverse()));
            for b in g {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn group_orders() {
        let cases = [
            (projective_space(2), 6),
            (affine_space(2), 2),
            (hirzebruch(1), 2),
            (p1_times_p1(), 8),
        ];
        for (fan, order) in cases {
            let g = fan_automorphisms(&fan).unwrap();
            assert_eq!(g.len(), order);
            group_axioms(&fan, &g);
        }
        assert_eq!(fan_automorphisms(&projective_space(3)).unwrap().len(), 24);
    }

    #[test]
    fn brute_force_over_permutations() {
        // every permutation of the rays that extends to a unimodular map
        let fan = hirzebruch(1);
        let g = fan_automorphisms(&fan).unwrap();
        let perms: Vec<Vec<usize>> = g.iter().map(|a| a.ray_permutation.clone()).collect();
        assert_eq!(perms, vec![vec![0, 1, 2, 3], vec![3, 1, 2, 0]]);
    }

    #[test]
    fn rays_must_span() {
        let f = Fan::from_i64s(2, &[&[1, 0]], &[&[0]]).unwrap();
        assert_eq!(
            fan_automorphisms(&f),
            Err(AutomorphismError::UnsupportedFan)
        );
    }

    #[test]
    fn dual_action_preserves_pairing_and_roots() {
        for fan in [projective_space(2), hirzebruch(1), p1_times_p1()] {
            let roots = roots_of_fan(&fan, None).unwrap().roots;
            for phi in fan_automorphisms(&fan).unwrap() {
                for r in &roots {
                    let img = transport_root(&fan, &phi, r).unwrap();
                    assert_eq!(
                        img.distinguished_ray,
                        phi.ray_permutation[r.distinguished_ray]
                    );
                    assert!(verify_root(&fan, &img.e).is_ok());
                    for n in fan.rays() {
                        assert_eq!(pairing(&phi.apply(n), &img.e), pairing(n, &r.e));
                    }
                }
            }
        }
    }

    #[test]
    fn classes() {
        let f = projective_space(2);
        let roots = roots_of_fan(&f, None).unwrap().roots;
        assert_eq!(classify_roots(&f, &roots).unwrap().len(), 1);

        let f = hirzebruch(1);
        let roots = roots_of_fan(&f, None).unwrap().roots;
        let classes: Vec<BTreeSet<Vec<i64>>> = classify_roots(&f, &roots)
            .unwrap()
            .iter()
            .map(|c| c.iter().map(|r| r.e.to_i64s().unwrap()).collect())
            .collect();
        let a: BTreeSet<Vec<i64>> = [vec![1, 0], vec![-1, 0]].into();
        let b: BTreeSet<Vec<i64>> = [vec![0, 1], vec![1, 1]].into();
        assert_eq!(classes.len(), 2);
        assert!(classes.contains(&a) && classes.contains(&b));

        let f = affine_space(2);
        let roots = roots_of_fan(&f, Some(&BigInt::from(3))).unwrap().roots;
        let classes = classify_roots(&f, &roots).unwrap();
        assert_eq!(classes.len(), 4);
        for c in classes {
            let es: BTreeSet<Vec<i64>> = c.iter().map(|r| r.e.to_i64s().unwrap()).collect();
            let k = es.iter().flatten().copied().max().unwrap();
            assert_eq!(es, [vec![-1, k], vec![k, -1]].into());
        }
    }
}
