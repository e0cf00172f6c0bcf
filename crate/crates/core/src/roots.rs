//! Demazure roots of cones and fans.
//!
//! A root of a cone with rays `n₁, …, n_l` is an `e ∈ M` with
//! `⟨n_ρ, e⟩ = −1` for exactly one ray `ρ` and `⟨n_ρ', e⟩ ≥ 0` for the
//! others. Roots of a fan additionally need that, for every cone `σ` on which
//! `e` vanishes, the cone spanned by `σ` and `ρ` is again in the fan.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::{
    is_bounded, lattice_points, pairing, AffineConstraint, CoordinateBox, DualVector,
    GeometryError, LatticeVector, RationalCone, M, N,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the cone has no rays")]
    NoRays,
    #[error("the cone is not strongly convex")]
    NotStronglyConvex,
    #[error("roots with distinguished ray {0} form an unbounded set; a bound is required")]
    UnboundedRoots(usize),
    #[error("{0} is not a Demazure root of the fan")]
    NotARoot(DualVector),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSource {
    Cone,
    Fan,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DemazureRoot {
    pub e: DualVector,
    /// Index of `ρ_e` among the rays of the source cone or fan.
    pub distinguished_ray: usize,
    pub source: RootSource,
}

impl fmt::Display for DemazureRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ ray {}", self.e, self.distinguished_ray)
    }
}

/// Result of [`roots_of_fan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnumeration {
    pub roots: Vec<DemazureRoot>,
    /// True when every root region was bounded, so nothing was truncated.
    pub complete: bool,
    /// Rays whose root region is unbounded (and was cut off by the bound).
    pub unbounded_rays: Vec<usize>,
}

/// Outcome of the fan-closure condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition2 {
    Holds,
    /// `e` vanishes on this cone but the cone spanned with `ρ` is not in the fan.
    Fails {
        witness: usize,
    },
}

impl Condition2 {
    pub fn holds(&self) -> bool {
        matches!(self, Condition2::Holds)
    }
}

/// Constraints `⟨n_ρ, e⟩ = −1`, `⟨n_ρ', e⟩ ≥ 0` for `ρ' ≠ ρ`.
fn root_region(
    rays: &[LatticeVector],
    rho: usize,
) -> (Vec<AffineConstraint<M>>, Vec<AffineConstraint<M>>) {
    let ineq = rays
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != rho)
        .map(|(_, r)| AffineConstraint::new(r.clone(), BigInt::zero()))
        .collect();
    let eq = vec![AffineConstraint::new(rays[rho].clone(), -BigInt::one())];
    (ineq, eq)
}

/// Whether the roots with distinguished ray `rho` form a finite set.
pub fn root_region_is_bounded(rays: &[LatticeVector], rho: usize) -> bool {
    let rank = rays[rho].rank();
    let (ineq, eq) = root_region(rays, rho);
    is_bounded::<M>(rank, &ineq, &eq)
}

fn enumerate_region(
    rank: usize,
    rays: &[LatticeVector],
    rho: usize,
    bounds: Option<&CoordinateBox>,
) -> Result<Vec<DualVector>, GeometryError> {
    let (ineq, eq) = root_region(rays, rho);
    lattice_points::<M>(rank, &ineq, &eq, bounds)
}

/// Roots of a strongly convex cone with all coordinates in `[−bound, bound]`,
/// grouped by distinguished ray (indices into [`RationalCone::rays`]).
pub fn roots_of_cone(
    cone: &RationalCone<N>,
    bound: &BigInt,
) -> Result<Vec<DemazureRoot>, RootError> {
    if !cone.is_strongly_convex() {
        return Err(RootError::NotStronglyConvex);
    }
    let rays = cone.rays();
    if rays.is_empty() {
        return Err(RootError::NoRays);
    }
    let bx = CoordinateBox::cube(cone.rank(), bound);
    let mut out = Vec::new();
    for rho in 0..rays.len() {
        for e in enumerate_region(cone.rank(), rays, rho, Some(&bx))? {
            out.push(DemazureRoot {
                e,
                distinguished_ray: rho,
                source: RootSource::Cone,
            });
        }
    }
    Ok(out)
}

/// The unique ray with `⟨n_ρ, e⟩ = −1`, provided all other pairings are `≥ 0`.
pub fn condition1(rays: &[LatticeVector], e: &DualVector) -> Option<usize> {
    let mut rho = None;
    for (i, r) in rays.iter().enumerate() {
        let p = pairing(r, e);
        if p == -BigInt::one() && rho.is_none() {
            rho = Some(i);
        } else if p.is_negative() {
            return None;
        }
    }
    rho
}

pub fn check_condition2(fan: &Fan, e: &DualVector, rho: usize) -> Condition2 {
    for i in 0..fan.cones().len() {
        if fan.vanishes_on(i, e) && fan.join(i, &[rho]).is_none() {
            return Condition2::Fails { witness: i };
        }
    }
    Condition2::Holds
}

/// Checks both root conditions and returns the root with its distinguished ray.
pub fn verify_root(fan: &Fan, e: &DualVector) -> Result<DemazureRoot, RootError> {
    if e.rank() != fan.rank() {
        return Err(RootError::RankMismatch {
            expected: fan.rank(),
            found: e.rank(),
        });
    }
    let rho = condition1(fan.rays(), e).ok_or_else(|| RootError::NotARoot(e.clone()))?;
    if !check_condition2(fan, e, rho).holds() {
        return Err(RootError::NotARoot(e.clone()));
    }
    Ok(DemazureRoot {
        e: e.clone(),
        distinguished_ray: rho,
        source: RootSource::Fan,
    })
}

/// All roots of a fan, ordered by distinguished ray and then by `e`.
///
/// Bounded root regions are enumerated in full whether or not a bound is
/// given. Unbounded regions need `bound`, which then limits the coordinates
/// of `e` to `[−bound, bound]`.
pub fn roots_of_fan(fan: &Fan, bound: Option<&BigInt>) -> Result<RootEnumeration, RootError> {
    let rank = fan.rank();
    let rays = fan.rays();
    let bx = bound.map(|b| CoordinateBox::cube(rank, b));
    let mut roots = Vec::new();
    let mut unbounded_rays = Vec::new();
    for rho in 0..rays.len() {
        let candidates = if root_region_is_bounded(rays, rho) {
            enumerate_region(rank, rays, rho, None)?
        } else {
            unbounded_rays.push(rho);
            let b = bx.as_ref().ok_or(RootError::UnboundedRoots(rho))?;
            enumerate_region(rank, rays, rho, Some(b))?
        };
        for e in candidates {
            if check_condition2(fan, &e, rho).holds() {
                roots.push(DemazureRoot {
                    e,
                    distinguished_ray: rho,
                    source: RootSource::Fan,
                });
            }
        }
    }
    Ok(RootEnumeration {
        complete: unbounded_rays.is_empty(),
        roots,
        unbounded_rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::*;
    use std::collections::BTreeSet;

    fn es(roots: &[DemazureRoot]) -> BTreeSet<Vec<i64>> {
        roots.iter().map(|r| r.e.to_i64s().unwrap()).collect()
    }

    fn set(v: &[&[i64]]) -> BTreeSet<Vec<i64>> {
        v.iter().map(|x| x.to_vec()).collect()
    }

    /// Condition (1) by scanning a box, ignoring condition (2).
    fn brute_force_cone(rays: &[LatticeVector], b: i64) -> BTreeSet<(usize, Vec<i64>)> {
        let mut out = BTreeSet::new();
        for x in -b..=b {
            for y in -b..=b {
                let e = DualVector::from_i64s(&[x, y]);
                let p: Vec<BigInt> = rays.iter().map(|r| pairing(r, &e)).collect();
                let minus: Vec<usize> =
                    (0..p.len()).filter(|&i| p[i] == BigInt::from(-1)).collect();
                if minus.len() == 1 && p.iter().filter(|v| v.is_negative()).count() == 1 {
                    out.insert((minus[0], vec![x, y]));
                }
            }
        }
        out
    }

    #[test]
    fn orthant_roots() {
        let sigma = RationalCone::<N>::from_i64s(2, &[&[1, 0], &[0, 1]]).unwrap();
        let roots = roots_of_cone(&sigma, &BigInt::from(2)).unwrap();
        let by_ray = |v: &[i64]| -> BTreeSet<Vec<i64>> {
            let i = sigma
                .rays()
                .iter()
                .position(|r| r.to_i64s().unwrap() == v)
                .unwrap();
            roots
                .iter()
                .filter(|r| r.distinguished_ray == i)
                .map(|r| r.e.to_i64s().unwrap())
                .collect()
        };
        assert_eq!(by_ray(&[1, 0]), set(&[&[-1, 0], &[-1, 1], &[-1, 2]]));
        assert_eq!(by_ray(&[0, 1]), set(&[&[0, -1], &[1, -1], &[2, -1]]));
    }

    #[test]
    fn half_line_has_one_root() {
        let sigma = RationalCone::<N>::from_i64s(1, &[&[1]]).unwrap();
        for b in 1..4 {
            assert_eq!(
                es(&roots_of_cone(&sigma, &BigInt::from(b)).unwrap()),
                set(&[&[-1]])
            );
        }
        assert_eq!(
            roots_of_cone(&RationalCone::zero(1), &BigInt::one()),
            Err(RootError::NoRays)
        );
    }

    #[test]
    fn skew_cone_against_box_scan() {
        let sigma = RationalCone::<N>::from_i64s(2, &[&[1, 0], &[1, 2]]).unwrap();
        let roots = roots_of_cone(&sigma, &BigInt::from(3)).unwrap();
        let got: BTreeSet<(usize, Vec<i64>)> = roots
            .iter()
            .map(|r| (r.distinguished_ray, r.e.to_i64s().unwrap()))
            .collect();
        assert_eq!(got, brute_force_cone(sigma.rays(), 3));
        assert!(!got.is_empty());
    }

    #[test]
    fn projective_plane() {
        let f = projective_space(2);
        let r = roots_of_fan(&f, None).unwrap();
        assert!(r.complete);
        assert_eq!(
            es(&r.roots),
            set(&[&[1, 0], &[1, -1], &[0, -1], &[-1, 0], &[-1, 1], &[0, 1]])
        );
        let order: Vec<(usize, Vec<i64>)> = r
            .roots
            .iter()
            .map(|x| (x.distinguished_ray, x.e.to_i64s().unwrap()))
            .collect();
        assert_eq!(
            order,
            vec![
                (0, vec![-1, 0]),
                (0, vec![-1, 1]),
                (1, vec![0, -1]),
                (1, vec![1, -1]),
                (2, vec![0, 1]),
                (2, vec![1, 0]),
            ]
        );
    }

    #[test]
    fn hirzebruch_one() {
        let r = roots_of_fan(&hirzebruch(1), None).unwrap();
        assert!(r.complete);
        assert_eq!(es(&r.roots), set(&[&[1, 0], &[-1, 0], &[0, 1], &[1, 1]]));
    }

    #[test]
    fn affine_plane_needs_a_bound() {
        let f = affine_space(2);
        assert_eq!(roots_of_fan(&f, None), Err(RootError::UnboundedRoots(0)));
        let r = roots_of_fan(&f, Some(&BigInt::from(5))).unwrap();
        assert!(!r.complete);
        assert_eq!(r.unbounded_rays, vec![0, 1]);
        let mut want = BTreeSet::new();
        for k in 0..=5 {
            want.insert(vec![-1, k]);
            want.insert(vec![k, -1]);
        }
        assert_eq!(es(&r.roots), want);
    }

    #[test]
    fn condition2_on_projective_plane() {
        let f = projective_space(2);
        let e = DualVector::from_i64s(&[1, 0]);
        assert_eq!(condition1(f.rays(), &e), Some(2));
        assert!(check_condition2(&f, &e, 2).holds());
    }

    #[test]
    fn condition2_witness() {
        // two rays without the cone between them
        let f = Fan::from_i64s(2, &[&[1, 0], &[0, 1]], &[&[0], &[1]]).unwrap();
        let e = DualVector::from_i64s(&[-1, 0]);
        assert_eq!(condition1(f.rays(), &e), Some(0));
        let Condition2::Fails { witness } = check_condition2(&f, &e, 0) else {
            panic!()
        };
        assert_eq!(f.cone(witness).ray_indices, vec![1]);
        assert!(verify_root(&f, &e).is_err());
        assert!(verify_root(&f, &DualVector::from_i64s(&[-1, 1])).is_ok());
    }

    #[test]
    fn p1_has_two_roots() {
        let r = roots_of_fan(&projective_space(1), None).unwrap();
        assert_eq!(es(&r.roots), set(&[&[-1], &[1]]));
    }

    #[test]
    fn complete_fans_have_exactly_one_minus_one() {
        for f in [
            projective_space(2),
            hirzebruch(1),
            hirzebruch(2),
            p1_times_p1(),
            projective_space(3),
        ] {
            for r in roots_of_fan(&f, None).unwrap().roots {
                let p: Vec<BigInt> = f.rays().iter().map(|n| pairing(n, &r.e)).collect();
                assert_eq!(p.iter().filter(|v| **v == BigInt::from(-1)).count(), 1);
                assert!(p.iter().filter(|v| v.is_negative()).count() == 1);
            }
        }
    }
}
