//! Orbits of `G = T × 𝔾ₐ` on the variety of a fan with a chosen root.
//!
//! The root subgroup glues the torus orbits `𝒪_{σ₁}` and `𝒪_{σ₂}` exactly
//! when `σ₂ = cone(σ₁, ρ_e)` and `e` vanishes on `σ₁`. Every other torus
//! orbit is fixed by `𝔾ₐ` and is a `G`-orbit by itself.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::{find_integer_point, pairing, saturation_basis, DualVector, RatVector, M, N};
use crate::roots::{
    check_condition2, roots_of_fan, verify_root, DemazureRoot, RootError, RootSource,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{0} is not a Demazure root of the fan")]
    NotARoot(DualVector),
    #[error("cone {0} is not in the fan")]
    ConeNotInFan(usize),
    #[error("He-pair enumerations disagree")]
    CrossCheck,
    #[error(transparent)]
    Root(RootError),
}

impl From<RootError> for OrbitError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NotARoot(e) => OrbitError::NotARoot(e),
            other => OrbitError::Root(other),
        }
    }
}

/// Two cones whose torus orbits are joined by the root subgroup; `lower` is
/// the facet of `upper` on which the root vanishes. Both are cone indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeConnectedPair {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerData {
    pub torus_dim: usize,
    pub torus_component_order: BigInt,
    pub contains_ga: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GOrbit {
    /// One cone, or the two cones of a He-connected pair (lower first).
    pub cones: Vec<usize>,
    pub dim: usize,
    pub ga_fixed: bool,
    pub stabilizer: StabilizerData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GOrbitPartition {
    pub root: DemazureRoot,
    pub orbits: Vec<GOrbit>,
}

impl GOrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Index of the orbit containing cone `i`.
    pub fn orbit_of(&self, i: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.cones.contains(&i))
    }
}

/// Pairs `(σ₁, cone(σ₁, ρ_e))` over the cones `σ₁` on which `e` vanishes.
pub fn he_connected_pairs(fan: &Fan, e: &DualVector) -> Result<Vec<HeConnectedPair>, OrbitError> {
    let root = verify_root(fan, e)?;
    let closed = he_pairs_closed_form(fan, &root);
    if closed != he_pairs_by_facets(fan, e) {
        return Err(OrbitError::CrossCheck);
    }
    Ok(closed)
}

fn he_pairs_closed_form(fan: &Fan, root: &DemazureRoot) -> Vec<HeConnectedPair> {
    let mut out: Vec<HeConnectedPair> = (0..fan.cones().len())
        .filter(|&i| fan.vanishes_on(i, &root.e))
        .map(|lower| HeConnectedPair {
            lower,
            upper: fan
                .join(lower, &[root.distinguished_ray])
                .expect("condition (2) holds for roots"),
        })
        .collect();
    out.sort();
    out
}

/// The same pairs found from the other side: cones `σ₂` with `e ≤ 0` on
/// `σ₂` whose slice `σ₂ ∩ e^⊥` is a facet.
pub fn he_pairs_by_facets(fan: &Fan, e: &DualVector) -> Vec<HeConnectedPair> {
    let mut out = Vec::new();
    for (upper, c) in fan.cones().iter().enumerate() {
        let values: Vec<BigInt> = c
            .ray_indices
            .iter()
            .map(|&r| pairing(fan.ray(r), e))
            .collect();
        if values.iter().any(Signed::is_positive) || values.iter().all(Zero::is_zero) {
            continue;
        }
        let slice: Vec<usize> = c
            .ray_indices
            .iter()
            .zip(&values)
            .filter(|(_, v)| v.is_zero())
            .map(|(&r, _)| r)
            .collect();
        if let Some(lower) = fan.find(&slice) {
            if fan.cone(lower).dim + 1 == c.dim {
                out.push(HeConnectedPair { lower, upper });
            }
        }
    }
    out.sort();
    out
}

pub fn stabilizer_data(
    fan: &Fan,
    e: &DualVector,
    cone: usize,
) -> Result<StabilizerData, OrbitError> {
    let root = verify_root(fan, e)?;
    if cone >= fan.cones().len() {
        return Err(OrbitError::ConeNotInFan(cone));
    }
    let pairs = he_pairs_closed_form(fan, &root);
    Ok(stabilizer(fan, e, cone, &pairs))
}

fn stabilizer(fan: &Fan, e: &DualVector, cone: usize, pairs: &[HeConnectedPair]) -> StabilizerData {
    let c = fan.cone(cone);
    let vanishes = fan.vanishes_on(cone, e);
    let torus_dim = if vanishes { c.dim } else { c.dim - 1 };
    let rows: Vec<Vec<BigInt>> = c
        .ray_indices
        .iter()
        .map(|&r| fan.ray(r).coords().to_vec())
        .collect();
    let mut order = BigInt::zero();
    for b in saturation_basis(&rows, fan.rank()) {
        let v: BigInt = b.iter().zip(e.coords()).map(|(x, y)| x * y).sum();
        order = order.gcd(&v);
    }
    if order.is_zero() {
        order = BigInt::one();
    }
    StabilizerData {
        torus_dim,
        torus_component_order: order,
        contains_ga: !pairs.iter().any(|p| p.lower == cone || p.upper == cone),
    }
}

pub fn g_orbit_partition(fan: &Fan, e: &DualVector) -> Result<GOrbitPartition, OrbitError> {
    let root = verify_root(fan, e)?;
    let pairs = he_connected_pairs(fan, e)?;
    let mut orbits = Vec::new();
    for i in 0..fan.cones().len() {
        if let Some(p) = pairs.iter().find(|p| p.lower == i) {
            orbits.push(GOrbit {
                cones: vec![p.lower, p.upper],
                dim: fan.orbit_dim(p.lower),
                ga_fixed: false,
                stabilizer: stabilizer(fan, e, p.lower, &pairs),
            });
        } else if !pairs.iter().any(|p| p.upper == i) {
            orbits.push(GOrbit {
                cones: vec![i],
                dim: fan.orbit_dim(i),
                ga_fixed: true,
                stabilizer: stabilizer(fan, e, i, &pairs),
            });
        }
    }
    Ok(GOrbitPartition { root, orbits })
}

/// Rays other than `ρ_e`: they give the `G`-invariant prime divisors.
pub fn g_invariant_divisors(fan: &Fan, e: &DualVector) -> Result<Vec<usize>, OrbitError> {
    let root = verify_root(fan, e)?;
    Ok((0..fan.rays().len())
        .filter(|&i| i != root.distinguished_ray)
        .collect())
}

/// Some root of the fan, if there is one.
///
/// For each candidate ray `ρ` and each set `Z` of other rays, the roots with
/// `⟨n_ρ, e⟩ = −1`, `⟨n_z, e⟩ = 0` exactly for `z ∈ Z` all share the same
/// cones killed by `e`, hence the same verdict for condition (2). So it is
/// enough to test condition (2) on `Z` and then decide integer feasibility of
/// `{⟨n_ρ,e⟩ = −1, ⟨n_z,e⟩ = 0 (z ∈ Z), ⟨n_ρ',e⟩ ≥ 1 otherwise}` exactly.
pub fn find_root(fan: &Fan) -> Option<DemazureRoot> {
    let l = fan.rays().len();
    let rank = fan.rank();
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    for rho in 0..l {
        let others: Vec<usize> = (0..l).filter(|&i| i != rho).collect();
        for mask in 0u64..(1u64 << others.len()) {
            let zero: BTreeSet<usize> = others
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &r)| r)
                .collect();
            let cond2 = (0..fan.cones().len())
                .filter(|&i| fan.cone(i).ray_indices.iter().all(|r| zero.contains(r)))
                .all(|i| fan.join(i, &[rho]).is_some());
            if !cond2 {
                continue;
            }
            let mut eq: Vec<(RatVector<N>, BigRational)> =
                vec![(fan.ray(rho).to_rational(), q(-1))];
            eq.extend(zero.iter().map(|&z| (fan.ray(z).to_rational(), q(0))));
            let ineq: Vec<(RatVector<N>, BigRational)> = others
                .iter()
                .filter(|r| !zero.contains(r))
                .map(|&r| (fan.ray(r).to_rational(), q(1)))
                .collect();
            if let Some(e) = find_integer_point::<M>(rank, &ineq, &eq) {
                debug_assert!(check_condition2(fan, &e, rho).holds());
                return Some(DemazureRoot {
                    e,
                    distinguished_ray: rho,
                    source: RootSource::Fan,
                });
            }
        }
    }
    None
}

/// Whether the fan carries a root, i.e. its variety is a `G`-embedding for
/// some choice of root.
pub fn admits_g_structure(fan: &Fan) -> bool {
    find_root(fan).is_some()
}

/// Cross-check for [`admits_g_structure`] on fans with finitely many roots.
pub fn admits_g_structure_by_enumeration(fan: &Fan) -> Option<bool> {
    roots_of_fan(fan, None).ok().map(|r| !r.roots.is_empty())
}
