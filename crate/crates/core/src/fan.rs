//! Fans of strongly convex rational cones.
//!
//! A [`Fan`] keeps its rays in the order supplied by the caller and lists
//! every cone (faces included) by the set of ray indices it contains.
//! Cones are ordered by dimension and then lexicographically, and carry a
//! stable textual id `"dim:i,j,..."`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::lattice::{
    extends_to_basis, pairing, DualVector, GeometryError, LatticeVector, RationalCone, N,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {ray} has rank {found}, expected {expected}")]
    RankMismatch {
        ray: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {0} is not primitive")]
    NotPrimitive(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} refers to missing ray {index}")]
    InvalidRayIndex { cone: usize, index: usize },
    #[error("cone {0:?} is not strongly convex")]
    NotStronglyConvex(Vec<usize>),
    #[error("ray {ray} is not an extreme ray of cone {cone:?}")]
    RayNotExtreme { cone: Vec<usize>, ray: usize },
    #[error("cones {0:?} and {1:?} do not meet in a common face")]
    BadIntersection(Vec<usize>, Vec<usize>),
    #[error("cone {0:?} is not in the fan")]
    ConeNotInFan(Vec<usize>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A cone of a fan, named by the (sorted) indices of its rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeRef {
    pub ray_indices: Vec<usize>,
    pub dim: usize,
    pub is_maximal: bool,
}

impl ConeRef {
    /// `"dim:i,j,..."`; the zero cone is `"0:"`.
    pub fn id(&self) -> String {
        let idx: Vec<String> = self.ray_indices.iter().map(usize::to_string).collect();
        format!("{}:{}", self.dim, idx.join(","))
    }
}

impl fmt::Display for ConeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeProperties {
    pub dim: usize,
    pub orbit_dim: usize,
    pub smooth: bool,
    pub simplicial: bool,
}

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<ConeRef>,
    geometry: Vec<RationalCone<N>>,
    index: BTreeMap<Vec<usize>, usize>,
    supplied: Vec<Vec<usize>>,
}

impl Fan {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn cones(&self) -> &[ConeRef] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &ConeRef {
        &self.cones[i]
    }

    pub fn cone_geometry(&self, i: usize) -> &RationalCone<N> {
        &self.geometry[i]
    }

    /// The maximal cones as supplied to [`build_fan`] (after sorting indices).
    pub fn supplied_maximal_cones(&self) -> &[Vec<usize>] {
        &self.supplied
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &ConeRef> {
        self.cones.iter().filter(|c| c.is_maximal)
    }

    /// Index of the cone with exactly these rays.
    pub fn find(&self, ray_indices: &[usize]) -> Option<usize> {
        let mut key = ray_indices.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }

    pub fn find_by_id(&self, id: &str) -> Option<usize> {
        self.cones.iter().position(|c| c.id() == id)
    }

    /// Index of the cone of the fan equal to `cone` as a set, if any.
    pub fn locate(&self, cone: &RationalCone<N>) -> Option<usize> {
        if !cone.is_strongly_convex() {
            return None;
        }
        let mut idx = Vec::new();
        for r in cone.rays() {
            idx.push(self.rays.iter().position(|x| x == r)?);
        }
        self.find(&idx)
    }

    /// Cone generated by the rays of cone `i` together with extra rays.
    pub fn join(&self, i: usize, extra: &[usize]) -> Option<usize> {
        let mut gens: Vec<LatticeVector> = self.cones[i]
            .ray_indices
            .iter()
            .map(|&r| self.rays[r].clone())
            .collect();
        gens.extend(extra.iter().map(|&r| self.rays[r].clone()));
        let cone = RationalCone::from_int_generators(self.rank, &gens).ok()?;
        self.locate(&cone)
    }

    /// Indices of the cones that are faces of cone `i` (including `i`).
    pub fn faces_of(&self, i: usize) -> Vec<usize> {
        let own: BTreeSet<usize> = self.cones[i].ray_indices.iter().copied().collect();
        (0..self.cones.len())
            .filter(|&j| self.cones[j].ray_indices.iter().all(|r| own.contains(r)))
            .collect()
    }

    pub fn orbit_dim(&self, i: usize) -> usize {
        self.rank - self.cones[i].dim
    }

    /// Whether `u` vanishes on every ray of cone `i`.
    pub fn vanishes_on(&self, i: usize, u: &DualVector) -> bool {
        self.cones[i]
            .ray_indices
            .iter()
            .all(|&r| pairing(&self.rays[r], u).is_zero())
    }

    pub fn rays_span(&self) -> bool {
        let rows: Vec<Vec<_>> = self.rays.iter().map(|r| r.coords().to_vec()).collect();
        crate::lattice::linalg::rank_int(&rows, self.rank) == self.rank
    }

    /// Maximal cones all full-dimensional, and every wall shared by exactly
    /// two of them.
    pub fn is_complete(&self) -> bool {
        let n = self.rank;
        if self.maximal_cones().any(|c| c.dim != n) {
            return false;
        }
        if n == 0 {
            return true;
        }
        let top: Vec<&ConeRef> = self.cones.iter().filter(|c| c.dim == n).collect();
        if top.is_empty() {
            return false;
        }
        self.cones.iter().filter(|c| c.dim == n - 1).all(|wall| {
            let count = top
                .iter()
                .filter(|c| wall.ray_indices.iter().all(|r| c.ray_indices.contains(r)))
                .count();
            count == 2
        })
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.cones.len()).all(|i| self.is_cone_smooth(i))
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.ray_indices.len() == c.dim)
    }

    fn is_cone_smooth(&self, i: usize) -> bool {
        let c = &self.cones[i];
        c.ray_indices.len() == c.dim
            && extends_to_basis(
                &c.ray_indices
                    .iter()
                    .map(|&r| self.rays[r].coords().to_vec())
                    .collect::<Vec<_>>(),
            )
    }

    pub fn cone_properties(&self, i: usize) -> ConeProperties {
        let c = &self.cones[i];
        ConeProperties {
            dim: c.dim,
            orbit_dim: self.orbit_dim(i),
            smooth: self.is_cone_smooth(i),
            simplicial: c.ray_indices.len() == c.dim,
        }
    }

    /// Number of cones of each dimension `0..=rank`.
    pub fn census(&self) -> Vec<usize> {
        let mut out = vec![0; self.rank + 1];
        for c in &self.cones {
            out[c.dim] += 1;
        }
        out
    }
}

/// Properties of the cone with the given rays.
pub fn cone_properties(fan: &Fan, ray_indices: &[usize]) -> Result<ConeProperties, FanError> {
    fan.find(ray_indices)
        .map(|i| fan.cone_properties(i))
        .ok_or_else(|| FanError::ConeNotInFan(ray_indices.to_vec()))
}

pub fn is_complete(fan: &Fan) -> bool {
    fan.is_complete()
}

/// Builds and validates a fan, stopping at the first violation.
pub fn build_fan(
    rank: usize,
    rays: Vec<LatticeVector>,
    maximal_cones: &[Vec<usize>],
) -> Result<Fan, FanError> {
    match check(rank, &rays, maximal_cones, true) {
        Checked::Fan(f) => Ok(*f),
        Checked::Errors(mut e) => Err(e.remove(0)),
    }
}

/// Every violation found while building the fan; empty for a valid fan.
pub fn diagnose(
    rank: usize,
    rays: &[LatticeVector],
    maximal_cones: &[Vec<usize>],
) -> Vec<FanError> {
    match check(rank, rays, maximal_cones, false) {
        Checked::Fan(_) => Vec::new(),
        Checked::Errors(e) => e,
    }
}

impl Fan {
    /// Shorthand for fixtures.
    pub fn from_i64s(
        rank: usize,
        rays: &[&[i64]],
        maximal_cones: &[&[usize]],
    ) -> Result<Fan, FanError> {
        build_fan(
            rank,
            rays.iter().map(|r| LatticeVector::from_i64s(r)).collect(),
            &maximal_cones.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )
    }
}

enum Checked {
    Fan(Box<Fan>),
    Errors(Vec<FanError>),
}

fn check(
    rank: usize,
    rays: &[LatticeVector],
    maximal_cones: &[Vec<usize>],
    fail_fast: bool,
) -> Checked {
    let mut errors = Vec::new();
    macro_rules! fail {
        ($e:expr) => {{
            errors.push($e);
            if fail_fast {
                return Checked::Errors(errors);
            }
        }};
    }

    for (i, r) in rays.iter().enumerate() {
        if r.rank() != rank {
            fail!(FanError::RankMismatch {
                ray: i,
                expected: rank,
                found: r.rank()
            });
        } else if r.is_zero() {
            fail!(FanError::ZeroRay(i));
        } else if !r.is_primitive() {
            fail!(FanError::NotPrimitive(i));
        }
        if let Some(j) = rays[..i].iter().position(|x| x == r) {
            fail!(FanError::DuplicateRay(j, i));
        }
    }
    if !errors.is_empty() {
        return Checked::Errors(errors);
    }

    let mut supplied: Vec<Vec<usize>> = Vec::new();
    for (k, c) in maximal_cones.iter().enumerate() {
        let mut c = c.clone();
        c.sort_unstable();
        c.dedup();
        if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
            fail!(FanError::InvalidRayIndex {
                cone: k,
                index: bad
            });
            continue;
        }
        supplied.push(c);
    }
    let used: BTreeSet<usize> = supplied.iter().flatten().copied().collect();
    let mut maximal = supplied.clone();
    for i in 0..rays.len() {
        if !used.contains(&i) {
            maximal.push(vec![i]);
        }
    }

    // geometry and faces of each maximal cone, in fan ray indices
    let mut geo: Vec<RationalCone<N>> = Vec::new();
    let mut face_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut ok_max: Vec<usize> = Vec::new();
    for (k, c) in maximal.iter().enumerate() {
        let gens: Vec<LatticeVector> = c.iter().map(|&i| rays[i].clone()).collect();
        let cone = RationalCone::from_int_generators(rank, &gens).expect("ranks checked");
        if !cone.is_strongly_convex() {
            fail!(FanError::NotStronglyConvex(c.clone()));
            geo.push(cone);
            continue;
        }
        let to_fan: Vec<usize> = cone
            .rays()
            .iter()
            .map(|r| {
                rays.iter()
                    .position(|x| x == r)
                    .expect("extreme rays are among the generators")
            })
            .collect();
        if let Some(&r) = c.iter().find(|i| !to_fan.contains(i)) {
            fail!(FanError::RayNotExtreme {
                cone: c.clone(),
                ray: r
            });
            geo.push(cone);
            continue;
        }
        for f in cone.faces().expect("strongly convex") {
            let mut s: Vec<usize> = f.ray_indices.iter().map(|&j| to_fan[j]).collect();
            s.sort_unstable();
            face_sets.insert(s);
        }
        geo.push(cone);
        ok_max.push(k);
    }

    for (a, &i) in ok_max.iter().enumerate() {
        for &j in &ok_max[a + 1..] {
            if !meets_in_common_face(rank, rays, &maximal[i], &geo[i], &maximal[j], &geo[j]) {
                fail!(FanError::BadIntersection(
                    maximal[i].clone(),
                    maximal[j].clone()
                ));
            }
        }
    }
    if !errors.is_empty() {
        return Checked::Errors(errors);
    }
    face_sets.insert(Vec::new());

    let mut cones: Vec<ConeRef> = Vec::new();
    let mut geometry = Vec::new();
    for s in &face_sets {
        let gens: Vec<LatticeVector> = s.iter().map(|&i| rays[i].clone()).collect();
        let g = RationalCone::from_int_generators(rank, &gens).expect("ranks checked");
        cones.push(ConeRef {
            ray_indices: s.clone(),
            dim: g.dim(),
            is_maximal: false,
        });
        geometry.push(g);
    }
    let mut order: Vec<usize> = (0..cones.len()).collect();
    order.sort_by(|&a, &b| {
        (cones[a].dim, &cones[a].ray_indices).cmp(&(cones[b].dim, &cones[b].ray_indices))
    });
    let mut cones: Vec<ConeRef> = order.iter().map(|&i| cones[i].clone()).collect();
    let geometry: Vec<RationalCone<N>> = order.iter().map(|&i| geometry[i].clone()).collect();
    let snapshot = cones.clone();
    for c in cones.iter_mut() {
        c.is_maximal = !snapshot.iter().any(|d| {
            d.ray_indices.len() > c.ray_indices.len()
                && c.ray_indices.iter().all(|r| d.ray_indices.contains(r))
        });
    }
    let index = cones
        .iter()
        .enumerate()
        .map(|(i, c)| (c.ray_indices.clone(), i))
        .collect();
    Checked::Fan(Box::new(Fan {
        rank,
        rays: rays.to_vec(),
        cones,
        geometry,
        index,
        supplied,
    }))
}

/// `σ₁ ∩ σ₂` is a face of both, spanned by their common rays.
fn meets_in_common_face(
    rank: usize,
    rays: &[LatticeVector],
    c1: &[usize],
    g1: &RationalCone<N>,
    c2: &[usize],
    g2: &RationalCone<N>,
) -> bool {
    let meet = g1.intersection(g2);
    let common: Vec<usize> = c1.iter().copied().filter(|i| c2.contains(i)).collect();
    let gens: Vec<LatticeVector> = common.iter().map(|&i| rays[i].clone()).collect();
    let spanned = RationalCone::from_int_generators(rank, &gens).expect("ranks checked");
    if !spanned.same_cone(&meet) {
        return false;
    }
    // the common cone must also be cut out by a supporting hyperplane of each
    [g1, g2].iter().all(|g| is_face(g, &meet))
}

fn is_face(cone: &RationalCone<N>, sub: &RationalCone<N>) -> bool {
    let Ok(faces) = cone.faces() else {
        return false;
    };
    faces
        .iter()
        .any(|f| cone.subcone(&f.ray_indices).same_cone(sub))
}

/// Standard fans used throughout the examples and tests.
pub mod standard {
    use super::*;

    /// `𝔸ⁿ`: the positive orthant and its faces.
    pub fn affine_space(n: usize) -> Fan {
        let rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        build_fan(n, rays, &[(0..n).collect()]).expect("orthant is a fan")
    }

    /// `ℙⁿ`: rays `e₁, …, eₙ, −Σeᵢ`, every proper subset spanning a cone.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        rays.push(LatticeVector::from_i64s(&vec![-1; n]));
        let max: Vec<Vec<usize>> = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        build_fan(n, rays, &max).expect("ℙⁿ is a fan")
    }

    /// Hirzebruch surface `𝔽ₐ`: rays `(1,0), (0,1), (0,−1), (−1,a)`.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::from_i64s(
            2,
            &[&[1, 0], &[0, 1], &[0, -1], &[-1, a]],
            &[&[0, 1], &[1, 3], &[3, 2], &[2, 0]],
        )
        .expect("𝔽ₐ is a fan")
    }

    pub fn p1_times_p1() -> Fan {
        hirzebruch(0)
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn census_of_standard_fans() {
        assert_eq!(projective_space(2).census(), vec![1, 3, 3]);
        assert_eq!(hirzebruch(1).census(), vec![1, 4, 4]);
        assert_eq!(affine_space(2).census(), vec![1, 2, 1]);
        assert_eq!(projective_space(1).census(), vec![1, 2]);
        assert_eq!(projective_space(3).cones().len(), 15);
    }

    #[test]
    fn completeness() {
        assert!(projective_space(2).is_complete());
        assert!(hirzebruch(1).is_complete());
        assert!(!affine_space(2).is_complete());
        assert!(projective_space(1).is_complete());
        let two_rays = Fan::from_i64s(2, &[&[1, 0], &[0, 1]], &[&[0], &[1]]).unwrap();
        assert!(!two_rays.is_complete());
    }

    #[test]
    fn ids_and_order() {
        let f = projective_space(2);
        let ids: Vec<String> = f.cones().iter().map(ConeRef::id).collect();
        assert_eq!(ids, ["0:", "1:0", "1:1", "1:2", "2:0,1", "2:0,2", "2:1,2"]);
        assert_eq!(f.find_by_id("2:0,2"), Some(5));
        assert!(f.cones()[4].is_maximal && !f.cones()[1].is_maximal);
    }

    #[test]
    fn properties() {
        let f = projective_space(2);
        let p = cone_properties(&f, &[]).unwrap();
        assert_eq!(p.orbit_dim, 2);
        let p = cone_properties(&f, &[0, 1]).unwrap();
        assert_eq!((p.orbit_dim, p.smooth, p.simplicial), (0, true, true));
        assert_eq!(
            cone_properties(&affine_space(2), &[0]).unwrap().orbit_dim,
            1
        );
        assert!(matches!(
            cone_properties(&affine_space(2), &[5]),
            Err(FanError::ConeNotInFan(_))
        ));
        let sing = Fan::from_i64s(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap();
        assert!(!sing.is_smooth());
        assert!(sing.is_simplicial());
    }

    #[test]
    fn non_simplicial_cone() {
        let f = Fan::from_i64s(
            3,
            &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]],
            &[&[0, 1, 2, 3]],
        )
        .unwrap();
        assert_eq!(f.census(), vec![1, 4, 4, 1]);
        assert!(!f.is_simplicial());
        // opposite rays 0 and 2 do not span a face
        assert!(f.find(&[0, 2]).is_none());
    }

    #[test]
    fn rejects_overlapping_cones() {
        let r = Fan::from_i64s(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]);
        assert!(matches!(r, Err(FanError::BadIntersection(_, _))));
        let r = Fan::from_i64s(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]);
        assert!(matches!(r, Err(FanError::NotStronglyConvex(_))));
        let r = Fan::from_i64s(2, &[&[1, 0], &[1, 0]], &[&[0], &[1]]);
        assert_eq!(r.unwrap_err(), FanError::DuplicateRay(0, 1));
        let r = Fan::from_i64s(2, &[&[2, 0]], &[&[0]]);
        assert_eq!(r.unwrap_err(), FanError::NotPrimitive(0));
        let r = Fan::from_i64s(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 2]]);
        assert!(matches!(r, Err(FanError::RayNotExtreme { ray: 2, .. })));
    }

    #[test]
    fn diagnose_collects_everything() {
        let rays: Vec<LatticeVector> = [[2, 0], [0, 1], [0, 1]]
            .iter()
            .map(|r| LatticeVector::from_i64s(r))
            .collect();
        let errs = diagnose(2, &rays, &[vec![0, 1]]);
        assert_eq!(
            errs,
            vec![FanError::NotPrimitive(0), FanError::DuplicateRay(1, 2)]
        );
    }

    #[test]
    fn face_closure_and_monotone_orbit_dims() {
        for f in [
            projective_space(2),
            hirzebruch(1),
            hirzebruch(3),
            affine_space(3),
            projective_space(3),
        ] {
            for i in 0..f.cones().len() {
                for j in f.faces_of(i) {
                    assert!(f.orbit_dim(j) >= f.orbit_dim(i));
                }
                let faces = f.cone_geometry(i).faces().unwrap();
                assert_eq!(faces.len(), f.faces_of(i).len());
            }
        }
    }

    #[test]
    fn complete_surfaces_have_2l_plus_1_cones() {
        for a in 0..4 {
            let f = hirzebruch(a);
            assert_eq!(f.cones().len(), 2 * f.rays().len() + 1);
        }
    }
}
