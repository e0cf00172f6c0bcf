use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dd::{double_description, Generators};
use super::linalg::{rank_int, to_q};
use super::vector::{rational_pairing, IntVector, Lattice, RatVector};
use super::GeometryError;

/// A finitely generated convex polyhedral cone in `L ⊗ ℚ`.
///
/// Both representations are computed at construction: the extreme rays and
/// lineality space of the cone, and the same data for its dual (whose rays
/// are the facet normals). Rays are primitive and sorted lexicographically.
#[derive(Clone)]
pub struct RationalCone<L: Lattice> {
    rank: usize,
    generators: Vec<RatVector<L>>,
    rays: Vec<IntVector<L>>,
    lineality: Vec<IntVector<L>>,
    dual_rays: Vec<IntVector<L::Dual>>,
    dual_lineality: Vec<IntVector<L::Dual>>,
}

/// A face of a strongly convex cone, given by the indices of its rays in
/// [`RationalCone::rays`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub dim: usize,
    pub ray_indices: Vec<usize>,
}

impl<L: Lattice> RationalCone<L> {
    /// The cone generated by `generators` in a lattice of the given rank.
    pub fn new(rank: usize, generators: Vec<RatVector<L>>) -> Result<Self, GeometryError> {
        if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
            return Err(GeometryError::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        let rows: Vec<Vec<BigRational>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        let dual = double_description(rank, &rows, &[]);
        let dual_rays: Vec<IntVector<L::Dual>> =
            dual.rays.into_iter().map(IntVector::new).collect();
        let dual_lineality: Vec<IntVector<L::Dual>> =
            dual.lineality.into_iter().map(IntVector::new).collect();
        let primal = double_description(
            rank,
            &dual_rays
                .iter()
                .map(|u| to_q(u.coords()))
                .collect::<Vec<_>>(),
            &dual_lineality
                .iter()
                .map(|u| to_q(u.coords()))
                .collect::<Vec<_>>(),
        );
        Ok(Self::assemble(
            rank,
            generators,
            primal,
            dual_rays,
            dual_lineality,
        ))
    }

    pub fn from_int_generators(
        rank: usize,
        generators: &[IntVector<L>],
    ) -> Result<Self, GeometryError> {
        Self::new(
            rank,
            generators.iter().map(IntVector::to_rational).collect(),
        )
    }

    /// Shorthand for small fixtures: `RationalCone::from_i64s(2, &[&[1, 0], &[1, 2]])`.
    pub fn from_i64s(rank: usize, generators: &[&[i64]]) -> Result<Self, GeometryError> {
        Self::new(
            rank,
            generators.iter().map(|g| RatVector::from_i64s(g)).collect(),
        )
    }

    /// `{x : ⟨u, x⟩ ≥ 0 for u in inequalities, ⟨w, x⟩ = 0 for w in equalities}`.
    pub fn from_inequalities(
        rank: usize,
        inequalities: &[RatVector<L::Dual>],
        equalities: &[RatVector<L::Dual>],
    ) -> Result<Self, GeometryError> {
        if let Some(g) = inequalities
            .iter()
            .chain(equalities)
            .find(|g| g.rank() != rank)
        {
            return Err(GeometryError::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        let gens = double_description(
            rank,
            &inequalities
                .iter()
                .map(|u| u.coords().to_vec())
                .collect::<Vec<_>>(),
            &equalities
                .iter()
                .map(|u| u.coords().to_vec())
                .collect::<Vec<_>>(),
        );
        let mut generators: Vec<RatVector<L>> = gens
            .rays
            .iter()
            .map(|r| IntVector::<L>::new(r.clone()).to_rational())
            .collect();
        for l in &gens.lineality {
            let v = IntVector::<L>::new(l.clone()).to_rational();
            generators.push(v.neg());
            generators.push(v);
        }
        Self::new(rank, generators)
    }

    /// The cone `{0}`.
    pub fn zero(rank: usize) -> Self {
        Self::new(rank, Vec::new()).expect("rank is consistent")
    }

    /// The whole space.
    pub fn full(rank: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..rank {
            let e = IntVector::<L>::unit(rank, i).to_rational();
            gens.push(e.neg());
            gens.push(e);
        }
        Self::new(rank, gens).expect("rank is consistent")
    }

    fn assemble(
        rank: usize,
        generators: Vec<RatVector<L>>,
        primal: Generators,
        dual_rays: Vec<IntVector<L::Dual>>,
        dual_lineality: Vec<IntVector<L::Dual>>,
    ) -> Self {
        Self {
            rank,
            generators,
            rays: primal.rays.into_iter().map(IntVector::new).collect(),
            lineality: primal.lineality.into_iter().map(IntVector::new).collect(),
            dual_rays,
            dual_lineality,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generators as supplied at construction.
    pub fn generators(&self) -> &[RatVector<L>] {
        &self.generators
    }

    /// Primitive generators of the extreme rays (modulo the lineality space).
    pub fn rays(&self) -> &[IntVector<L>] {
        &self.rays
    }

    /// Basis of `σ ∩ (−σ)`.
    pub fn lineality(&self) -> &[IntVector<L>] {
        &self.lineality
    }

    /// Inward facet normals: the extreme rays of the dual cone.
    pub fn facet_normals(&self) -> &[IntVector<L::Dual>] {
        &self.dual_rays
    }

    /// Basis of `σ^⊥`.
    pub fn orthogonal_complement(&self) -> &[IntVector<L::Dual>] {
        &self.dual_lineality
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.rank - self.dual_lineality.len()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dual_lineality.is_empty()
    }

    /// A generating set: rays together with `±` the lineality basis.
    pub fn generating_set(&self) -> Vec<IntVector<L>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.neg());
        }
        out
    }

    pub fn contains(&self, x: &RatVector<L>) -> bool {
        self.dual_rays
            .iter()
            .all(|u| !rational_pairing(x, u).is_negative())
            && self
                .dual_lineality
                .iter()
                .all(|u| rational_pairing(x, u).is_zero())
    }

    pub fn contains_int(&self, x: &IntVector<L>) -> bool {
        self.contains(&x.to_rational())
    }

    pub fn contains_cone(&self, other: &Self) -> bool {
        other.generating_set().iter().all(|g| self.contains_int(g))
    }

    /// Cone equality by mutual containment.
    pub fn same_cone(&self, other: &Self) -> bool {
        self.rank == other.rank && self.contains_cone(other) && other.contains_cone(self)
    }

    /// `σ^∨ = {u : ⟨n, u⟩ ≥ 0 for all n ∈ σ}`, recomputed from the supplied
    /// generators.
    pub fn dual(&self) -> RationalCone<L::Dual> {
        let mut gens: Vec<RatVector<L::Dual>> =
            self.dual_rays.iter().map(IntVector::to_rational).collect();
        for l in &self.dual_lineality {
            let v = l.to_rational();
            gens.push(v.neg());
            gens.push(v);
        }
        RationalCone::new(self.rank, gens).expect("dual has the same rank")
    }

    /// Indices of rays with `⟨ray, u⟩ = 0`.
    pub fn rays_annihilated_by(&self, u: &IntVector<L::Dual>) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| super::vector::pairing(&self.rays[i], u).is_zero())
            .collect()
    }

    fn span_dim(&self, indices: &[usize]) -> usize {
        let rows: Vec<Vec<BigInt>> = indices
            .iter()
            .map(|&i| self.rays[i].coords().to_vec())
            .collect();
        rank_int(&rows, self.rank)
    }

    /// Facets (codimension-one faces) of a strongly convex cone.
    pub fn facets(&self) -> Result<Vec<Face>, GeometryError> {
        if !self.is_strongly_convex() {
            return Err(GeometryError::NotStronglyConvex);
        }
        let mut out: Vec<Face> = self
            .dual_rays
            .iter()
            .map(|u| {
                let ray_indices = self.rays_annihilated_by(u);
                Face {
                    dim: self.span_dim(&ray_indices),
                    ray_indices,
                }
            })
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// All faces of a strongly convex cone, from `{0}` up to the cone itself,
    /// sorted by dimension and then by ray indices.
    pub fn faces(&self) -> Result<Vec<Face>, GeometryError> {
        let facets = self.facets()?;
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all);
        let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.ray_indices.clone()).collect();
        for f in &frontier {
            sets.insert(f.clone());
        }
        while let Some(s) = frontier.pop() {
            for f in &facets {
                let meet: Vec<usize> = s
                    .iter()
                    .copied()
                    .filter(|i| f.ray_indices.contains(i))
                    .collect();
                if sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut out: Vec<Face> = sets
            .into_iter()
            .map(|ray_indices| Face {
                dim: self.span_dim(&ray_indices),
                ray_indices,
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// The cone generated by a subset of the rays.
    pub fn subcone(&self, ray_indices: &[usize]) -> Self {
        let gens: Vec<RatVector<L>> = ray_indices
            .iter()
            .map(|&i| self.rays[i].to_rational())
            .collect();
        Self::new(self.rank, gens).expect("rank is consistent")
    }

    /// `σ₁ ∩ σ₂`.
    pub fn intersection(&self, other: &Self) -> Self {
        let mut ineq: Vec<RatVector<L::Dual>> =
            self.dual_rays.iter().map(IntVector::to_rational).collect();
        ineq.extend(other.dual_rays.iter().map(IntVector::to_rational));
        let mut eq: Vec<RatVector<L::Dual>> = self
            .dual_lineality
            .iter()
            .map(IntVector::to_rational)
            .collect();
        eq.extend(other.dual_lineality.iter().map(IntVector::to_rational));
        Self::from_inequalities(self.rank, &ineq, &eq).expect("rank is consistent")
    }
}

impl<L: Lattice> fmt::Debug for RationalCone<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{:?}", self.rays)?;
        if !self.lineality.is_empty() {
            write!(f, "+lin{:?}", self.lineality)?;
        }
        Ok(())
    }
}

impl<L: Lattice> PartialEq for RationalCone<L> {
    fn eq(&self, other: &Self) -> bool {
        self.same_cone(other)
    }
}

/// Free-function form of [`RationalCone::dual`].
pub fn dual_cone<L: Lattice>(cone: &RationalCone<L>) -> RationalCone<L::Dual> {
    cone.dual()
}

/// Free-function form of [`RationalCone::faces`].
pub fn faces<L: Lattice>(cone: &RationalCone<L>) -> Result<Vec<Face>, GeometryError> {
    cone.faces()
}
