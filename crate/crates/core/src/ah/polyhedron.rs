use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{
    rational_pairing, rational_pairing_q, DualVector, RationalCone, RationalVector, N,
};

use super::AhError;

/// `conv(vertices) + σ` for a strongly convex tail cone `σ`.
///
/// Vertices are canonical: redundant points are dropped and the rest sorted.
#[derive(Clone, Debug)]
pub struct TailedPolyhedron {
    vertices: Vec<RationalVector>,
    tail: RationalCone<N>,
}

impl TailedPolyhedron {
    pub fn new(points: Vec<RationalVector>, tail: RationalCone<N>) -> Result<Self, AhError> {
        if points.is_empty() {
            return Err(AhError::EmptyPolyhedron);
        }
        let rank = tail.rank();
        if let Some(p) = points.iter().find(|p| p.rank() != rank) {
            return Err(AhError::RankMismatch {
                expected: rank,
                found: p.rank(),
            });
        }
        if !tail.is_strongly_convex() {
            return Err(AhError::TailNotStronglyConvex);
        }
        let homog = homogenized(&points, &tail);
        let mut vertices: Vec<RationalVector> = homog
            .rays()
            .iter()
            .filter(|r| r.coords()[rank].is_positive())
            .map(|r| {
                let t = BigRational::from_integer(r.coords()[rank].clone());
                RationalVector::new(
                    r.coords()[..rank]
                        .iter()
                        .map(|c| BigRational::from_integer(c.clone()) / &t)
                        .collect(),
                )
            })
            .collect();
        vertices.sort();
        Ok(Self { vertices, tail })
    }

    /// The tail cone itself, `{0} + σ`.
    pub fn cone(tail: &RationalCone<N>) -> Self {
        Self {
            vertices: vec![RationalVector::zero(tail.rank())],
            tail: tail.clone(),
        }
    }

    pub fn point(p: RationalVector, tail: &RationalCone<N>) -> Self {
        Self {
            vertices: vec![p],
            tail: tail.clone(),
        }
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn tail(&self) -> &RationalCone<N> {
        &self.tail
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    pub fn is_vertex(&self, v: &RationalVector) -> bool {
        self.vertices.contains(v)
    }

    /// Whether this is the tail cone (the neutral element of Minkowski sums).
    pub fn is_tail(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].is_zero()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        let cone = homogenized(&self.vertices, &self.tail);
        cone.contains(&x.extended(BigRational::one()))
    }

    /// `min_{p ∈ Δ} ⟨p, m⟩`, finite for `m` in the dual of the tail.
    pub fn min_pairing(&self, m: &DualVector) -> Option<BigRational> {
        if !self.tail.dual().contains_int(m) {
            return None;
        }
        self.vertices.iter().map(|v| rational_pairing(v, m)).min()
    }

    /// Same as [`min_pairing`](Self::min_pairing) for rational weights.
    pub fn min_pairing_q(&self, m: &crate::lattice::RationalDualVector) -> Option<BigRational> {
        if !self.tail.dual().contains(m) {
            return None;
        }
        self.vertices.iter().map(|v| rational_pairing_q(v, m)).min()
    }

    pub fn translate(&self, v: &RationalVector) -> Self {
        let mut vertices: Vec<RationalVector> = self.vertices.iter().map(|w| w.add(v)).collect();
        vertices.sort();
        Self {
            vertices,
            tail: self.tail.clone(),
        }
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.add(b));
            }
        }
        Self::new(pts, self.tail.clone()).expect("sum of valid polyhedra")
    }

    /// Common denominator of the vertex coordinates.
    pub fn denominator(&self) -> BigInt {
        self.vertices.iter().fold(BigInt::one(), |acc, v| {
            num_integer::lcm(acc, v.denominator_lcm())
        })
    }
}

impl PartialEq for TailedPolyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.tail == other.tail
    }
}

impl fmt::Display for TailedPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "conv{{{}}} + σ", vs.join(", "))
    }
}

/// `cone((p, 1) for p in points, (ρ, 0) for ρ in tail)`.
pub(crate) fn homogenized(points: &[RationalVector], tail: &RationalCone<N>) -> RationalCone<N> {
    let rank = tail.rank();
    let mut gens: Vec<RationalVector> = points
        .iter()
        .map(|p| p.extended(BigRational::one()))
        .collect();
    gens.extend(
        tail.rays()
            .iter()
            .map(|r| r.to_rational().extended(BigRational::zero())),
    );
    RationalCone::new(rank + 1, gens).expect("ranks agree")
}
