//! Polyhedral divisors on `𝔸¹` and `ℙ¹`: the combinatorial data of affine
//! varieties with a torus action of complexity one.
//!
//! A divisor assigns a `σ`-tailed polyhedron `Δ_z` to finitely many points of
//! the curve (all other points carry `σ` itself). Its graded algebra has
//! `A_m = H⁰(C, Σ h_z(m)·z)` with `h_z(m) = min_{p ∈ Δ_z} ⟨p, m⟩`.

mod colored;
mod polyhedron;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    floor, DualVector, GeometryError, LatticeVector, RationalCone, RationalVector, M, N,
};
use crate::roots::{condition1, DemazureRoot, RootSource};

pub use colored::{
    coherent_check, degree_zero_normalize, horizontal_lnd, CoherencePair, CoherenceReport,
    ColoredDivisor, Condition, HorizontalLnd, Mobius, Normalized, Violation,
};
pub use polyhedron::TailedPolyhedron;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AhError {
    #[error("polyhedron has no vertices")]
    EmptyPolyhedron,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("tail cone is not strongly convex")]
    TailNotStronglyConvex,
    #[error("tail of the polyhedron at {0} differs from the divisor's tail")]
    TailMismatch(CurvePoint),
    #[error("the point at infinity is not on 𝔸¹")]
    PointNotOnCurve,
    #[error("weight {0} is outside the dual of the tail cone")]
    WeightOutsideDual(DualVector),
    #[error("divisor is not proper")]
    NotProper,
    #[error("marked vector at {0} is not a vertex of its polyhedron")]
    MarkNotVertex(CurvePoint),
    #[error("no marked vertex given at {0}")]
    MissingMark(CurvePoint),
    #[error("sum of the marked vertices is not a vertex of the degree")]
    StarCondition,
    #[error("marked vertex at {0} is not a lattice point")]
    DoubleStarCondition(CurvePoint),
    #[error("marked points are inconsistent with the curve: {0}")]
    BadMarkedPoints(&'static str),
    #[error("no horizontal derivation of degree zero: condition {0} fails")]
    NoDegreeZeroLnd(Condition),
    #[error("divisor is not in normal form")]
    NotNormalized,
    #[error("pair is not coherent")]
    NotCoherent(Box<CoherenceReport>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    A1,
    P1,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curve::A1 => "A1",
            Curve::P1 => "P1",
        })
    }
}

/// A rational point of the curve, or `∞` on `ℙ¹`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Finite(BigRational),
    Infinity,
}

impl CurvePoint {
    pub fn int(z: i64) -> Self {
        CurvePoint::Finite(BigRational::from_integer(z.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            CurvePoint::Finite(z) => Some(z),
            CurvePoint::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Finite(z) => write!(f, "{z}"),
            CurvePoint::Infinity => f.write_str("∞"),
        }
    }
}

/// `𝔇 = Σ Δ_z·z`; points not listed carry the tail cone.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedralDivisor {
    curve: Curve,
    tail: RationalCone<N>,
    points: BTreeMap<CurvePoint, TailedPolyhedron>,
}

/// `dim A_m`, or the shape of `A_m` on `𝔸¹` where it is infinite dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightDim {
    Finite(BigInt),
    /// `A_m = 𝕂[t]·f` with `ord_z f = −⌊h_z(m)⌋` at the listed points.
    FreeRankOne {
        shifts: Vec<(CurvePoint, BigInt)>,
    },
}

impl PolyhedralDivisor {
    pub fn new(
        curve: Curve,
        tail: RationalCone<N>,
        points: impl IntoIterator<Item = (CurvePoint, TailedPolyhedron)>,
    ) -> Result<Self, AhError> {
        if !tail.is_strongly_convex() {
            return Err(AhError::TailNotStronglyConvex);
        }
        let mut map = BTreeMap::new();
        for (z, delta) in points {
            if curve == Curve::A1 && z == CurvePoint::Infinity {
                return Err(AhError::PointNotOnCurve);
            }
            if delta.rank() != tail.rank() {
                return Err(AhError::RankMismatch {
                    expected: tail.rank(),
                    found: delta.rank(),
                });
            }
            if delta.tail() != &tail {
                return Err(AhError::TailMismatch(z));
            }
            if !delta.is_tail() {
                map.insert(z, delta);
            }
        }
        Ok(Self {
            curve,
            tail,
            points: map,
        })
    }

    pub fn trivial(curve: Curve, tail: RationalCone<N>) -> Self {
        Self::new(curve, tail, []).expect("tail is checked by the caller")
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn tail(&self) -> &RationalCone<N> {
        &self.tail
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    /// `Δ_z`, the tail cone for points outside the support.
    pub fn delta(&self, z: &CurvePoint) -> TailedPolyhedron {
        self.points
            .get(z)
            .cloned()
            .unwrap_or_else(|| TailedPolyhedron::cone(&self.tail))
    }

    /// Points with `Δ_z ≠ σ`, in increasing order (`∞` last).
    pub fn support(&self) -> impl Iterator<Item = (&CurvePoint, &TailedPolyhedron)> {
        self.points.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.points.is_empty()
    }

    /// The dual cone `ω` of the tail.
    pub fn omega(&self) -> RationalCone<M> {
        self.tail.dual()
    }

    /// `h_z(m)` for every point of the support.
    pub fn evaluate(&self, m: &DualVector) -> Result<Vec<(CurvePoint, BigRational)>, AhError> {
        if !self.omega().contains_int(m) {
            return Err(AhError::WeightOutsideDual(m.clone()));
        }
        Ok(self
            .points
            .iter()
            .map(|(z, d)| (z.clone(), d.min_pairing(m).expect("m is in ω")))
            .collect())
    }

    /// `Σ_z Δ_z` over all points.
    pub fn degree(&self) -> TailedPolyhedron {
        self.points
            .values()
            .fold(TailedPolyhedron::cone(&self.tail), |acc, d| {
                acc.minkowski_sum(d)
            })
    }

    /// On `ℙ¹`, `deg 𝔇 ⊊ σ`; always true on `𝔸¹`.
    pub fn is_proper(&self) -> bool {
        match self.curve {
            Curve::A1 => true,
            Curve::P1 => {
                let deg = self.degree();
                let inside = deg.vertices().iter().all(|v| self.tail.contains(v));
                inside && !deg.contains(&RationalVector::zero(self.rank()))
            }
        }
    }

    pub fn weight_dim(&self, m: &DualVector) -> Result<WeightDim, AhError> {
        if !self.is_proper() {
            return Err(AhError::NotProper);
        }
        let values = self.evaluate(m)?;
        match self.curve {
            Curve::P1 => {
                let total: BigInt =
                    values.iter().map(|(_, h)| floor(h)).sum::<BigInt>() + BigInt::one();
                Ok(WeightDim::Finite(if total.is_negative() {
                    BigInt::zero()
                } else {
                    total
                }))
            }
            Curve::A1 => Ok(WeightDim::FreeRankOne {
                shifts: values.into_iter().map(|(z, h)| (z, floor(&h))).collect(),
            }),
        }
    }

    /// Supported in at most one point (`𝔸¹`) or two points (`ℙ¹`): the shape
    /// in which the variety is toric.
    pub fn has_toric_support(&self) -> bool {
        let bound = match self.curve {
            Curve::A1 => 1,
            Curve::P1 => 2,
        };
        self.points.len() <= bound
    }

    /// Trivial on `𝔸¹`, or supported at `∞` only on `ℙ¹`.
    pub fn is_normalized(&self) -> bool {
        match self.curve {
            Curve::A1 => self.is_trivial(),
            Curve::P1 => self.points.keys().all(|z| *z == CurvePoint::Infinity),
        }
    }

    pub(crate) fn with_points(&self, points: BTreeMap<CurvePoint, TailedPolyhedron>) -> Self {
        let mut out = Self {
            curve: self.curve,
            tail: self.tail.clone(),
            points: BTreeMap::new(),
        };
        for (z, d) in points {
            if !d.is_tail() {
                out.points.insert(z, d);
            }
        }
        out
    }
}

/// The toric variety realizing a normalized divisor with a degree-zero action.
#[derive(Clone, Debug)]
pub struct ToricRealization {
    /// `σ̃ ⊂ (N ⊕ ℤ)_ℚ`.
    pub cone: RationalCone<N>,
    /// `ẽ = (0, …, 0, −1)`, with distinguished ray `(0, …, 0, 1)`.
    pub root: DemazureRoot,
}

impl ToricRealization {
    /// Number of `r` with `(m, r)` in the dual of `σ̃`; `None` when unbounded.
    pub fn slice_count(&self, m: &DualVector) -> Option<BigInt> {
        let omega = self.cone.dual();
        let rank = self.cone.rank();
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for u in self.cone.rays() {
            // ⟨u, (m, r)⟩ = ⟨u', m⟩ + u_last·r ≥ 0
            let head: BigInt = u.coords()[..rank - 1]
                .iter()
                .zip(m.coords())
                .map(|(a, b)| a * b)
                .sum();
            let c = &u.coords()[rank - 1];
            if c.is_zero() {
                if head.is_negative() {
                    return Some(BigInt::zero());
                }
                continue;
            }
            let bound = BigRational::new(-head, c.clone());
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |x| x.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |x| x.min(bound)));
            }
        }
        debug_assert!(omega.rank() == rank);
        match (lo, hi) {
            (Some(l), Some(h)) => {
                let n = floor(&h) - crate::lattice::ceil(&l) + BigInt::one();
                Some(if n.is_negative() { BigInt::zero() } else { n })
            }
            _ => None,
        }
    }
}

/// `σ̃` and `ẽ` for a divisor in normal form (see [`PolyhedralDivisor::is_normalized`]).
pub fn toric_realization(divisor: &PolyhedralDivisor) -> Result<ToricRealization, AhError> {
    if !divisor.is_normalized() {
        return Err(AhError::NotNormalized);
    }
    let n = divisor.rank();
    let zero = BigRational::zero();
    let mut gens: Vec<RationalVector> = divisor
        .tail
        .rays()
        .iter()
        .map(|r| r.to_rational().extended(zero.clone()))
        .collect();
    gens.push(RationalVector::zero(n).extended(BigRational::one()));
    if divisor.curve == Curve::P1 {
        for v in divisor.delta(&CurvePoint::Infinity).vertices() {
            gens.push(v.extended(-BigRational::one()));
        }
    }
    let cone = RationalCone::new(n + 1, gens)?;
    let e = DualVector::unit(n + 1, n).neg();
    let rho = condition1(cone.rays(), &e).ok_or(AhError::NotProper)?;
    debug_assert_eq!(cone.rays()[rho], LatticeVector::unit(n + 1, n));
    Ok(ToricRealization {
        cone,
        root: DemazureRoot {
            e,
            distinguished_ray: rho,
            source: RootSource::Cone,
        },
    })
}
