use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{
    rational_pairing, DualVector, LatticeVector, RationalCone, RationalVector, N,
};
use crate::lnd::{HomogeneousLnd, WeightMonoid};

use super::{AhError, Curve, CurvePoint, PolyhedralDivisor, TailedPolyhedron};

/// A polyhedral divisor with marked points `z₀` (and `z∞` on `ℙ¹`) and a
/// marked vertex `v_z` of `Δ_z` for every `z ∈ C′`.
///
/// Marks default to `0` at points outside the support.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredDivisor {
    base: PolyhedralDivisor,
    z0: CurvePoint,
    z_inf: Option<CurvePoint>,
    marks: BTreeMap<CurvePoint, RationalVector>,
}

impl ColoredDivisor {
    pub fn new(
        base: PolyhedralDivisor,
        z0: CurvePoint,
        z_inf: Option<CurvePoint>,
        marks: impl IntoIterator<Item = (CurvePoint, RationalVector)>,
    ) -> Result<Self, AhError> {
        match (base.curve(), &z_inf) {
            (Curve::A1, Some(_)) => {
                return Err(AhError::BadMarkedPoints("z∞ is only marked on ℙ¹"))
            }
            (Curve::P1, None) => {
                return Err(AhError::BadMarkedPoints("ℙ¹ needs a marked point z∞"))
            }
            (Curve::P1, Some(z)) if *z == z0 => {
                return Err(AhError::BadMarkedPoints("z₀ and z∞ coincide"))
            }
            (Curve::A1, None) if z0 == CurvePoint::Infinity => {
                return Err(AhError::PointNotOnCurve)
            }
            _ => {}
        }
        let rank = base.rank();
        let mut map = BTreeMap::new();
        for (z, v) in marks {
            if v.rank() != rank {
                return Err(AhError::RankMismatch {
                    expected: rank,
                    found: v.rank(),
                });
            }
            if Some(&z) == z_inf.as_ref() {
                return Err(AhError::BadMarkedPoints("z∞ carries no marked vertex"));
            }
            if base.curve() == Curve::A1 && z == CurvePoint::Infinity {
                return Err(AhError::PointNotOnCurve);
            }
            if !base.delta(&z).is_vertex(&v) {
                return Err(AhError::MarkNotVertex(z));
            }
            if !v.is_zero() {
                map.insert(z, v);
            }
        }
        let colored = Self {
            base,
            z0,
            z_inf,
            marks: map,
        };
        for (z, delta) in colored.base.support() {
            if Some(z) != colored.z_inf.as_ref() && !delta.is_vertex(&colored.mark(z)) {
                return Err(AhError::MissingMark(z.clone()));
            }
        }
        if !colored.degree_on_affine_part().is_vertex(&colored.v_deg()) {
            return Err(AhError::StarCondition);
        }
        for (z, v) in &colored.marks {
            if *z != colored.z0 && !v.is_integral() {
                return Err(AhError::DoubleStarCondition(z.clone()));
            }
        }
        Ok(colored)
    }

    pub fn base(&self) -> &PolyhedralDivisor {
        &self.base
    }

    pub fn z0(&self) -> &CurvePoint {
        &self.z0
    }

    pub fn z_inf(&self) -> Option<&CurvePoint> {
        self.z_inf.as_ref()
    }

    /// `v_z`; zero off the support.
    pub fn mark(&self, z: &CurvePoint) -> RationalVector {
        self.marks
            .get(z)
            .cloned()
            .unwrap_or_else(|| RationalVector::zero(self.base.rank()))
    }

    /// Nonzero marks, by point.
    pub fn marks(&self) -> &BTreeMap<CurvePoint, RationalVector> {
        &self.marks
    }

    fn on_affine_part(&self, z: &CurvePoint) -> bool {
        Some(z) != self.z_inf.as_ref()
    }

    /// `v_deg = Σ_{z ∈ C′} v_z`.
    pub fn v_deg(&self) -> RationalVector {
        self.marks
            .values()
            .fold(RationalVector::zero(self.base.rank()), |acc, v| acc.add(v))
    }

    /// `deg 𝔇|_{C′} = Σ_{z ∈ C′} Δ_z`.
    pub fn degree_on_affine_part(&self) -> TailedPolyhedron {
        self.base
            .support()
            .filter(|(z, _)| self.on_affine_part(z))
            .fold(TailedPolyhedron::cone(self.base.tail()), |acc, (_, d)| {
                acc.minkowski_sum(d)
            })
    }

    /// Smallest `d > 0` with `d·v_{z₀} ∈ N`.
    pub fn d(&self) -> BigInt {
        self.mark(&self.z0).denominator_lcm()
    }

    /// `σ̃ ⊂ (N ⊕ ℤ)_ℚ`.
    pub fn sigma_tilde(&self) -> Result<RationalCone<N>, AhError> {
        let n = self.base.rank();
        let v_deg = self.v_deg();
        let v0 = self.mark(&self.z0);
        let deg = self.degree_on_affine_part();
        let mut gens: Vec<RationalVector> = deg
            .vertices()
            .iter()
            .map(|w| w.sub(&v_deg).extended(BigRational::zero()))
            .collect();
        gens.extend(
            self.base
                .tail()
                .rays()
                .iter()
                .map(|r| r.to_rational().extended(BigRational::zero())),
        );
        gens.push(v0.extended(BigRational::one()));
        if let Some(z_inf) = &self.z_inf {
            for w in self.base.delta(z_inf).vertices() {
                gens.push(w.add(&v_deg).sub(&v0).extended(-BigRational::one()));
            }
        }
        Ok(RationalCone::new(n + 1, gens)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
            Condition::IV => "iv",
        })
    }
}

/// One failed inequality. The witness is a vertex of `Δ_z`, or a ray of `σ̃`
/// for condition (i).
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub point: Option<CurvePoint>,
    pub witness: Option<RationalVector>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.condition, self.message)?;
        if let Some(z) = &self.point {
            write!(f, " at z = {z}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, ", witness {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport {
    pub e: DualVector,
    pub d: BigInt,
    pub s: Option<BigInt>,
    pub violations: Vec<Violation>,
}

impl CoherenceReport {
    pub fn conditions(&self) -> Vec<Condition> {
        let mut c: Vec<Condition> = self.violations.iter().map(|v| v.condition).collect();
        c.dedup();
        c
    }
}

/// A coherent pair `(𝔇̃, e)` with its derived data.
#[derive(Clone, Debug)]
pub struct CoherencePair {
    pub colored: ColoredDivisor,
    pub e: DualVector,
    pub d: BigInt,
    pub s: BigInt,
    pub sigma_tilde: RationalCone<N>,
    /// `ẽ = (e, s)`.
    pub e_tilde: DualVector,
    /// `ρ̃ = (d·v_{z₀}, d)`.
    pub rho_tilde: LatticeVector,
}

/// Checks conditions (i)–(iv) and reports every failure.
pub fn coherent_check(
    colored: &ColoredDivisor,
    e: &DualVector,
) -> Result<CoherencePair, CoherenceReport> {
    let n = colored.base.rank();
    let d = colored.d();
    let dq = BigRational::from_integer(d.clone());
    let v0 = colored.mark(&colored.z0);
    let mut violations = Vec::new();
    let mut push = |condition,
                    point: Option<&CurvePoint>,
                    witness: Option<RationalVector>,
                    message: String| {
        violations.push(Violation {
            condition,
            point: point.cloned(),
            witness,
            message,
        })
    };
    if e.rank() != n {
        push(
            Condition::I,
            None,
            None,
            format!("degree has rank {}, expected {n}", e.rank()),
        );
        return Err(CoherenceReport {
            e: e.clone(),
            d,
            s: None,
            violations,
        });
    }

    // (i): ⟨ρ̃, (e, s)⟩ = d⟨v₀, e⟩ + d·s = −1 fixes s.
    let dv0e = &dq * rational_pairing(&v0, e);
    let s_q = (-BigRational::one() - &dv0e) / &dq;
    let s = s_q.is_integer().then(|| s_q.to_integer());
    let rho_tilde =
        LatticeVector::new(v0.coords().iter().map(|c| (c * &dq).to_integer()).collect())
            .extended(d.clone());
    let sigma_tilde = match colored.sigma_tilde() {
        Ok(c) => c,
        Err(err) => {
            push(Condition::I, None, None, err.to_string());
            return Err(CoherenceReport {
                e: e.clone(),
                d,
                s,
                violations,
            });
        }
    };
    match &s {
        None => push(
            Condition::I,
            Some(&colored.z0),
            Some(v0.clone()),
            format!("s = {s_q} is not an integer"),
        ),
        Some(s) => {
            let e_tilde = e.extended(s.clone());
            if !sigma_tilde.is_strongly_convex() {
                push(Condition::I, None, None, "σ̃ is not strongly convex".into());
            } else if !sigma_tilde.rays().contains(&rho_tilde) {
                push(
                    Condition::I,
                    None,
                    Some(rho_tilde.to_rational()),
                    "ρ̃ is not a ray of σ̃".into(),
                );
            }
            for r in sigma_tilde.rays().iter().filter(|r| **r != rho_tilde) {
                let p = crate::lattice::pairing(r, &e_tilde);
                if p < BigInt::zero() {
                    push(
                        Condition::I,
                        None,
                        Some(r.to_rational()),
                        format!("ẽ pairs to {p} with a ray of σ̃"),
                    );
                }
            }
        }
    }

    for (z, delta) in colored.base.support() {
        if !colored.on_affine_part(z) || *z == colored.z0 {
            continue;
        }
        let vz = colored.mark(z);
        let rhs = BigRational::one() + rational_pairing(&vz, e);
        for v in delta.vertices().iter().filter(|v| **v != vz) {
            let lhs = rational_pairing(v, e);
            if lhs < rhs {
                push(
                    Condition::II,
                    Some(z),
                    Some(v.clone()),
                    format!("⟨v, e⟩ = {lhs} < {rhs}"),
                );
            }
        }
    }

    let rhs = BigRational::one() + rational_pairing(&v0, e);
    for v in colored
        .base
        .delta(&colored.z0)
        .vertices()
        .iter()
        .filter(|v| **v != v0)
    {
        let lhs = &dq * rational_pairing(v, e);
        if lhs < rhs {
            push(
                Condition::III,
                Some(&colored.z0),
                Some(v.clone()),
                format!("d⟨v, e⟩ = {lhs} < {rhs}"),
            );
        }
    }

    if let Some(z_inf) = &colored.z_inf {
        let rhs = -BigRational::one() - &dq * rational_pairing(&colored.v_deg(), e);
        for v in colored.base.delta(z_inf).vertices() {
            let lhs = &dq * rational_pairing(v, e);
            if lhs < rhs {
                push(
                    Condition::IV,
                    Some(z_inf),
                    Some(v.clone()),
                    format!("d⟨v, e⟩ = {lhs} < {rhs}"),
                );
            }
        }
    }

    match s {
        Some(s) if violations.is_empty() => Ok(CoherencePair {
            colored: colored.clone(),
            e: e.clone(),
            e_tilde: e.extended(s.clone()),
            d,
            s,
            sigma_tilde,
            rho_tilde,
        }),
        s => Err(CoherenceReport {
            e: e.clone(),
            d,
            s,
            violations,
        }),
    }
}

/// `z ↦ (a·z + b)/(c·z + d)` on `ℙ¹(ℚ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Mobius {
    pub fn identity() -> Self {
        Self {
            a: BigRational::one(),
            b: BigRational::zero(),
            c: BigRational::zero(),
            d: BigRational::one(),
        }
    }

    /// Sends `z0` to `0` and `z_inf` to `∞`; a translation when `z_inf = ∞`.
    pub fn normalizing(z0: &CurvePoint, z_inf: &CurvePoint) -> Self {
        let (one, zero) = (BigRational::one(), BigRational::zero());
        match (z0, z_inf) {
            (CurvePoint::Finite(p), CurvePoint::Infinity) => Self {
                a: one.clone(),
                b: -p,
                c: zero,
                d: one,
            },
            (CurvePoint::Finite(p), CurvePoint::Finite(q)) => Self {
                a: one.clone(),
                b: -p,
                c: one,
                d: -q,
            },
            (CurvePoint::Infinity, CurvePoint::Finite(q)) => Self {
                a: zero,
                b: one.clone(),
                c: one,
                d: -q,
            },
            (CurvePoint::Infinity, CurvePoint::Infinity) => panic!("marked points coincide"),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, z: &CurvePoint) -> CurvePoint {
        match z {
            CurvePoint::Finite(z) => {
                let den = &self.c * z + &self.d;
                if den.is_zero() {
                    CurvePoint::Infinity
                } else {
                    CurvePoint::Finite((&self.a * z + &self.b) / den)
                }
            }
            CurvePoint::Infinity if self.c.is_zero() => CurvePoint::Infinity,
            CurvePoint::Infinity => CurvePoint::Finite(&self.a / &self.c),
        }
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "z ↦ ({}) / ({})",
            Linear(&self.a, &self.b),
            Linear(&self.c, &self.d)
        )
    }
}

/// `a·z + b` with unit and zero coefficients suppressed.
struct Linear<'a>(&'a BigRational, &'a BigRational);

impl fmt::Display for Linear<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.0, self.1);
        if a.is_zero() {
            return write!(f, "{b}");
        }
        match a {
            a if a.is_one() => write!(f, "z")?,
            a if *a == -BigRational::one() => write!(f, "-z")?,
            a => write!(f, "{a}·z")?,
        }
        if b.is_negative() {
            write!(f, " - {}", -b)
        } else if b.is_positive() {
            write!(f, " + {b}")
        } else {
            Ok(())
        }
    }
}

/// Moves `z₀` to `0` and `z∞` to `∞`, then shifts `v_z` to `0` for every
/// `z ∈ C′ \ {z₀}` (all of `C′` when `include_z0`), compensating at `∞` on `ℙ¹`.
fn normal_coordinates(colored: &ColoredDivisor, include_z0: bool) -> (ColoredDivisor, Mobius) {
    let base = &colored.base;
    let z_inf = colored.z_inf.clone().unwrap_or(CurvePoint::Infinity);
    let mobius = Mobius::normalizing(&colored.z0, &z_inf);
    let mut points: BTreeMap<CurvePoint, TailedPolyhedron> = BTreeMap::new();
    let mut shift_total = RationalVector::zero(base.rank());
    let mut marks = BTreeMap::new();
    for (z, delta) in base.support() {
        let w = mobius.apply(z);
        let mut delta = delta.clone();
        if colored.on_affine_part(z) {
            let vz = colored.mark(z);
            if include_z0 || *z != colored.z0 {
                delta = delta.translate(&vz.neg());
                shift_total = shift_total.add(&vz);
            } else if !vz.is_zero() {
                marks.insert(w.clone(), vz);
            }
        }
        points.insert(w, delta);
    }
    if base.curve() == Curve::P1 && !shift_total.is_zero() {
        let at_inf = points
            .remove(&CurvePoint::Infinity)
            .unwrap_or_else(|| TailedPolyhedron::cone(base.tail()));
        points.insert(CurvePoint::Infinity, at_inf.translate(&shift_total));
    }
    let z_inf = colored.z_inf.as_ref().map(|_| CurvePoint::Infinity);
    let out = ColoredDivisor {
        base: base.with_points(points),
        z0: CurvePoint::zero(),
        z_inf,
        marks,
    };
    (out, mobius)
}

/// Output of [`degree_zero_normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    /// Trivial on `𝔸¹`, supported at `∞` only on `ℙ¹`.
    pub divisor: PolyhedralDivisor,
    pub mobius: Mobius,
    /// `divisor` with marks `z₀ = 0`, `z∞ = ∞`, all `v_z = 0`.
    pub colored: ColoredDivisor,
}

/// Rewrites a divisor carrying a degree-zero horizontal derivation in the
/// normal form of a trivial divisor (`𝔸¹`) or `Δ_∞·[∞]` (`ℙ¹`).
pub fn degree_zero_normalize(colored: &ColoredDivisor) -> Result<Normalized, AhError> {
    let zero = DualVector::zero(colored.base.rank());
    if let Err(report) = coherent_check(colored, &zero) {
        return Err(AhError::NoDegreeZeroLnd(report.violations[0].condition));
    }
    let (normal, mobius) = normal_coordinates(colored, true);
    if !normal.base.is_proper() {
        return Err(AhError::NotProper);
    }
    debug_assert!(normal.base.is_normalized());
    Ok(Normalized {
        divisor: normal.base.clone(),
        mobius,
        colored: normal,
    })
}

/// The derivation of formula `∂(χ^m·t^r) = d(⟨v₀, m⟩ + r)·χ^{m+e}·t^{r+s}`
/// together with the coordinates it is written in.
#[derive(Clone, Debug)]
pub struct HorizontalLnd {
    pub lnd: HomogeneousLnd,
    /// The pair after moving to `z₀ = 0`, `z∞ = ∞`, `v_z = 0` for `z ≠ z₀`.
    pub normalized: ColoredDivisor,
    pub mobius: Mobius,
}

pub fn horizontal_lnd(pair: &CoherencePair) -> Result<HorizontalLnd, AhError> {
    if let Err(report) = coherent_check(&pair.colored, &pair.e) {
        return Err(AhError::NotCoherent(Box::new(report)));
    }
    let (normalized, mobius) = normal_coordinates(&pair.colored, false);
    let monoid = WeightMonoid::with_t(monomial_cone(&normalized.base)?.dual());
    let v0 = normalized.mark(&CurvePoint::zero());
    let lnd =
        HomogeneousLnd::horizontal(monoid, pair.e.clone(), v0, pair.d.clone(), pair.s.clone());
    Ok(HorizontalLnd {
        lnd,
        normalized,
        mobius,
    })
}

/// The cone whose dual holds the `(m, r)` with `χ^m·t^r ∈ A[C, 𝔇]`.
pub(crate) fn monomial_cone(base: &PolyhedralDivisor) -> Result<RationalCone<N>, AhError> {
    let n = base.rank();
    let zero = BigRational::zero();
    let mut gens: Vec<RationalVector> = base
        .tail()
        .rays()
        .iter()
        .map(|r| r.to_rational().extended(zero.clone()))
        .collect();
    let add = |gens: &mut Vec<RationalVector>, delta: &TailedPolyhedron, last: BigRational| {
        gens.extend(delta.vertices().iter().map(|v| v.extended(last.clone())));
    };
    add(
        &mut gens,
        &base.delta(&CurvePoint::zero()),
        BigRational::one(),
    );
    for (z, delta) in base.support() {
        match z {
            CurvePoint::Infinity => {}
            z if *z == CurvePoint::zero() => {}
            _ => add(&mut gens, delta, zero.clone()),
        }
    }
    if base.curve() == Curve::P1 {
        add(
            &mut gens,
            &base.delta(&CurvePoint::Infinity),
            -BigRational::one(),
        );
    }
    Ok(RationalCone::new(n + 1, gens)?)
}
