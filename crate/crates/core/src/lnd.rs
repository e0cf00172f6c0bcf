//! Semigroup algebras, homogeneous locally nilpotent derivations and their
//! exponentials.
//!
//! Elements are finite ℚ-combinations of monomials `χ^m` or `χ^m·t^r`. The
//! algebra is described by its [`WeightMonoid`], the lattice points of a
//! rational cone in `M` (toric case) or in `M ⊕ ℤ` (with the extra `t`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{
    pairing, rational_pairing, DualVector, IntVector, LatticeVector, RationalCone, RationalVector,
    M, N,
};
use crate::roots::{condition1, DemazureRoot};

/// Iteration ceiling for nilpotency checks.
pub const NILPOTENCY_CEILING: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LndError {
    #[error("monomial {0} is not in the algebra")]
    NotInAlgebra(Monomial),
    #[error("derivative of {from} leaves the algebra at {to}")]
    WeightEscape { from: Monomial, to: Monomial },
    #[error("not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("{0} is not a Demazure root of the cone")]
    NotARoot(DualVector),
    #[error("element and derivation live in different algebras")]
    AlgebraMismatch,
}

/// `χ^m`, or `χ^m·t^r` when `r` is present.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub m: DualVector,
    pub r: Option<BigInt>,
}

impl Monomial {
    pub fn character(m: DualVector) -> Self {
        Self { m, r: None }
    }

    pub fn with_t(m: DualVector, r: BigInt) -> Self {
        Self { m, r: Some(r) }
    }

    pub fn unit(rank: usize, with_t: bool) -> Self {
        Self {
            m: DualVector::zero(rank),
            r: with_t.then(BigInt::zero),
        }
    }

    /// The weight as a single lattice vector, `(m, r)` when `t` is present.
    pub fn exponent(&self) -> DualVector {
        match &self.r {
            None => self.m.clone(),
            Some(r) => self.m.extended(r.clone()),
        }
    }

    fn times(&self, other: &Self) -> Self {
        let r = match (&self.r, &other.r) {
            (None, None) => None,
            (Some(a), Some(b)) => Some(a + b),
            _ => panic!("monomials from different algebras"),
        };
        Self {
            m: self.m.add(&other.m),
            r,
        }
    }

    fn shifted(&self, e: &DualVector, s: Option<&BigInt>) -> Self {
        Self {
            m: self.m.add(e),
            r: self.r.as_ref().map(|r| r + s.cloned().unwrap_or_default()),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ^{}", self.m)?;
        if let Some(r) = &self.r {
            write!(f, "·t^{r}")?;
        }
        Ok(())
    }
}

/// A finite ℚ-linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SemigroupElement {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SemigroupElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize, with_t: bool) -> Self {
        Self::monomial(Monomial::unit(rank, with_t), BigRational::one())
    }

    pub fn monomial(mono: Monomial, coeff: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(mono, coeff);
        out
    }

    /// `χ^m` with coefficient 1.
    pub fn character(m: &[i64]) -> Self {
        Self::monomial(
            Monomial::character(DualVector::from_i64s(m)),
            BigRational::one(),
        )
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (mono, c) in terms {
            out.add_term(mono, c);
        }
        out
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.times(b), ca * cb);
            }
        }
        out
    }

    /// The common weight if every term has the same `m`.
    pub fn homogeneous_weight(&self) -> Option<&DualVector> {
        let mut it = self.terms.keys().map(|k| &k.m);
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}·")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// The monomials of an algebra: lattice points of a cone in `M` or `M ⊕ ℤ`.
#[derive(Clone, Debug)]
pub struct WeightMonoid {
    cone: RationalCone<M>,
    with_t: bool,
}

impl WeightMonoid {
    /// `σ^∨ ∩ M` for a strongly convex `σ ⊂ N_ℚ`.
    pub fn toric(sigma: &RationalCone<N>) -> Self {
        Self {
            cone: sigma.dual(),
            with_t: false,
        }
    }

    /// Weights `(m, r)` lying in `cone`, written `χ^m·t^r`.
    pub fn with_t(cone: RationalCone<M>) -> Self {
        Self { cone, with_t: true }
    }

    pub fn cone(&self) -> &RationalCone<M> {
        &self.cone
    }

    pub fn has_t(&self) -> bool {
        self.with_t
    }

    /// Rank of the character lattice, not counting `t`.
    pub fn rank(&self) -> usize {
        if self.with_t {
            self.cone.rank() - 1
        } else {
            self.cone.rank()
        }
    }

    pub fn contains(&self, mono: &Monomial) -> bool {
        mono.r.is_some() == self.with_t
            && mono.m.rank() == self.rank()
            && self.cone.contains_int(&mono.exponent())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LndKind {
    /// `∂(χ^m) = ⟨n_ρ, m⟩·χ^{m+e}`.
    Toric { n_rho: LatticeVector },
    /// `∂(χ^m·t^r) = d(⟨v₀, m⟩ + r)·χ^{m+e}·t^{r+s}`.
    Horizontal {
        v0: RationalVector,
        d: BigInt,
        s: BigInt,
    },
}

/// A homogeneous derivation of degree `e` on the algebra of a [`WeightMonoid`].
#[derive(Clone, Debug)]
pub struct HomogeneousLnd {
    degree: DualVector,
    kind: LndKind,
    monoid: WeightMonoid,
}

impl HomogeneousLnd {
    /// `∂_e` on `𝕂[σ^∨ ∩ M]` for a Demazure root of `σ` (ray index into `σ.rays()`).
    pub fn toric(sigma: &RationalCone<N>, e: &DualVector) -> Result<Self, LndError> {
        let rho = condition1(sigma.rays(), e).ok_or_else(|| LndError::NotARoot(e.clone()))?;
        Ok(Self::toric_unchecked(
            WeightMonoid::toric(sigma),
            sigma.rays()[rho].clone(),
            e.clone(),
        ))
    }

    pub fn from_root(sigma: &RationalCone<N>, root: &DemazureRoot) -> Result<Self, LndError> {
        Self::toric(sigma, &root.e)
    }

    /// No root check: used to exhibit what goes wrong for non-roots.
    pub fn toric_unchecked(monoid: WeightMonoid, n_rho: LatticeVector, e: DualVector) -> Self {
        Self {
            degree: e,
            kind: LndKind::Toric { n_rho },
            monoid,
        }
    }

    pub fn horizontal(
        monoid: WeightMonoid,
        e: DualVector,
        v0: RationalVector,
        d: BigInt,
        s: BigInt,
    ) -> Self {
        Self {
            degree: e,
            kind: LndKind::Horizontal { v0, d, s },
            monoid,
        }
    }

    pub fn degree(&self) -> &DualVector {
        &self.degree
    }

    pub fn kind(&self) -> &LndKind {
        &self.kind
    }

    pub fn monoid(&self) -> &WeightMonoid {
        &self.monoid
    }

    /// The distinguished ray: `n_ρ`, or `(d·v₀, d)` for the horizontal kind.
    pub fn n_rho(&self) -> LatticeVector {
        match &self.kind {
            LndKind::Toric { n_rho } => n_rho.clone(),
            LndKind::Horizontal { v0, d, .. } => {
                let dq = BigRational::from_integer(d.clone());
                let scaled: Vec<BigInt> =
                    v0.coords().iter().map(|c| (c * &dq).to_integer()).collect();
                IntVector::new(scaled).extended(d.clone())
            }
        }
    }

    /// The degree as a vector of the ambient lattice: `e` or `(e, s)`.
    pub fn full_degree(&self) -> DualVector {
        match &self.kind {
            LndKind::Toric { .. } => self.degree.clone(),
            LndKind::Horizontal { s, .. } => self.degree.extended(s.clone()),
        }
    }

    /// The scalar with `∂(mono) = coefficient·mono'`.
    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        match &self.kind {
            LndKind::Toric { n_rho } => BigRational::from_integer(pairing(n_rho, &mono.m)),
            LndKind::Horizontal { v0, d, .. } => {
                let r = mono.r.clone().unwrap_or_default();
                (rational_pairing(v0, &mono.m) + BigRational::from_integer(r))
                    * BigRational::from_integer(d.clone())
            }
        }
    }

    fn image(&self, mono: &Monomial) -> Monomial {
        match &self.kind {
            LndKind::Toric { .. } => mono.shifted(&self.degree, None),
            LndKind::Horizontal { s, .. } => mono.shifted(&self.degree, Some(s)),
        }
    }

    fn check_member(&self, f: &SemigroupElement) -> Result<(), LndError> {
        for (m, _) in f.terms() {
            if m.r.is_some() != self.monoid.with_t || m.m.rank() != self.monoid.rank() {
                return Err(LndError::AlgebraMismatch);
            }
            if !self.monoid.contains(m) {
                return Err(LndError::NotInAlgebra(m.clone()));
            }
        }
        Ok(())
    }

    pub fn derive(&self, f: &SemigroupElement) -> Result<SemigroupElement, LndError> {
        self.check_member(f)?;
        self.derive_members(f)
    }

    fn derive_members(&self, f: &SemigroupElement) -> Result<SemigroupElement, LndError> {
        let mut out = SemigroupElement::zero();
        for (mono, c) in f.terms() {
            let k = self.coefficient(mono);
            if k.is_zero() {
                continue;
            }
            let to = self.image(mono);
            if !self.monoid.contains(&to) {
                return Err(LndError::WeightEscape {
                    from: mono.clone(),
                    to,
                });
            }
            out.add_term(to, k * c);
        }
        Ok(out)
    }

    /// Step cap for `f`: one more than the largest coefficient functional over
    /// its terms, plus one step of slack, never above the ceiling.
    fn cap(&self, f: &SemigroupElement) -> usize {
        let top = f
            .terms()
            .map(|(m, _)| self.coefficient(m).floor().to_integer())
            .max()
            .unwrap_or_default();
        let top = top.to_usize().unwrap_or(NILPOTENCY_CEILING);
        (top + 2).min(NILPOTENCY_CEILING)
    }

    /// `[f, ∂f, ∂²f, …]` up to the last nonzero power.
    fn powers(&self, f: &SemigroupElement) -> Result<Vec<SemigroupElement>, LndError> {
        self.check_member(f)?;
        let cap = self.cap(f);
        let mut out = Vec::new();
        let mut cur = f.clone();
        while !cur.is_zero() {
            if out.len() >= cap {
                return Err(LndError::NotNilpotent(cap));
            }
            let next = self.derive_members(&cur)?;
            out.push(cur);
            cur = next;
        }
        Ok(out)
    }

    /// Smallest `j` with `∂^j(f) = 0`.
    pub fn nilpotency_index(&self, f: &SemigroupElement) -> Result<usize, LndError> {
        Ok(self.powers(f)?.len())
    }

    /// `exp(s∂)(f) = Σ_j s^j ∂^j(f) / j!`.
    pub fn exp_action(
        &self,
        s: &BigRational,
        f: &SemigroupElement,
    ) -> Result<SemigroupElement, LndError> {
        Ok(self.exp_symbolic(f)?.evaluate(s))
    }

    /// `exp(s∂)(f)` as a polynomial in a formal parameter `s`.
    pub fn exp_symbolic(&self, f: &SemigroupElement) -> Result<SymbolicExpansion, LndError> {
        let mut fact = BigInt::one();
        let mut coefficients = Vec::new();
        for (j, p) in self.powers(f)?.into_iter().enumerate() {
            if j > 0 {
                fact *= BigInt::from(j);
            }
            coefficients.push(p.scale(&BigRational::new(BigInt::one(), fact.clone())));
        }
        Ok(SymbolicExpansion { coefficients })
    }
}

/// `Σ_j s^j·c_j` with algebra elements `c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicExpansion {
    pub coefficients: Vec<SemigroupElement>,
}

impl SymbolicExpansion {
    pub fn evaluate(&self, s: &BigRational) -> SemigroupElement {
        let mut out = SemigroupElement::zero();
        let mut power = BigRational::one();
        for c in &self.coefficients {
            out = out.add(&c.scale(&power));
            power *= s;
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

impl fmt::Display for SymbolicExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let body = if c.term_count() > 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                match j {
                    0 => body,
                    1 => format!("s·{body}"),
                    _ => format!("s^{j}·{body}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn derive(d: &HomogeneousLnd, f: &SemigroupElement) -> Result<SemigroupElement, LndError> {
    d.derive(f)
}

pub fn exp_action(
    d: &HomogeneousLnd,
    s: &BigRational,
    f: &SemigroupElement,
) -> Result<SemigroupElement, LndError> {
    d.exp_action(s, f)
}

pub fn nilpotency_index(d: &HomogeneousLnd, mono: &Monomial) -> Result<usize, LndError> {
    d.nilpotency_index(&SemigroupElement::monomial(
        mono.clone(),
        BigRational::one(),
    ))
}
