use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::GeometryError;

/// Marker for one of the two mutually dual lattices.
///
/// Vectors are tagged with their lattice so that the pairing can only be
/// formed between an element of `N` and an element of `M`.
pub trait Lattice:
    Copy
    + Clone
    + fmt::Debug
    + Default
    + PartialEq
    + Eq
    + PartialOrd
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
{
    type Dual: Lattice<Dual = Self>;
    const NAME: &'static str;
}

/// Lattice of one-parameter subgroups.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct N;

/// Character lattice.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct M;

impl Lattice for N {
    type Dual = M;
    const NAME: &'static str = "N";
}

impl Lattice for M {
    type Dual = N;
    const NAME: &'static str = "M";
}

/// An integer point of a lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector<L: Lattice> {
    coords: Vec<BigInt>,
    _lattice: PhantomData<L>,
}

/// Point of `N`.
pub type LatticeVector = IntVector<N>;
/// Point of `M`.
pub type DualVector = IntVector<M>;

/// A point of `L ⊗ ℚ`. Entries are kept reduced with positive denominators,
/// which `BigRational` guarantees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector<L: Lattice> {
    coords: Vec<BigRational>,
    _lattice: PhantomData<L>,
}

/// Point of `N_ℚ`.
pub type RationalVector = RatVector<N>;
/// Point of `M_ℚ`.
pub type RationalDualVector = RatVector<M>;

impl<L: Lattice> IntVector<L> {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self {
            coords,
            _lattice: PhantomData,
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![BigInt::zero(); rank])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn to_rational(&self) -> RatVector<L> {
        RatVector::new(
            self.coords
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coords.iter().map(|c| c * k).collect())
    }

    /// Append a coordinate, e.g. to pass from `N` to `N ⊕ ℤ`.
    pub fn extended(&self, last: BigInt) -> Self {
        let mut coords = self.coords.clone();
        coords.push(last);
        Self::new(coords)
    }
}

impl<L: Lattice> RatVector<L> {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self {
            coords,
            _lattice: PhantomData,
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Build from `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![BigRational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// The integer vector with the same coordinates, if all are integers.
    pub fn to_integral(&self) -> Option<IntVector<L>> {
        self.is_integral()
            .then(|| IntVector::new(self.coords.iter().map(|c| c.to_integer()).collect()))
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn extended(&self, last: BigRational) -> Self {
        let mut coords = self.coords.clone();
        coords.push(last);
        Self::new(coords)
    }

    /// Drop the last coordinate.
    pub fn truncated(&self) -> Self {
        Self::new(self.coords[..self.coords.len() - 1].to_vec())
    }
}

impl<L: Lattice> From<&IntVector<L>> for RatVector<L> {
    fn from(v: &IntVector<L>) -> Self {
        v.to_rational()
    }
}

/// `⟨a, b⟩` for integer vectors of dual lattices.
pub fn pairing<L: Lattice>(a: &IntVector<L>, b: &IntVector<L::Dual>) -> BigInt {
    debug_assert_eq!(a.rank(), b.rank());
    a.coords.iter().zip(&b.coords).map(|(x, y)| x * y).sum()
}

/// `⟨a, b⟩` for a rational vector against an integer vector of the dual lattice.
pub fn rational_pairing<L: Lattice>(a: &RatVector<L>, b: &IntVector<L::Dual>) -> BigRational {
    debug_assert_eq!(a.rank(), b.rank());
    a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| x * y)
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// `⟨a, b⟩` for two rational vectors of dual lattices.
pub fn rational_pairing_q<L: Lattice>(a: &RatVector<L>, b: &RatVector<L::Dual>) -> BigRational {
    debug_assert_eq!(a.rank(), b.rank());
    a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| x * y)
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// The unique primitive integer vector on the ray `ℚ≥0 · v`.
pub fn primitive<L: Lattice>(v: &RatVector<L>) -> Result<IntVector<L>, GeometryError> {
    if v.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    Ok(IntVector::new(primitive_direction(&v.coords)))
}

/// Scale a nonzero rational row to a primitive integer row with the same sign.
pub(crate) fn primitive_direction(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = row.iter().map(|c| (c * &lcm).to_integer()).collect();
    primitive_int(ints)
}

pub(crate) fn primitive_int(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    ints
}

impl<L: Lattice> fmt::Debug for IntVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", L::NAME, self)
    }
}

impl<L: Lattice> fmt::Display for IntVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<L: Lattice> fmt::Debug for RatVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_Q{}", L::NAME, self)
    }
}

impl<L: Lattice> fmt::Display for RatVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `⌊q⌋` for a rational.
pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// `⌈q⌉` for a rational.
pub fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn primitive_divides_by_gcd() {
        let v = RationalVector::from_i64s(&[2, 4]);
        assert_eq!(primitive(&v).unwrap(), LatticeVector::from_i64s(&[1, 2]));
        let v = RationalVector::from_i64s(&[1, 0]);
        assert_eq!(primitive(&v).unwrap(), LatticeVector::from_i64s(&[1, 0]));
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = RationalVector::from_fractions(&[(-3, 2), (9, 4)]);
        let p = primitive(&v).unwrap();
        assert_eq!(p, LatticeVector::from_i64s(&[-2, 3]));
        assert!(p.is_primitive());
        // positive rational multiple of the input
        let ratio = &p.to_rational().coords()[0] / &v.coords()[0];
        assert!(ratio.is_positive());
        assert_eq!(p.to_rational(), v.scale(&ratio));
    }

    #[test]
    fn primitive_rejects_zero() {
        assert_eq!(
            primitive(&RationalVector::zero(3)),
            Err(GeometryError::ZeroVector)
        );
    }

    #[test]
    fn pairing_is_bilinear() {
        let n1 = LatticeVector::from_i64s(&[1, -2, 3]);
        let n2 = LatticeVector::from_i64s(&[4, 0, -1]);
        let e = DualVector::from_i64s(&[2, 5, 7]);
        let a = BigInt::from(-3);
        let lhs = pairing(&n1.scale(&a).add(&n2), &e);
        let rhs = &a * pairing(&n1, &e) + pairing(&n2, &e);
        assert_eq!(lhs, rhs);
    }
}
