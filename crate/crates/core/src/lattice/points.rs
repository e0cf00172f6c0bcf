//! Integer points of rational polyhedra.
//!
//! Enumeration walks the coordinates in order. The feasible range of the
//! first free coordinate is obtained by Fourier–Motzkin elimination of the
//! others, then each integer value in that range is substituted and the
//! procedure recurses. Results therefore come out in lexicographic order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dd::double_description;
use super::linalg::{to_q, QRow};
use super::vector::{ceil, floor, primitive_direction, IntVector, Lattice, RatVector};
use super::GeometryError;

/// An affine constraint `⟨normal, x⟩ ≥ rhs` (or `= rhs`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConstraint<L: Lattice> {
    pub normal: IntVector<L::Dual>,
    pub rhs: BigInt,
}

impl<L: Lattice> AffineConstraint<L> {
    pub fn new(normal: IntVector<L::Dual>, rhs: BigInt) -> Self {
        Self { normal, rhs }
    }
}

/// Inclusive coordinate box `lo_i ≤ x_i ≤ hi_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateBox {
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
}

impl CoordinateBox {
    /// The cube `[-radius, radius]^rank`.
    pub fn cube(rank: usize, radius: &BigInt) -> Self {
        Self {
            lower: vec![-radius.clone(); rank],
            upper: vec![radius.clone(); rank],
        }
    }

    pub fn new(lower: Vec<BigInt>, upper: Vec<BigInt>) -> Self {
        Self { lower, upper }
    }
}

/// Row `c·x ≥ b` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coeffs: QRow,
    rhs: BigRational,
}

impl Row {
    /// Scale positively so the coefficients form a primitive integer vector.
    fn normalized(self) -> Self {
        if self.coeffs.iter().all(Zero::is_zero) {
            return self;
        }
        let prim = primitive_direction(&self.coeffs);
        // find the positive factor relating the two
        let k = self
            .coeffs
            .iter()
            .zip(&prim)
            .find(|(c, _)| !c.is_zero())
            .map(|(c, p)| BigRational::from_integer(p.clone()) / c)
            .expect("nonzero row");
        Row {
            coeffs: to_q(&prim),
            rhs: self.rhs * k,
        }
    }
}

/// All integer points `x` with `⟨a, x⟩ ≥ b` for the inequalities, `⟨a, x⟩ = b`
/// for the equalities, and inside `bounds` when given, in lexicographic order.
///
/// Without `bounds` the region must be bounded, which is checked exactly: the
/// recession cone `{d : ⟨a, d⟩ ≥ 0, ⟨a', d⟩ = 0}` has to be `{0}`.
pub fn lattice_points<L: Lattice>(
    rank: usize,
    inequalities: &[AffineConstraint<L>],
    equalities: &[AffineConstraint<L>],
    bounds: Option<&CoordinateBox>,
) -> Result<Vec<IntVector<L>>, GeometryError> {
    for c in inequalities.iter().chain(equalities) {
        if c.normal.rank() != rank {
            return Err(GeometryError::RankMismatch {
                expected: rank,
                found: c.normal.rank(),
            });
        }
    }
    if let Some(b) = bounds {
        if b.lower.len() != rank || b.upper.len() != rank {
            return Err(GeometryError::RankMismatch {
                expected: rank,
                found: b.lower.len(),
            });
        }
    } else if !is_bounded::<L>(rank, inequalities, equalities) {
        return Err(GeometryError::UnboundedRegion);
    }

    let mut rows: Vec<Row> = Vec::new();
    for c in inequalities {
        rows.push(Row {
            coeffs: to_q(c.normal.coords()),
            rhs: BigRational::from_integer(c.rhs.clone()),
        });
    }
    for c in equalities {
        let coeffs = to_q(c.normal.coords());
        let rhs = BigRational::from_integer(c.rhs.clone());
        rows.push(Row {
            coeffs: coeffs.iter().map(|x| -x).collect(),
            rhs: -rhs.clone(),
        });
        rows.push(Row { coeffs, rhs });
    }
    if let Some(b) = bounds {
        for i in 0..rank {
            let mut e = vec![BigRational::zero(); rank];
            e[i] = BigRational::one();
            rows.push(Row {
                coeffs: e.clone(),
                rhs: BigRational::from_integer(b.lower[i].clone()),
            });
            e[i] = -BigRational::one();
            rows.push(Row {
                coeffs: e,
                rhs: BigRational::from_integer(-b.upper[i].clone()),
            });
        }
    }

    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(rank);
    enumerate(rows, rank, &mut prefix, &mut out)?;
    Ok(out.into_iter().map(IntVector::new).collect())
}

/// Whether `{x : ⟨a,x⟩ ≥ b, ⟨a',x⟩ = b'}` has trivial recession cone.
pub fn is_bounded<L: Lattice>(
    rank: usize,
    inequalities: &[AffineConstraint<L>],
    equalities: &[AffineConstraint<L>],
) -> bool {
    let ineq: Vec<QRow> = inequalities
        .iter()
        .map(|c| to_q(c.normal.coords()))
        .collect();
    let eq: Vec<QRow> = equalities.iter().map(|c| to_q(c.normal.coords())).collect();
    double_description(rank, &ineq, &eq).is_zero_cone()
}

fn enumerate(
    rows: Vec<Row>,
    remaining: usize,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) -> Result<(), GeometryError> {
    if remaining == 0 {
        if rows.iter().all(|r| !r.rhs.is_positive()) {
            out.push(prefix.clone());
        }
        return Ok(());
    }
    let Some((lo, hi)) = first_coordinate_range(&rows, remaining)? else {
        return Ok(());
    };
    let mut v = ceil(&lo);
    let top = floor(&hi);
    while v <= top {
        let q = BigRational::from_integer(v.clone());
        let sub: Vec<Row> = rows
            .iter()
            .map(|r| Row {
                coeffs: r.coeffs[1..].to_vec(),
                rhs: &r.rhs - &r.coeffs[0] * &q,
            })
            .collect();
        prefix.push(v.clone());
        enumerate(dedup(sub), remaining - 1, prefix, out)?;
        prefix.pop();
        v += 1;
    }
    Ok(())
}

/// Range of `x_0` over the rational polyhedron, or `None` if it is empty.
fn first_coordinate_range(
    rows: &[Row],
    width: usize,
) -> Result<Option<(BigRational, BigRational)>, GeometryError> {
    let mut current: Vec<Row> = rows.to_vec();
    for var in (1..width).rev() {
        current = eliminate(current, var);
    }
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for r in &current {
        let c = &r.coeffs[0];
        if c.is_zero() {
            if r.rhs.is_positive() {
                return Ok(None);
            }
        } else {
            let bound = &r.rhs / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Ok((l <= h).then_some((l, h))),
        _ => Err(GeometryError::UnboundedRegion),
    }
}

/// Fourier–Motzkin elimination of one variable.
fn eliminate(rows: Vec<Row>, var: usize) -> Vec<Row> {
    let (mut keep, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[var].is_zero() {
            keep.push(r);
        } else if r.coeffs[var].is_positive() {
            pos.push(r);
        } else {
            neg.push(r);
        }
    }
    for p in &pos {
        for q in &neg {
            let a = p.coeffs[var].clone();
            let b = -q.coeffs[var].clone();
            // b·p + a·q cancels the variable
            let coeffs: QRow = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(x, y)| &b * x + &a * y)
                .collect();
            let rhs = &b * &p.rhs + &a * &q.rhs;
            keep.push(Row { coeffs, rhs });
        }
    }
    dedup(keep)
}

/// Normalize rows, keep only the tightest right-hand side per direction and
/// drop trivially satisfied rows.
fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut rows: Vec<Row> = rows.into_iter().map(Row::normalized).collect();
    rows.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then(b.rhs.cmp(&a.rhs)));
    let mut out: Vec<Row> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.coeffs.iter().all(Zero::is_zero) && !r.rhs.is_positive() {
            continue;
        }
        if out.last().is_some_and(|l| l.coeffs == r.coeffs) {
            continue;
        }
        out.push(r);
    }
    out
}

/// Integer points in a polyhedron given by rational inequalities, searching
/// only inside `bounds`. Used where the constraint data is rational.
pub(crate) fn rational_lattice_points<L: Lattice>(
    inequalities: &[(RatVector<L::Dual>, BigRational)],
    bounds: &CoordinateBox,
) -> Vec<IntVector<L>> {
    let rank = bounds.lower.len();
    let mut rows: Vec<Row> = inequalities
        .iter()
        .map(|(a, b)| Row {
            coeffs: a.coords().to_vec(),
            rhs: b.clone(),
        })
        .collect();
    for i in 0..rank {
        let mut e = vec![BigRational::zero(); rank];
        e[i] = BigRational::one();
        rows.push(Row {
            coeffs: e.clone(),
            rhs: BigRational::from_integer(bounds.lower[i].clone()),
        });
        e[i] = -BigRational::one();
        rows.push(Row {
            coeffs: e,
            rhs: BigRational::from_integer(-bounds.upper[i].clone()),
        });
    }
    let mut out = Vec::new();
    enumerate(rows, rank, &mut Vec::new(), &mut out).expect("boxed region is bounded");
    out.into_iter().map(IntVector::new).collect()
}
