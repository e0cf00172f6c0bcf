//! Coherent pairs and the horizontal derivations they define.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use toric_ga::ah::{
    coherent_check, horizontal_lnd, ColoredDivisor, Curve, CurvePoint, PolyhedralDivisor,
    TailedPolyhedron,
};
use toric_ga::lattice::{DualVector, RationalCone, RationalVector, N};
use toric_ga::lnd::{Monomial, SemigroupElement};

fn main() {
    // Δ_0 = 1/2 + ℚ≥0 on the affine line.
    let tail = RationalCone::<N>::from_i64s(1, &[&[1]]).unwrap();
    let half = RationalVector::from_fractions(&[(1, 2)]);
    let divisor = PolyhedralDivisor::new(
        Curve::A1,
        tail.clone(),
        [(
            CurvePoint::zero(),
            TailedPolyhedron::point(half.clone(), &tail),
        )],
    )
    .unwrap();
    let colored = ColoredDivisor::new(
        divisor,
        CurvePoint::zero(),
        None,
        [(CurvePoint::zero(), half)],
    )
    .unwrap();

    for e in [0, 1, 2] {
        match coherent_check(&colored, &DualVector::from_i64s(&[e])) {
            Ok(pair) => {
                println!("e = {e}: coherent, d = {}, s = {}", pair.d, pair.s);
                let h = horizontal_lnd(&pair).unwrap();
                for (m, r) in [(0, 0), (1, 0), (2, 1), (4, 2)] {
                    let f = SemigroupElement::monomial(
                        Monomial::with_t(DualVector::from_i64s(&[m]), BigInt::from(r)),
                        BigRational::one(),
                    );
                    if h.lnd.monoid().contains(f.terms().next().unwrap().0) {
                        println!(
                            "  ∂({f}) = {}, nilpotency index {}",
                            h.lnd.derive(&f).unwrap(),
                            h.lnd.nilpotency_index(&f).unwrap()
                        );
                    }
                }
            }
            Err(report) => {
                for v in &report.violations {
                    println!("e = {e}: condition ({}) fails: {}", v.condition, v.message);
                }
            }
        }
    }
}
