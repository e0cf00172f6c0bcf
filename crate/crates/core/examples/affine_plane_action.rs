//! Additive group actions on the affine plane from its roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use toric_ga::lattice::{DualVector, RationalCone, N};
use toric_ga::lnd::{HomogeneousLnd, SemigroupElement};

fn main() {
    let sigma = RationalCone::<N>::from_i64s(2, &[&[1, 0], &[0, 1]]).unwrap();
    let x = SemigroupElement::character(&[1, 0]);
    let y = SemigroupElement::character(&[0, 1]);

    for k in 0..4 {
        // ∂ = y^k ∂/∂x
        let d = HomogeneousLnd::toric(&sigma, &DualVector::from_i64s(&[-1, k])).unwrap();
        println!(
            "e = (-1,{k}): x ↦ {}, y ↦ {}",
            d.exp_symbolic(&x).unwrap(),
            d.exp_symbolic(&y).unwrap()
        );
    }

    let d = HomogeneousLnd::toric(&sigma, &DualVector::from_i64s(&[-1, 2])).unwrap();
    let f = x.mul(&x).add(&y);
    println!("∂({f}) = {}", d.derive(&f).unwrap());
    println!(
        "nilpotency index of {f}: {}",
        d.nilpotency_index(&f).unwrap()
    );

    let s = BigRational::from_integer(BigInt::from(2));
    let t = BigRational::new(BigInt::from(-1), BigInt::from(3));
    let sequential = d.exp_action(&t, &d.exp_action(&s, &f).unwrap()).unwrap();
    let combined = d.exp_action(&(&s + &t), &f).unwrap();
    println!("exp(t∂)exp(s∂) = exp((s+t)∂): {}", sequential == combined);
}
