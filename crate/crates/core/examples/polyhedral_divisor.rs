//! Polyhedral divisors on the projective line: evaluation, weight spaces,
//! normal form and toric realization.

use toric_ga::ah::{
    degree_zero_normalize, toric_realization, ColoredDivisor, Curve, CurvePoint, PolyhedralDivisor,
    TailedPolyhedron,
};
use toric_ga::lattice::{DualVector, RationalCone, RationalVector, N};

fn main() {
    let tail = RationalCone::<N>::from_i64s(1, &[&[1]]).unwrap();
    let at = |v: i64| TailedPolyhedron::point(RationalVector::from_i64s(&[v]), &tail);
    let divisor = PolyhedralDivisor::new(
        Curve::P1,
        tail.clone(),
        [(CurvePoint::int(2), at(3)), (CurvePoint::int(5), at(-2))],
    )
    .unwrap();
    println!("proper: {}", divisor.is_proper());
    for m in 0..4 {
        let m = DualVector::from_i64s(&[m]);
        let h: Vec<String> = divisor
            .evaluate(&m)
            .unwrap()
            .iter()
            .map(|(z, h)| format!("h_{z} = {h}"))
            .collect();
        println!(
            "m = {m}: {}, weight dim {:?}",
            h.join(", "),
            divisor.weight_dim(&m).unwrap()
        );
    }

    let colored = ColoredDivisor::new(
        divisor,
        CurvePoint::int(2),
        Some(CurvePoint::int(5)),
        [(CurvePoint::int(2), RationalVector::from_i64s(&[3]))],
    )
    .unwrap();
    let normal = degree_zero_normalize(&colored).unwrap();
    println!(
        "normal form via {}: Δ_∞ vertices {:?}",
        normal.mobius,
        normal
            .divisor
            .delta(&CurvePoint::Infinity)
            .vertices()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    let toric = toric_realization(&normal.divisor).unwrap();
    println!(
        "toric cone rays: {:?}, root {}",
        toric
            .cone
            .rays()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        toric.root
    );
    let m = DualVector::from_i64s(&[2]);
    println!(
        "slices over m = {m}: {:?}, weight dim {:?}",
        toric.slice_count(&m),
        normal.divisor.weight_dim(&m).unwrap()
    );
}
