mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toric_ga::ah::{
    degree_zero_normalize, ColoredDivisor, Curve, CurvePoint, PolyhedralDivisor, TailedPolyhedron,
    WeightDim,
};
use toric_ga::lattice::{RationalCone, RationalVector, N};

fn random_tail(rng: &mut ChaCha8Rng, n: usize) -> RationalCone<N> {
    loop {
        let gens: Vec<Vec<i64>> = (0..n + rng.gen_range(0..2))
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=3)).collect())
            .collect();
        let refs: Vec<&[i64]> = gens.iter().map(Vec::as_slice).collect();
        if let Ok(c) = RationalCone::<N>::from_i64s(n, &refs) {
            if c.dim() == n && c.is_strongly_convex() {
                return c;
            }
        }
    }
}

/// A rational point in the relative interior of `σ`.
fn interior_point(rng: &mut ChaCha8Rng, sigma: &RationalCone<N>) -> RationalVector {
    sigma
        .rays()
        .iter()
        .fold(RationalVector::zero(sigma.rank()), |acc, r| {
            acc.add(
                &r.to_rational()
                    .scale(&q(rng.gen_range(1..=4), rng.gen_range(1..=3))),
            )
        })
}

fn random_int(rng: &mut ChaCha8Rng, n: usize) -> RationalVector {
    RationalVector::new(
        (0..n)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3..=3))))
            .collect(),
    )
}

fn random_polyhedron(rng: &mut ChaCha8Rng, sigma: &RationalCone<N>) -> TailedPolyhedron {
    let n = sigma.rank();
    let pts: Vec<RationalVector> = (0..rng.gen_range(1..=3))
        .map(|_| {
            RationalVector::new(
                (0..n)
                    .map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
                    .collect(),
            )
        })
        .collect();
    TailedPolyhedron::new(pts, sigma.clone()).unwrap()
}

/// Proper on `ℙ¹`: translates of `σ` at finite points summing to zero plus a
/// polyhedron strictly inside `σ` at `∞`.
fn proper_p1(
    rng: &mut ChaCha8Rng,
    sigma: &RationalCone<N>,
) -> (PolyhedralDivisor, Vec<(CurvePoint, RationalVector)>) {
    let n = sigma.rank();
    let k = rng.gen_range(1..=3);
    let mut shifts: Vec<RationalVector> = (0..k).map(|_| random_int(rng, n)).collect();
    let total = shifts.iter().fold(RationalVector::zero(n), |a, v| a.add(v));
    shifts.push(total.neg());
    let mut marks: Vec<(CurvePoint, RationalVector)> = shifts
        .into_iter()
        .enumerate()
        .map(|(i, v)| (CurvePoint::int(i as i64), v))
        .collect();
    let at_inf: Vec<RationalVector> = (0..rng.gen_range(1..=2))
        .map(|_| interior_point(rng, sigma))
        .collect();
    let mut points: Vec<(CurvePoint, TailedPolyhedron)> = marks
        .iter()
        .map(|(z, v)| (z.clone(), TailedPolyhedron::point(v.clone(), sigma)))
        .collect();
    points.push((
        CurvePoint::Infinity,
        TailedPolyhedron::new(at_inf, sigma.clone()).unwrap(),
    ));
    marks.retain(|(_, v)| !v.is_zero());
    (
        PolyhedralDivisor::new(Curve::P1, sigma.clone(), points).unwrap(),
        marks,
    )
}

#[test]
fn h_is_concave_and_homogeneous() {
    let mut rng = rng(21);
    for _ in 0..150 {
        let n = rng.gen_range(2..=3);
        let sigma = random_tail(&mut rng, n);
        let points: Vec<(CurvePoint, TailedPolyhedron)> = (0..rng.gen_range(1..=3))
            .map(|i| (CurvePoint::int(i), random_polyhedron(&mut rng, &sigma)))
            .collect();
        let d = PolyhedralDivisor::new(Curve::A1, sigma.clone(), points).unwrap();
        let omega = d.tail().clone();
        let a = random_weight(&mut rng, &omega, 4);
        let b = random_weight(&mut rng, &omega, 4);
        let k = rng.gen_range(0..=5);
        let ha = d.evaluate(&a).unwrap();
        let hb = d.evaluate(&b).unwrap();
        let hab = d.evaluate(&a.add(&b)).unwrap();
        let hka = d.evaluate(&a.scale(&BigInt::from(k))).unwrap();
        for i in 0..ha.len() {
            assert!(
                hab[i].1 >= &ha[i].1 + &hb[i].1,
                "h not concave at {}",
                ha[i].0
            );
            assert_eq!(
                hka[i].1,
                &ha[i].1 * BigRational::from_integer(BigInt::from(k))
            );
        }
    }
}

#[test]
fn principal_shift_preserves_weight_dims() {
    let mut rng = rng(22);
    for _ in 0..100 {
        let sigma = random_tail(&mut rng, 2);
        let (d, _) = proper_p1(&mut rng, &sigma);
        assert!(d.is_proper());
        let v = random_int(&mut rng, 2);
        let (z, w) = (CurvePoint::int(7), CurvePoint::int(0));
        let shifted: Vec<(CurvePoint, TailedPolyhedron)> = [
            (z.clone(), d.delta(&z).translate(&v)),
            (w.clone(), d.delta(&w).translate(&v.neg())),
        ]
        .into_iter()
        .chain(
            d.support()
                .filter(|(p, _)| **p != z && **p != w)
                .map(|(p, t)| (p.clone(), t.clone())),
        )
        .collect();
        let e = PolyhedralDivisor::new(Curve::P1, sigma.clone(), shifted).unwrap();
        for _ in 0..10 {
            let m = random_weight(&mut rng, &d.tail().clone(), 6);
            assert_eq!(
                d.weight_dim(&m).unwrap(),
                e.weight_dim(&m).unwrap(),
                "weight {m}"
            );
        }
    }
}

#[test]
fn normalization_is_idempotent_and_preserves_weights() {
    let mut rng = rng(23);
    let mut normalized = 0;
    for _ in 0..100 {
        let sigma = random_tail(&mut rng, 2);
        let (d, marks) = proper_p1(&mut rng, &sigma);
        let z_inf = CurvePoint::Infinity;
        let c = ColoredDivisor::new(d.clone(), CurvePoint::zero(), Some(z_inf), marks).unwrap();
        let Ok(n) = degree_zero_normalize(&c) else {
            continue;
        };
        normalized += 1;
        assert!(n.divisor.is_normalized());
        let again = degree_zero_normalize(&n.colored).unwrap();
        assert!(again.mobius.is_identity());
        assert_eq!(again.divisor, n.divisor);
        for _ in 0..10 {
            let m = random_weight(&mut rng, &sigma, 6);
            assert_eq!(
                d.weight_dim(&m).unwrap(),
                n.divisor.weight_dim(&m).unwrap(),
                "weight {m}"
            );
        }
    }
    assert!(
        normalized >= 50,
        "only {normalized} colored divisors admitted a degree-zero derivation"
    );
}

#[test]
fn affine_translates_normalize_to_trivial() {
    let mut rng = rng(24);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let sigma = random_tail(&mut rng, n);
        let marks: Vec<(CurvePoint, RationalVector)> = (0..rng.gen_range(1..=3))
            .map(|i| (CurvePoint::int(i), random_int(&mut rng, n)))
            .collect();
        let points = marks
            .iter()
            .map(|(z, v)| (z.clone(), TailedPolyhedron::point(v.clone(), &sigma)));
        let d = PolyhedralDivisor::new(Curve::A1, sigma.clone(), points).unwrap();
        let c = ColoredDivisor::new(d, CurvePoint::zero(), None, marks).unwrap();
        let normal = degree_zero_normalize(&c).unwrap();
        assert!(normal.divisor.is_trivial());
        let m = random_weight(&mut rng, &sigma, 4);
        let WeightDim::FreeRankOne { shifts } = normal.divisor.weight_dim(&m).unwrap() else {
            panic!("A¹ is affine")
        };
        assert!(shifts.iter().all(|(_, s)| s.is_zero()));
    }
}
