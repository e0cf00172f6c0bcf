//! Fixture loading and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_ga::fan::Fan;
use toric_ga::io::parse_fan;
use toric_ga::lattice::{pairing, DualVector, LatticeVector, RationalCone, N};
use toric_ga::lnd::{Monomial, SemigroupElement};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn load_fan(name: &str) -> Fan {
    let text = std::fs::read_to_string(fixture(&format!("fans/{name}.json"))).unwrap();
    parse_fan(&text).unwrap().build().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dv(v: &[i64]) -> DualVector {
    DualVector::from_i64s(v)
}

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// All integer vectors in `[-r, r]^n`.
pub fn cube(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn pair(ray: &LatticeVector, e: &[i64]) -> i64 {
    ray.to_i64s()
        .unwrap()
        .iter()
        .zip(e)
        .map(|(a, b)| a * b)
        .sum()
}

/// Roots straight from the definition, over a coordinate box. Assumes a
/// simplicial fan, so `cone(σ, ρ)` is in the fan exactly when its ray set is.
pub fn brute_force_roots(fan: &Fan, radius: i64) -> Vec<Vec<i64>> {
    let rays = fan.rays();
    let ray_sets: Vec<Vec<usize>> = fan.cones().iter().map(|c| c.ray_indices.clone()).collect();
    let mut out = Vec::new();
    for e in cube(fan.rank(), radius) {
        let p: Vec<i64> = rays.iter().map(|r| pair(r, &e)).collect();
        let minus: Vec<usize> = (0..p.len()).filter(|&i| p[i] == -1).collect();
        if minus.len() != 1 || p.iter().any(|&x| x < -1) {
            continue;
        }
        let rho = minus[0];
        let closed = ray_sets
            .iter()
            .filter(|s| s.iter().all(|&i| p[i] == 0))
            .all(|s| {
                let mut t = s.clone();
                t.push(rho);
                t.sort_unstable();
                ray_sets.contains(&t)
            });
        if closed {
            out.push(e);
        }
    }
    out.sort();
    out
}

/// Number of cones on which `e` vanishes, by pairing with every ray.
pub fn vanishing_cones(fan: &Fan, e: &[i64]) -> usize {
    fan.cones()
        .iter()
        .filter(|c| c.ray_indices.iter().all(|&i| pair(&fan.rays()[i], e) == 0))
        .count()
}

/// A random lattice point of `σ^∨` in `[0, k]^n`, tested against the rays.
pub fn random_weight(rng: &mut ChaCha8Rng, sigma: &RationalCone<N>, k: i64) -> DualVector {
    loop {
        let m = DualVector::new(
            (0..sigma.rank())
                .map(|_| BigInt::from(rng.gen_range(-k..=k)))
                .collect(),
        );
        if sigma
            .rays()
            .iter()
            .all(|r| pairing(r, &m) >= BigInt::from(0))
        {
            return m;
        }
    }
}

pub fn random_coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    let mut n = rng.gen_range(-4..=4);
    if n == 0 {
        n = 1;
    }
    q(n, rng.gen_range(1..=3))
}

/// A nonzero element with one to three terms and weights in `σ^∨`.
pub fn random_element(rng: &mut ChaCha8Rng, sigma: &RationalCone<N>, k: i64) -> SemigroupElement {
    loop {
        let terms = rng.gen_range(1..=3);
        let f = SemigroupElement::from_terms((0..terms).map(|_| {
            (
                Monomial::character(random_weight(rng, sigma, k)),
                random_coefficient(rng),
            )
        }));
        if !f.is_zero() {
            return f;
        }
    }
}
