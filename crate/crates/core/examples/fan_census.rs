//! Build fans, validate them and print their cone census.

use toric_ga::fan::{standard, Fan};

fn describe(name: &str, fan: &Fan) {
    println!(
        "{name:>6}: census {:?}, complete {}, smooth {}, simplicial {}",
        fan.census(),
        fan.is_complete(),
        fan.is_smooth(),
        fan.is_simplicial()
    );
}

fn main() {
    describe("A2", &standard::affine_space(2));
    describe("P2", &standard::projective_space(2));
    describe("P1xP1", &standard::p1_times_p1());
    for a in 0..3 {
        describe(&format!("F{a}"), &standard::hirzebruch(a));
    }

    let p2 = standard::projective_space(2);
    for (i, cone) in p2.cones().iter().enumerate() {
        println!("  {} has orbit dimension {}", cone.id(), p2.orbit_dim(i));
    }

    // Two cones overlapping in their interiors are rejected.
    let bad = Fan::from_i64s(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 2], &[1, 2]]);
    println!("overlapping cones: {}", bad.unwrap_err());
}
