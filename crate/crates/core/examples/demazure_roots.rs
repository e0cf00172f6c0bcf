//! Demazure roots of complete and affine fans.

use num_bigint::BigInt;
use toric_ga::fan::standard;
use toric_ga::lattice::DualVector;
use toric_ga::roots::{roots_of_fan, verify_root};

fn main() {
    let p2 = standard::projective_space(2);
    let roots = roots_of_fan(&p2, None).unwrap();
    println!(
        "P2 has {} roots (complete: {})",
        roots.roots.len(),
        roots.complete
    );
    for r in &roots.roots {
        println!("  {r}");
    }

    for a in 0..4 {
        let fa = standard::hirzebruch(a);
        let n = roots_of_fan(&fa, None).unwrap().roots.len();
        println!("F{a}: {n} roots");
    }

    // The root regions of the affine plane are unbounded, so a bound is needed.
    let a2 = standard::affine_space(2);
    println!("A2 without bound: {}", roots_of_fan(&a2, None).unwrap_err());
    let bounded = roots_of_fan(&a2, Some(&BigInt::from(3))).unwrap();
    println!(
        "A2 with bound 3: {} roots, unbounded rays {:?}",
        bounded.roots.len(),
        bounded.unbounded_rays
    );

    match verify_root(&p2, &DualVector::from_i64s(&[1, 1])) {
        Ok(r) => println!("(1,1) is a root: {r}"),
        Err(e) => println!("(1,1) is not a root: {e}"),
    }
}
