//! Fan automorphisms and the classes of roots they identify.

use num_bigint::BigInt;
use toric_ga::automorphisms::{classify_roots, fan_automorphisms};
use toric_ga::fan::standard;
use toric_ga::roots::roots_of_fan;

fn main() {
    let cases = [
        ("P2", standard::projective_space(2), None),
        ("F1", standard::hirzebruch(1), None),
        ("P1xP1", standard::p1_times_p1(), None),
        ("A2", standard::affine_space(2), Some(BigInt::from(3))),
    ];
    for (name, fan, bound) in cases {
        let group = fan_automorphisms(&fan).unwrap();
        let roots = roots_of_fan(&fan, bound.as_ref()).unwrap().roots;
        let classes = classify_roots(&fan, &roots).unwrap();
        println!(
            "{name}: |Aut| = {}, {} roots in {} classes",
            group.len(),
            roots.len(),
            classes.len()
        );
        for class in classes {
            let es: Vec<String> = class.iter().map(|r| r.e.to_string()).collect();
            println!("  {}", es.join(" ~ "));
        }
    }
}
