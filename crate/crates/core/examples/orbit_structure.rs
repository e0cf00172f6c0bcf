//! Orbits of the group generated by a root subgroup and the torus.

use toric_ga::fan::standard;
use toric_ga::lattice::DualVector;
use toric_ga::orbits::{g_invariant_divisors, g_orbit_partition, he_connected_pairs};

fn main() {
    let fan = standard::hirzebruch(1);
    for e in [[0, 1], [1, 0]] {
        let e = DualVector::from_i64s(&e);
        let partition = g_orbit_partition(&fan, &e).unwrap();
        println!("root {}: {} orbits", partition.root, partition.len());
        for orbit in &partition.orbits {
            let ids: Vec<String> = orbit.cones.iter().map(|&i| fan.cone(i).id()).collect();
            println!(
                "  {:<12} dim {} ga-fixed {:<5} stabilizer torus dim {} components {}",
                ids.join(" + "),
                orbit.dim,
                orbit.ga_fixed,
                orbit.stabilizer.torus_dim,
                orbit.stabilizer.torus_component_order
            );
        }
        for pair in he_connected_pairs(&fan, &e).unwrap() {
            println!(
                "  He: {} -> {}",
                fan.cone(pair.lower).id(),
                fan.cone(pair.upper).id()
            );
        }
        let divisors: Vec<String> = g_invariant_divisors(&fan, &e)
            .unwrap()
            .iter()
            .map(|&i| fan.cone(i).id())
            .collect();
        println!("  invariant divisors: {}", divisors.join(", "));
    }
}
