//! Dual cones, faces, lattice points and Smith normal form.

use num_bigint::BigInt;
use toric_ga::lattice::{
    lattice_points, smith_normal_form, AffineConstraint, CoordinateBox, RationalCone, M, N,
};

fn main() {
    // The cone over the rays (1,0) and (1,2): an A1 singularity.
    let sigma = RationalCone::<N>::from_i64s(2, &[&[1, 0], &[1, 2]]).unwrap();
    let dual = sigma.dual();
    println!(
        "σ  rays: {:?}",
        sigma
            .rays()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!(
        "σ∨ rays: {:?}",
        dual.rays()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("σ∨∨ = σ: {}", dual.dual().same_cone(&sigma));

    for face in sigma.faces().unwrap() {
        println!("face of dim {} on rays {:?}", face.dim, face.ray_indices);
    }

    // Hilbert basis candidates: lattice points of σ∨ in a small box.
    let constraints: Vec<AffineConstraint<M>> = sigma
        .rays()
        .iter()
        .map(|r| AffineConstraint::new(r.clone(), BigInt::from(0)))
        .collect();
    let bx = CoordinateBox::cube(2, &BigInt::from(2));
    let pts = lattice_points(2, &constraints, &[], Some(&bx)).unwrap();
    println!("{} points of σ∨ with |coordinates| ≤ 2", pts.len());

    let snf = smith_normal_form(&[
        vec![BigInt::from(1), BigInt::from(1)],
        vec![BigInt::from(0), BigInt::from(2)],
    ]);
    println!(
        "invariant factors of the ray matrix: {:?}",
        snf.invariant_factors
    );
}
