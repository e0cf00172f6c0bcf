//! Vertex/recession description of rational polyhedra via homogenization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dd::double_description;
use super::linalg::QRow;
use super::points::{rational_lattice_points, CoordinateBox};
use super::vector::{IntVector, Lattice, RatVector};

/// Minkowski–Weyl decomposition `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug)]
pub struct PolyhedronGenerators<L: Lattice> {
    pub vertices: Vec<RatVector<L>>,
    pub rays: Vec<IntVector<L>>,
    pub lineality: Vec<IntVector<L>>,
}

impl<L: Lattice> PolyhedronGenerators<L> {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

/// Generators of `{x : ⟨a, x⟩ ≥ b for (a, b) in inequalities, = for equalities}`.
///
/// The cone `{(x, t) : ⟨a, x⟩ − b t ≥ 0, t ≥ 0}` is computed by double
/// description; its rays with `t > 0` give the vertices and those with
/// `t = 0` the recession cone.
pub fn polyhedron_generators<L: Lattice>(
    rank: usize,
    inequalities: &[(RatVector<L::Dual>, BigRational)],
    equalities: &[(RatVector<L::Dual>, BigRational)],
) -> PolyhedronGenerators<L> {
    let homogenize = |(a, b): &(RatVector<L::Dual>, BigRational)| -> QRow {
        let mut row = a.coords().to_vec();
        row.push(-b.clone());
        row
    };
    let mut ineq: Vec<QRow> = inequalities.iter().map(homogenize).collect();
    let mut t_pos = vec![BigRational::zero(); rank + 1];
    t_pos[rank] = BigRational::from_integer(1.into());
    ineq.push(t_pos);
    let eq: Vec<QRow> = equalities.iter().map(homogenize).collect();
    let gens = double_description(rank + 1, &ineq, &eq);

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in gens.rays {
        let t = r[rank].clone();
        if t.is_positive() {
            let tq = BigRational::from_integer(t);
            vertices.push(RatVector::new(
                r[..rank]
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()) / &tq)
                    .collect(),
            ));
        } else {
            rays.push(IntVector::new(r[..rank].to_vec()));
        }
    }
    // lineality lies in t = 0 because t ≥ 0 is one of the constraints
    let lineality = gens
        .lineality
        .into_iter()
        .map(|l| IntVector::new(l[..rank].to_vec()))
        .collect();
    vertices.sort();
    PolyhedronGenerators {
        vertices,
        rays,
        lineality,
    }
}

/// An integer point of the polyhedron, if one exists.
///
/// Any integer point can be translated by integer combinations of the
/// recession generators into `conv(vertices) + {Σ μ_i c_i : 0 ≤ μ_i ≤ 1}`,
/// so searching a box around that bounded set decides feasibility exactly.
pub fn find_integer_point<L: Lattice>(
    rank: usize,
    inequalities: &[(RatVector<L::Dual>, BigRational)],
    equalities: &[(RatVector<L::Dual>, BigRational)],
) -> Option<IntVector<L>> {
    let gens = polyhedron_generators::<L>(rank, inequalities, equalities);
    if gens.is_empty() {
        return None;
    }
    let mut lower = vec![BigInt::zero(); rank];
    let mut upper = vec![BigInt::zero(); rank];
    for i in 0..rank {
        let lo = gens
            .vertices
            .iter()
            .map(|v| v.coords()[i].floor().to_integer())
            .min()
            .expect("nonempty");
        let hi = gens
            .vertices
            .iter()
            .map(|v| v.coords()[i].ceil().to_integer())
            .max()
            .expect("nonempty");
        let mut spread_lo = BigInt::zero();
        let mut spread_hi = BigInt::zero();
        for c in gens.rays.iter().chain(&gens.lineality) {
            let x = &c.coords()[i];
            if x.is_positive() {
                spread_hi += x;
            } else {
                spread_lo += x;
            }
        }
        for l in &gens.lineality {
            let x = &l.coords()[i];
            if x.is_positive() {
                spread_lo -= x;
            } else {
                spread_hi -= x;
            }
        }
        lower[i] = lo + spread_lo;
        upper[i] = hi + spread_hi;
    }
    let mut all: Vec<(RatVector<L::Dual>, BigRational)> = inequalities.to_vec();
    for (a, b) in equalities {
        all.push((a.clone(), b.clone()));
        all.push((a.neg(), -b.clone()));
    }
    rational_lattice_points::<L>(&all, &CoordinateBox::new(lower, upper))
        .into_iter()
        .next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{M, N};

    fn c(a: &[i64], b: i64) -> (RatVector<N>, BigRational) {
        (RatVector::from_i64s(a), BigRational::from_integer(b.into()))
    }

    #[test]
    fn quadrant_has_one_vertex_two_rays() {
        let g = polyhedron_generators::<M>(2, &[c(&[1, 0], 1), c(&[0, 1], 2)], &[]);
        assert_eq!(g.vertices, vec![RatVector::from_i64s(&[1, 2])]);
        assert_eq!(g.rays.len(), 2);
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn empty_polyhedron() {
        let g = polyhedron_generators::<M>(1, &[c(&[1], 1), c(&[-1], 0)], &[]);
        assert!(g.is_empty());
    }

    #[test]
    fn unbounded_line_without_integer_points() {
        // 2x = 1 has rational but no integer solutions, for any y
        let eq = [c(&[2, 0], 1)];
        assert!(find_integer_point::<M>(2, &[], &eq).is_none());
        let eq = [c(&[2, 0], 2)];
        assert!(find_integer_point::<M>(2, &[], &eq).is_some());
    }

    #[test]
    fn thin_unbounded_strip() {
        // 3y ≥ x + 1, 3y ≤ x + 1 + 1/2 ... scaled: 6y - 2x ≥ 2, 2x - 6y ≥ -3, x ≥ 0
        let ineq = [c(&[-2, 6], 2), c(&[2, -6], -3), c(&[1, 0], 0)];
        let p = find_integer_point::<M>(2, &ineq, &[]).unwrap();
        let (x, y) = (&p.coords()[0], &p.coords()[1]);
        assert!(BigInt::from(6) * y - BigInt::from(2) * x >= BigInt::from(2));
        assert!(BigInt::from(2) * x - BigInt::from(6) * y >= BigInt::from(-3));
    }
}
