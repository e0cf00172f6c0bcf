//! Lattices `N`, `M = Hom(N, ℤ)`, rational cones and exact polyhedral computations.

mod cone;
mod dd;
pub(crate) mod linalg;
mod points;
mod polyhedron;
mod snf;
mod vector;

pub use cone::{dual_cone, faces, Face, RationalCone};
pub use points::{is_bounded, lattice_points, AffineConstraint, CoordinateBox};
pub use polyhedron::{find_integer_point, polyhedron_generators, PolyhedronGenerators};
pub use snf::{extends_to_basis, saturation_basis, smith_normal_form, SmithForm};
pub use vector::{
    ceil, floor, pairing, primitive, rational_pairing, rational_pairing_q, DualVector, IntVector,
    Lattice, LatticeVector, RatVector, RationalDualVector, RationalVector, M, N,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("region is unbounded")]
    UnboundedRegion,
}
