pub mod ah;
pub mod automorphisms;
pub mod cli;
pub mod fan;
pub mod io;
pub mod lattice;
pub mod lnd;
pub mod orbits;
pub mod roots;
