//! Exact computer algebra for the nongraded Hamiltonian Lie algebras
//! `H(l, Gamma)`: the Poisson bracket, derivations, isomorphisms induced by
//! lattice maps, second cohomology and local-finiteness probes.
//!
//! All arithmetic is exact over `Q` or `Q(sqrt d)`.

pub mod error;
pub mod fixtures;
pub mod kernel;
pub mod cohomology;
pub mod derivations;
pub mod isomorphisms;
pub mod linalg;
pub mod locality;
pub mod properties;
pub mod sampling;

pub use error::{Error, Result};
