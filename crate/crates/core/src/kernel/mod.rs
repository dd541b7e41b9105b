//! Shapes, lattices, elements and the bracket.

mod bracket;
mod element;
mod lattice;
mod scalar;
mod shape;
mod vector;

pub use bracket::{
    apply_operator, bracket_defining, bracket_structural, monomial_stats, pi_component, pi_map, set_membership,
    OperatorKind, SetKind,
};
pub(crate) use bracket::pi_unchecked;
pub use element::{same_algebra, Algebra, Element};
pub(crate) use element::add_term;
pub use lattice::{Field, Lattice};
pub use scalar::{is_valid_radicand, ParseScalarError, Scalar};
pub use shape::{BracketRanges, Shape};
pub use vector::{GroupVector, Key, MultiIndex};
