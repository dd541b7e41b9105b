use thiserror::Error;

use crate::kernel::GroupVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape must have at least one nonzero block size")]
    ZeroShape,
    #[error("index {p} out of range 1..={max}")]
    IndexOutOfRange { p: usize, max: usize },
    #[error("vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("radicand {0} is not a square-free integer other than 0 and 1")]
    BadRadicand(i64),
    #[error("coordinate lies outside the working field")]
    FieldMismatch,
    #[error("lattice basis is linearly dependent over the rationals")]
    DependentBasis,
    #[error("basis vector {vector} has a nonzero coordinate at index {p}, which must vanish")]
    GradingViolation { vector: usize, p: usize },
    #[error("sigma_{p} is not in the lattice")]
    SigmaNotInLattice { p: usize },
    #[error("eps_{q} is not in the lattice")]
    EpsilonNotInLattice { q: usize },
    #[error("no nonzero multiple of eps_{r} lies in the lattice")]
    NoEpsilonMultiple { r: usize },
    #[error("exponent {0:?} is not in the lattice")]
    NotInLattice(GroupVector),
    #[error("t_{p} is not allowed in this algebra")]
    ForbiddenIndex { p: usize },
    #[error("operands belong to different algebras")]
    MixedAlgebra,
    #[error("operands mix the algebra and its extension")]
    MixedExtension,
    #[error("element does not lie in the restricted algebra")]
    NotRestricted,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("homomorphism does not vanish on sigma_{p}")]
    NotHomPlus { p: usize },
    #[error("d0' exists only when iota_7 = l_1")]
    DPrimeUnavailable,
    #[error("probe system singular: {0}")]
    ProbeSingular(String),
    #[error("character not representable in the working field: {0}")]
    CharacterNotRepresentable(String),
    #[error("shapes differ")]
    ShapeMismatch,
    #[error("invalid isomorphism data: {0}")]
    InvalidIso(String),
    #[error("case-c system inconsistent: {0}")]
    CaseCInconsistent(String),
    #[error("table cocycle queried outside its box at {0}")]
    OutsideTable(String),
    #[error("box too small to close the recursion: missing {0}")]
    BoxTooSmall(String),
}
