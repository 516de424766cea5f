use thiserror::Error;

use crate::grid::GridPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover ({0}, {1}) references an element outside 0..{2}")]
    InvalidIndex(usize, usize, usize),
    #[error("cover relation contains a cycle through element `{0}`")]
    CycleDetected(String),
    #[error("cover ({0}, {1}) listed more than once")]
    DuplicateCover(usize, usize),
    #[error("not a lattice: elements `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice is not distributive at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("ideal enumeration exceeded the cap of {0}")]
    SizeCap(usize),
    #[error("Birkhoff round trip failed: {0}")]
    RoundtripFailed(String),
    #[error("elements `{0}` and `{1}` are not comparable")]
    NotComparable(String, String),

    #[error("grid has no points")]
    EmptyGrid,
    #[error("grid point {0} has a zero coordinate")]
    ZeroCoordinate(GridPoint),
    #[error("grid is not closed under min/max: {0} and {1}")]
    NotMinMaxClosed(GridPoint, GridPoint),
    #[error("cover {0} < {1} is not a unit grid step")]
    NonUnitCover(GridPoint, GridPoint),
    #[error("join irreducibles contain an antichain of size 3")]
    WidthExceeded,
    #[error("join irreducibles do not form a lattice: {0}")]
    JoinIrreduciblesNotLattice(String),
    #[error("grid embedding verification failed: {0}")]
    VerificationFailed(String),
    #[error("{0} is not a point of the grid")]
    NotAGridPoint(GridPoint),
    #[error("{0} has fewer than two upper covers")]
    MuMeetIrreducible(GridPoint),
    #[error("incomparable-irreducible enumerations disagree: {0}")]
    EnumerationMismatch(String),

    #[error("element set is not an embedded sublattice")]
    NotEmbedded,
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("structural and linear classifiers disagree on face {0:?}")]
    ClassifierDisagreement(Vec<usize>),

    #[error("invalid minuscule spec `{0}`: {1}")]
    InvalidSpec(String, String),
    #[error("transcribed coordinates do not match the computed embedding for {0}")]
    CoordinateMismatch(String),

    #[error("point is not on the variety: binomial ({0}, {1}) does not vanish")]
    PointNotOnVariety(usize, usize),
    #[error("embedded-sublattice enumeration exceeded the cap of {0}")]
    CapExceeded(usize),
    #[error("integer overflow in exact elimination")]
    Overflow,
}
