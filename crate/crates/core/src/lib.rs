//! Distributive lattices, the polyhedral cones of their Hibi toric varieties,
//! and an exact classification of singular faces.
//!
//! The pipeline is: build a [`DistLattice`] (directly, from a poset, or from a
//! minuscule family via [`minuscule`]), embed its join irreducibles as a
//! [`GridLattice`], then classify faces of the cone with [`cone`]. The
//! [`oracle`] module checks those verdicts against the Jacobian criterion on
//! the defining binomials.

pub mod bits;
pub mod cone;
pub mod data;
pub mod error;
pub mod grid;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod minuscule;
pub mod oracle;
pub mod poset;

pub use bits::BitSet;
pub use cone::{
    Classification, ConeVector, DistinguishedPoint, Face, HibiCone, HibiData, IdealFunctional, SingularLocus,
    SingularityType,
};
pub use error::{Error, Result};
pub use grid::{GridLattice, GridPoint, IrreduciblePair, JoinIrreducibleGrid};
pub use lattice::{BirkhoffWitness, DistLattice};
pub use minuscule::{Family, MinusculeSpec};
pub use oracle::{BinomialGenerator, OracleConfig, VerificationReport};
pub use poset::{OrderIdeal, Poset};
