//! Exact computation in the pattern algebras of permutations, packed words,
//! and parking functions.
//!
//! For each of the three families ("species with restrictions") the crate
//! provides canonical objects, position-subset restriction, the diagonal sum
//! `⊕`, and decomposition into `⊕`-indecomposables.  On top of those it
//! builds the pattern algebra: the span of pattern-counting functions
//! `pat_a`, closed under pointwise product, with a deconcatenation coproduct
//! and two antipode engines —
//!
//! * [`antipode::antipode_takeuchi`], a signed sum over compositions of the
//!   factor sequence, valid for every species here, and
//! * [`antipode::antipode_interlacing`], the cancellation-free formula that
//!   counts interlacing quasi-shuffle signatures, valid for permutations and
//!   packed words.
//!
//! All coefficients are exact integers (overflow-checked); no floating point
//! is used anywhere.  Every value is immutable after construction and every
//! operation is pure, so everything can be shared freely across threads.
//!
//! The [`verify`] module bundles the batch checks (engine agreement, Hopf
//! axiom, stability-filter structure, golden tables, enumeration counts) that
//! the `phc` command-line tool exposes.

pub mod algebra;
pub mod antipode;
pub mod combinatorics;
mod error;
pub mod species;
pub mod verify;

pub use error::Error;
