//! Exact arithmetic for hybrid numbers and generalized Leonardo-Alwyn sequences, plus a
//! harness that checks identities about them by exhaustive exact evaluation over parameter
//! grids.
//!
//! Everything is exact: scalars are [`Rational`]s, characteristic roots live in the formal
//! quadratic extension [`QuadExt`], and hybrid numbers are [`Hybrid<S>`] over either.

pub mod error;
pub mod harness;
pub mod hybrid;
pub mod hybrid_sequence;
pub mod matrix;
pub mod scalar;
pub mod sequence;
pub mod series;

pub use error::{Error, Result, SyntaxError};
pub use hybrid::Hybrid;
pub use scalar::{CommutativeRing, QuadExt, Rational, Ring};
pub use sequence::SeqParams;
