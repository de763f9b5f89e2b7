//! Arbitrary-precision laboratory for Apéry's constant ζ(3): dynamic
//! nested-radical sums, series and integral representations of ζ and η,
//! binomial finite-difference acceleration, continued roots, series
//! reversion and truncated triangular systems.

pub mod catalog;
pub mod difference;
pub mod dynamic;
pub mod error;
pub mod precision;
pub mod quadrature;
pub mod reversion;
pub mod roots;

pub use error::{Error, Result};
pub use precision::{make_context, BigRational, BigReal, ConstantId, PrecisionContext};
