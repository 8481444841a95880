//! Sums of four large squares.
//!
//! * [`arith`]: `σ′`, squarefree decomposition, batch sieve.
//! * [`lattice`]: canonical four-square representations, `r(n)`, L-values
//!   and the minimal `K` with a representation whose nonzero parts are all
//!   at least `√n / K`.
//! * [`semigroup`]: Frobenius numbers of the monoid of sums of squares
//!   `>= n²`, unbounded and with at most four parts.
//! * [`survey`]: parallel range sweeps, per-K aggregates, CSV and
//!   checkpoint files.

pub mod arith;
pub mod bits;
mod error;
pub mod lattice;
pub mod semigroup;
pub mod survey;

pub use error::{Error, Result};
