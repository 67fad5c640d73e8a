//! Refined Bohr inequalities on the Schur class.
//!
//! * [`series`]: truncated power series and Schur-class generators.
//! * [`functionals`]: Bohr sum, slack, area ratio, `phi0`, `Psi`, weights.
//! * [`sharp`]: sharp constants, the critical polynomial, bound envelopes and
//!   condition checks on the Möbius family.
//! * [`verify`]: randomized and grid certification of the inequalities.
//! * [`cli`]: the `bohr` command-line front end.

// Domain guards are written `!(x < bound)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod functionals;
pub mod minimize;
pub mod par;
pub mod roots;
pub mod series;
pub mod sharp;
pub mod verify;

pub use error::{BohrError, Result};
pub use functionals::{Enclosure, Radius, WeightFunction};
pub use par::Exec;
pub use series::{SchurFunction, TruncatedSeries};
