//! Representation counts for quaternary forms built from squares and
//! triangular numbers.
//!
//! For positive coefficients `(a, b, c, d)` and `n >= 0` this crate computes
//!
//! - `N(a,b,c,d; n)` — the number of integer quadruples `(x,y,z,w)` with
//!   `n = a*x^2 + b*y^2 + c*z^2 + d*w^2`,
//! - `t(a,b,c,d; n)` — the same count with each square replaced by a
//!   generalized triangular number `x(x-1)/2`,
//!
//! three different ways: by direct lattice enumeration ([`oracle`]), by
//! closed-form divisor-sum formulas ([`formulas`]), and through truncated
//! theta-series products ([`qseries`]). The [`verify`] module sweeps the three
//! routes against each other over configurable ranges and emits
//! machine-readable reports, including a checker for the open conjectured
//! formula for `t(1,1,3,4; n)`.
//!
//! The closed formulas live in a registry keyed by the coefficient quadruple;
//! see [`formulas`] for the supported forms. Everything is exact 64-bit
//! integer arithmetic; rational prefactors in the formulas are evaluated as
//! checked exact divisions.

pub mod arith;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
pub use oracle::{Form, DEFAULT_BUDGET};
pub use qseries::Series;
pub use verify::{Report, Status};
