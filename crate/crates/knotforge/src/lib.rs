//! Exact computation of knot invariants for two-bridge knots: nonabelian
//! representation varieties through Riley polynomials, A-polynomials by
//! elimination, colored Jones polynomials from the quantum sl2 R-matrix,
//! recurrence operators fitted to colored Jones tables, and the machinery
//! to compare the two sides exactly.
//!
//! Everything algebraic is exact rational or integer arithmetic; floating
//! point appears only in `numeric`, which double-checks exact results
//! against high-precision residuals and never feeds back into them.

pub mod ajpipeline;
pub mod apoly;
pub mod cjones;
pub mod exactalg;
pub mod numeric;
pub mod qholo;
pub mod twobridge;

pub use exactalg::{LaurentPoly, MultiPoly, Rational};
