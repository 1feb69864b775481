//! Numerical laboratory for the measure-weighted Cesàro operator
//!
//! ```text
//!     C_mu(f)(z) = sum_n  mu_n (a_0 + a_1 + ... + a_n) z^n,
//!     mu_n = integral of t^n over [0,1) against a finite positive measure mu,
//! ```
//!
//! acting between Bloch-type spaces `B^alpha -> B^beta` on the unit disk.
//! The crate provides, at desk scale:
//!
//! * [`measure`] — finite positive measures on `[0,1)` with closed-form or
//!   quadrature-backed moments and tail masses,
//! * [`carleson`] — logarithmically weighted Carleson-type tail classification
//!   and the equivalent moment-decay test,
//! * [`series`] — truncated power series, the operator itself (prefix sums)
//!   and a dense matrix oracle for it,
//! * [`bloch`] — Bloch-type seminorm estimation on dyadic radial grids plus
//!   coefficient-side membership tests,
//! * [`asymptotics`] — growth regimes of the radial integrals that drive the
//!   operator estimates,
//! * [`testfns`] — the standard families used to exercise the operator,
//! * [`probes`] — predicted boundedness/compactness verdicts per
//!   `(alpha, beta)` regime paired with empirical ladder probes.
//!
//! Everything is deterministic: no randomness, no global state, and every
//! tolerance is a named constant next to its use.

pub mod asymptotics;
pub mod bloch;
pub mod carleson;
mod error;
pub(crate) mod fit;
pub(crate) mod kahan;
pub mod measure;
pub mod probes;
pub mod quad;
pub mod series;
pub mod testfns;

pub use error::{Error, Result};
