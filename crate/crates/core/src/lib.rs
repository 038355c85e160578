//! Exact evaluators and counting kernels for the binary cubic congruence
//! `ax^2 + by^3 = 0 (mod q)`.
//!
//! The crate is organised around seven submodules:
//!
//! * [`arith`] — integer and multiplicative-function primitives (deterministic
//!   64-bit factorization, Jacobi symbols, CRT, squarefree tests).
//! * [`expsum`] — closed-form and brute-force evaluation of the complete
//!   exponential sums `E(c,d;q)` over units mod `q`.
//! * [`weights`] — Gaussian sandwich weights and the weighted cubic-phase
//!   integral `F(alpha,beta)` with its bound checks.
//! * [`congruence`] — the counting functions `M`, the weighted solution sum,
//!   the region area, and main-term/error-budget comparators.
//! * [`ecdisc`] — density of elliptic curves with squarefree discriminant.
//! * [`delpezzo`] — point counts on a degree-2 del Pezzo surface via its
//!   universal torsor, plus every factor of the predicted leading constant.
//! * [`report`] — structured, deterministic report output for the CLI.

pub mod arith;
pub mod congruence;
pub mod delpezzo;
pub mod ecdisc;
pub mod error;
pub mod expsum;
pub mod quad;
pub mod rational;
pub mod report;
pub mod selftest;
pub mod weights;

pub use error::{Error, Result};
pub use rational::Rational;
