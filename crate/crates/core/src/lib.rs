//! Exact Wilson-loop expectations for surface groups over `SU(n)`.
//!
//! The crate evaluates Fourier coefficients `I(w, ρ)` of word maps against the surface
//! relator with Weingarten calculus, sums them over a finite family of small
//! representations normalized by a Witten zeta partial sum, and recovers the Laurent
//! expansion in `n` of the resulting rational function. A Monte Carlo Haar oracle
//! estimates the same integrals independently.

pub mod characters;
pub mod cli;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod oracle;
pub mod partitions;
pub mod poly;
pub mod surface;
pub mod weingarten;

pub use error::{Error, Result};
pub use exact::Rational;
