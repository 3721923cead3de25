//! Symmetric truncated Freud orthogonal polynomials at extended precision.
//!
//! The family P_n(x;z) is orthogonal with respect to the quartic weight
//! e^(-x^4) restricted to the symmetric interval [-z, z]:
//!
//! ```text
//! <u, p> = INT_{-z}^{z} p(x) e^(-x^4) dx,   z > 0.
//! ```
//!
//! As z grows this recovers the classical Freud weight on the whole line.
//! The crate constructs the moments of the weight through the lower
//! incomplete gamma function, builds the three-term recurrence coefficients
//! gamma_n(z) by two independent routes (moment pairing and the coupled
//! Laguerre-Freud difference equations), evaluates the polynomials and their
//! derivatives, verifies the structure relation, ladder operators, holonomic
//! differential equation and boundary identities, computes zeros through the
//! Jacobi matrix, and exposes the electrostatic model and the z-dynamics of
//! the zeros.
//!
//! All computation happens on [`ExtReal`] values governed by a
//! [`PrecisionContext`] (default 256-bit mantissa).

pub mod error;
pub mod moments;
pub mod polyeval;
pub mod prec;
pub mod quad;
pub mod recurrence;
pub mod reference;
pub mod specfun;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use moments::{MomentSource, MomentTable, StieltjesTruncation};
pub use prec::{ExtReal, PrecisionContext};
pub use recurrence::{GammaRoute, GammaSequence};
pub use zeros::{ElectrostaticModel, JacobiMatrix, ZeroSet};
