//! Generalized (p,q)-trigonometric functions and the generalized complete
//! elliptic integrals `K_{p,q}`, `E_{p,q}`.
//!
//! Every quantity is available through at least two independent routes
//! (tanh-sinh quadrature of the defining integral, Gauss hypergeometric
//! series, a shifted "λ-method" moment series, and the classical AGM for
//! `p = q = 2`). The [`harness`] module turns the analytic claims made about
//! these functions into grid checks with explicit error-estimate slack.

pub mod elliptic;
pub mod error;
pub mod eval;
pub mod exec;
pub mod gtrig;
pub mod harness;
pub mod hypergeom;
mod kernel;
pub mod quadrature;
pub mod special;

#[doc(hidden)]
pub mod cli;

pub use error::{Error, Result};
pub use eval::{EvalResult, Method};
pub use gtrig::PQParams;
