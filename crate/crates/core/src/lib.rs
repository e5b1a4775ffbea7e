//! Expected counts and densities of real (and complex) zeros of random
//! functions with Gaussian coefficients.
//!
//! The covariance-kernel engine in [`kernel`] evaluates the zero density
//! of any differentiable basis with central or non-central Gaussian
//! coefficients along two independent computation paths. The
//! [`ensembles`] module carries the closed forms for the named families
//! (iid-coefficient polynomials, binomial-variance polynomials, power
//! series, trigonometric sums, Dirichlet series, entire functions) that
//! cross-check the engine, plus asymptotic expansions. [`systems`]
//! extends the counts to square systems of equations, [`matrices`] to
//! real eigenvalues of Gaussian matrices and matrix polynomials, and
//! [`complex_zeros`] to radial profiles of complex zeros. Every analytic
//! quantity has an independent Monte Carlo estimator in [`mc`], built on
//! exact Sturm-chain root counting and Aberth-Ehrlich root finding.
//!
//! [`selftest`] bundles the full cross-validation suite; the `randzeros`
//! binary exposes everything as subcommands.

pub mod complex_zeros;
pub mod ensembles;
pub mod error;
pub mod kernel;
pub mod matrices;
pub mod mc;
pub mod numerics;
pub mod selftest;
pub mod systems;

pub use error::{Error, Result};
