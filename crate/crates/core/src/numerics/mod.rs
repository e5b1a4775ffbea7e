//! Self-contained numerical substrate: special functions, adaptive
//! quadrature, polynomial arithmetic, and seedable Gaussian streams.

mod poly;
mod quad;
mod rng;
pub(crate) mod special;

pub use poly::Poly;
pub use quad::{
    integrate_adaptive, integrate_adaptive_with_budget, Interval, QuadResult,
    DEFAULT_EVAL_BUDGET,
};
pub use rng::GaussianStream;
pub use special::{
    double_factorial_ratio, erf, euler_gamma, exp_integral_gamma0, log_gamma, zeta_derivs,
};
