//! abfix: fixed-point solving over metric spaces with a two-constant
//! relaxed triangle inequality.
//!
//! The toolkit is organised around distances `G` that satisfy
//! `G(x,y) <= alpha*G(x,z) + beta*G(z,y)` for some `alpha, beta >= 1`
//! instead of the classical triangle inequality. On top of that it provides:
//!
//! - [`metric`]: sampling-based axiom verification, minimal-constant
//!   estimation and space classification (metric / strong-b / b-metric / ...)
//! - [`contraction`]: five contraction classes (Banach, two-constant,
//!   weak two-constant, Kannan, Reich), empirical constant fitting, and the
//!   per-step convergence rate `K` derived from each class
//! - [`iterate`]: the Picard engine `x_{n+1} = map(x_n)` with residual
//!   traces, stagnation detection, and the geometric a priori bound
//!   `alpha*K^n/(1 - beta*K) * G(x0, x1)` (available only when `beta*K < 1`)
//! - [`fredholm`]: second-kind integral equations `u(s) = ∫ F(s,t,u(t)) dt`
//!   solved by quadrature discretization plus Picard iteration
//! - [`ode`]: first-order IVPs `u' = f(s,u)` solved on the equivalent
//!   integral form over a symmetric window around `s0`
//! - [`cli`]: the batch front end behind the `abfix` binary (problem files
//!   in TOML, JSON summaries, CSV traces)
//!
//! Quick start:
//!
//! ```
//! use abfix::contraction::ContractionSpec;
//! use abfix::iterate::{picard, StoppingRule};
//! use abfix::space::{AlphaBetaParams, ScalarDistance, ScalarSpace};
//!
//! let space = ScalarSpace::interval(0.0, 1.0, ScalarDistance::Abs,
//!     AlphaBetaParams::new(2.0, 1.0).unwrap()).unwrap();
//! let spec = ContractionSpec::Banach { k: 0.25 };
//! let run = picard(|x| x / 4.0, &space, 1.0, &spec, &StoppingRule::default()).unwrap();
//! assert!(run.fixed_point.abs() < 1e-9);
//! assert_eq!(run.trace[1], 0.25);
//! ```

pub mod builtins;
pub mod cli;
pub mod contraction;
pub mod error;
pub mod fredholm;
pub mod grid;
pub mod iterate;
pub mod metric;
pub mod ode;
pub mod sample;
pub mod space;

pub use error::{Error, Result};
pub use sample::Sampler;
pub use space::{AlphaBetaParams, Space};

/// Relative slack applied to every floating-point comparison of an axiom or
/// contraction inequality, with an absolute floor of the same magnitude.
/// Quadrature and arithmetic noise must not produce false violations.
pub const EPS_AXIOM: f64 = 1e-12;

/// `lhs <= rhs` up to [`EPS_AXIOM`] slack, relative to the larger operand
/// magnitude and floored at 1 so near-zero comparisons keep an absolute slack.
pub(crate) fn leq_with_slack(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + EPS_AXIOM * lhs.abs().max(rhs.abs()).max(1.0)
}
