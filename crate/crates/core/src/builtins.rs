//! Named built-in maps, distances, kernels, and right-hand sides reachable
//! from problem files. Covering the stock instances in code keeps the CLI
//! free of an expression parser; new instances are added here.

use std::sync::Arc;

use crate::fredholm::Kernel;
use crate::ode::Rhs;
use crate::space::ScalarDistance;

/// Scalar self-map signature.
pub type ScalarMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub const MAP_NAMES: [&str; 1] = ["x/4"];
pub const DISTANCE_NAMES: [&str; 2] = ["abs", "abs-squared"];
pub const SPACE_NAMES: [&str; 3] = ["abs", "abs-squared", "sup-grid"];
pub const KERNEL_NAMES: [&str; 1] = ["fredholm-linear"];
pub const RHS_NAMES: [&str; 2] = ["ode-decay", "ode-poly"];

/// Self-maps: `"x/4"` is the quarter map `x -> x/4` (fixed point 0).
pub fn map(name: &str) -> Option<ScalarMap> {
    match name {
        "x/4" => Some(Arc::new(|x| x / 4.0)),
        _ => None,
    }
}

/// Scalar distances: `"abs"` is `|x - y|`, `"abs-squared"` is `|x - y|^2`.
pub fn distance(name: &str) -> Option<ScalarDistance> {
    match name {
        "abs" => Some(ScalarDistance::Abs),
        "abs-squared" => Some(ScalarDistance::AbsSquared),
        _ => None,
    }
}

/// Kernels: `"fredholm-linear"` is `F(s,t,u) = s + s*t*u/2`, whose exact
/// solution on `[0, 1]` is `u(s) = 1.2 s`.
pub fn kernel(name: &str) -> Option<(Kernel, Option<f64>)> {
    match name {
        "fredholm-linear" => Some((Arc::new(|s, t, u| s + 0.5 * s * t * u), Some(0.5))),
        _ => None,
    }
}

/// Right-hand sides: `"ode-decay"` is `f(s, u) = -u` (solution
/// `r0 * e^{-(s - s0)}`), `"ode-poly"` is `f(s, u) = 2s` (solution
/// `r0 + s^2 - s0^2`).
pub fn rhs(name: &str) -> Option<(Rhs, Option<f64>)> {
    match name {
        "ode-decay" => Some((Arc::new(|_, u| -u), Some(1.0))),
        "ode-poly" => Some((Arc::new(|s, _| 2.0 * s), None)),
        _ => None,
    }
}
