//! The Picard engine: `x_{n+1} = map(x_n)` with residual traces, an
//! a posteriori stopping rule, stagnation detection, and the geometric
//! a priori bound when it exists.
//!
//! The bound `G(x_n, x_m) <= alpha*K^n/(1 - beta*K) * G(x0, x1)` (for all
//! `m > n`) comes from summing the relaxed triangle inequality along the
//! trace; the geometric series behind it converges only when `beta*K < 1`,
//! which `K < 1` and `beta >= 1` do not guarantee. Termination therefore
//! always rests on the residual rule; the bound is attached when available
//! and reported as unavailable otherwise.

use crate::contraction::ContractionSpec;
use crate::error::{Error, Result};
use crate::space::{AlphaBetaParams, Space};

/// Residuals must fail to decrease this many consecutive times (while above
/// tolerance) before the engine declares stagnation.
pub const STAGNATION_WINDOW: usize = 8;

/// Default a posteriori tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default iteration budget.
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// When to stop iterating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopMode {
    /// Stop when the successive-iterate residual drops to `tol`.
    APosteriori,
    /// Additionally require the a priori bound (when available) to certify
    /// `tol`; falls back to the residual rule when `beta*K >= 1`.
    APrioriIfAvailable,
}

/// Tolerance, budget, and mode for one run.
#[derive(Clone, Copy, Debug)]
pub struct StoppingRule {
    /// Residual tolerance in distance units; must be positive.
    pub tol: f64,
    /// Must be at least 1.
    pub max_iter: usize,
    pub mode: StopMode,
}

impl Default for StoppingRule {
    fn default() -> Self {
        StoppingRule {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            mode: StopMode::APosteriori,
        }
    }
}

impl StoppingRule {
    pub fn validate(&self) -> Result<()> {
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::invalid_param(
                "tol",
                format!("must be a positive real, got {}", self.tol),
            ));
        }
        if self.max_iter < 1 {
            return Err(Error::invalid_param("max_iter", "must be >= 1"));
        }
        Ok(())
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Residual (and bound, in the a priori mode) reached tolerance.
    Converged,
    /// Budget exhausted with the residual still above tolerance.
    MaxIter,
    /// Residual stopped decreasing above tolerance for a full window,
    /// typically a floating-point floor.
    Stagnated,
}

impl Termination {
    pub fn name(&self) -> &'static str {
        match self {
            Termination::Converged => "converged",
            Termination::MaxIter => "max-iter",
            Termination::Stagnated => "stagnated",
        }
    }
}

/// A full Picard run.
///
/// `trace` holds `x_0 ..= x_{N}` and `residuals[n] = G(trace[n], trace[n+1])`,
/// so `residuals` is one shorter than `trace`. On convergence `n_iter` is the
/// index of the first residual at or below tolerance (a start that is already
/// fixed reports `n_iter = 0`).
#[derive(Clone, Debug)]
pub struct FixedPointResult<P> {
    pub fixed_point: P,
    pub trace: Vec<P>,
    pub residuals: Vec<f64>,
    pub n_iter: usize,
    pub termination: Termination,
    /// `a_priori_bounds[n]` bounds `G(x_n, x_m)` for every `m > n`;
    /// present iff `beta * K < 1` for the space's `beta` and the run's rate.
    pub a_priori_bounds: Option<Vec<f64>>,
}

impl<P> FixedPointResult<P> {
    pub fn final_residual(&self) -> f64 {
        *self.residuals.last().expect("every run records at least one residual")
    }

    /// Mean growth factor over the last `window` residual steps when they
    /// grew strictly throughout; `None` otherwise. Used by the application
    /// solvers to turn runaway iterations into divergence errors.
    pub fn divergence_factor(&self, window: usize) -> Option<f64> {
        let r = &self.residuals;
        if r.len() < window + 1 {
            return None;
        }
        let tail = &r[r.len() - window - 1..];
        if tail.windows(2).all(|w| w[1] > w[0]) && tail[0] > 0.0 {
            Some((tail[window] / tail[0]).powf(1.0 / window as f64))
        } else {
            None
        }
    }
}

/// The geometric Cauchy bound `alpha * K^n / (1 - beta*K) * d01`, or `None`
/// when `beta*K >= 1` (the series defining it diverges, so no bound exists
/// on this route).
pub fn a_priori_bound(params: &AlphaBetaParams, k: f64, d01: f64, n: usize) -> Option<f64> {
    if !(0.0..1.0).contains(&k) || d01 < 0.0 {
        return None;
    }
    let beta_k = params.beta * k;
    if beta_k >= 1.0 {
        return None;
    }
    Some(params.alpha * k.powi(n as i32) / (1.0 - beta_k) * d01)
}

/// Smallest `n` with [`a_priori_bound`] at or below `tol`; `None` when the
/// bound is unavailable. Computed in closed form from the geometric decay and
/// then nudged so it is exact against a linear scan.
pub fn iterations_needed(params: &AlphaBetaParams, k: f64, d01: f64, tol: f64) -> Option<usize> {
    if !(0.0..1.0).contains(&k) || d01 <= 0.0 || tol <= 0.0 {
        return None;
    }
    if params.beta * k >= 1.0 {
        return None;
    }
    let bound = |n: usize| a_priori_bound(params, k, d01, n).expect("beta*k < 1 checked above");
    if bound(0) <= tol {
        return Some(0);
    }
    if k == 0.0 {
        return Some(1); // bound(n) = 0 for every n >= 1
    }
    let raw = (tol * (1.0 - params.beta * k) / (params.alpha * d01)).ln() / k.ln();
    let mut n = raw.ceil().max(0.0) as usize;
    while n > 0 && bound(n - 1) <= tol {
        n -= 1;
    }
    while bound(n) > tol {
        n += 1;
    }
    Some(n)
}

/// Run the Picard engine with an explicit rate (`None` = no bound machinery,
/// pure a posteriori termination) and a fallible map. This is what
/// [`picard`] and the application solvers share.
pub(crate) fn picard_with_rate<S: Space>(
    map: impl Fn(&S::Point) -> Result<S::Point>,
    space: &S,
    x0: S::Point,
    rate: Option<f64>,
    stop: &StoppingRule,
) -> Result<FixedPointResult<S::Point>> {
    stop.validate()?;
    if !space.contains(&x0) {
        return Err(Error::Closure {
            witness: format!("x0 = {x0}"),
        });
    }

    let params = space.params();
    let bound_coef = rate.and_then(|k| {
        // alpha / (1 - beta*K), the n = 0 coefficient of the bound
        if k < 1.0 && params.beta * k < 1.0 {
            Some(params.alpha / (1.0 - params.beta * k))
        } else {
            None
        }
    });

    let mut trace = vec![x0];
    let mut residuals: Vec<f64> = Vec::new();
    let mut stagnant = 0usize;
    let termination;
    let n_iter;

    loop {
        let n = residuals.len();
        if n >= stop.max_iter {
            termination = Termination::MaxIter;
            n_iter = n;
            break;
        }
        let next = map(&trace[n])?;
        if !space.point_is_finite(&next) {
            return Err(Error::Evaluation {
                witness: format!("map(x_{n})"),
                value: f64::NAN,
            });
        }
        if !space.contains(&next) {
            return Err(Error::Closure {
                witness: format!("x_{} = {next}", n + 1),
            });
        }
        let r = space.checked_distance(&trace[n], &next)?;
        trace.push(next);
        residuals.push(r);

        let bound_ok = match (stop.mode, bound_coef, rate) {
            (StopMode::APrioriIfAvailable, Some(coef), Some(k)) => {
                coef * k.powi(n as i32) * residuals[0] <= stop.tol
            }
            _ => true,
        };
        if r <= stop.tol && bound_ok {
            termination = Termination::Converged;
            n_iter = n;
            break;
        }
        if n > 0 && r >= residuals[n - 1] {
            stagnant += 1;
            if stagnant >= STAGNATION_WINDOW {
                termination = Termination::Stagnated;
                n_iter = n;
                break;
            }
        } else {
            stagnant = 0;
        }
    }

    let a_priori_bounds = match (bound_coef, rate) {
        (Some(coef), Some(k)) => Some(
            (0..residuals.len())
                .map(|n| coef * k.powi(n as i32) * residuals[0])
                .collect(),
        ),
        _ => None,
    };

    Ok(FixedPointResult {
        fixed_point: trace.last().expect("trace starts non-empty").clone(),
        trace,
        residuals,
        n_iter,
        termination,
        a_priori_bounds,
    })
}

/// Iterate `x_{n+1} = map(x_n)` from `x0` under the stopping rule, attaching
/// per-step a priori bounds when `beta * derived_rate < 1`.
pub fn picard<S: Space>(
    map: impl Fn(&S::Point) -> S::Point,
    space: &S,
    x0: S::Point,
    spec: &ContractionSpec,
    stop: &StoppingRule,
) -> Result<FixedPointResult<S::Point>> {
    let rate = spec.derived_rate()?;
    picard_with_rate(|x| Ok(map(x)), space, x0, Some(rate), stop)
}
