//! Second-kind integral equations `u(s) = ∫_m^n F(s, t, u(t)) dt`, solved by
//! replacing the integral with a quadrature sum on a uniform grid and running
//! Picard iteration on the resulting finite-dimensional map under the
//! sup-norm distance.
//!
//! When the kernel is Lipschitz in its third argument with constant `L`, the
//! integral operator contracts distances by the factor `L * (n - m)`; the
//! solver checks that factor against 1 before iterating.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction, GridSpace, QuadratureRule};
use crate::iterate::{picard_with_rate, FixedPointResult, StoppingRule, STAGNATION_WINDOW};
use crate::sample::Sampler;
use crate::space::AlphaBetaParams;

/// Kernel signature: `F(s, t, u)`.
pub type Kernel = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// One integral equation instance on `[lower, upper]`.
#[derive(Clone)]
pub struct FredholmProblem {
    kernel: Kernel,
    lower: f64,
    upper: f64,
    /// Lipschitz constant of `F` in `u`, when known analytically.
    pub claimed_lipschitz: Option<f64>,
}

impl FredholmProblem {
    pub fn new(kernel: Kernel, lower: f64, upper: f64, claimed_lipschitz: Option<f64>) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::Domain(format!(
                "integration bounds must be finite with lower < upper, got [{lower}, {upper}]"
            )));
        }
        if let Some(l) = claimed_lipschitz {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::invalid_param(
                    "lambda",
                    format!("claimed Lipschitz constant must be positive, got {l}"),
                ));
            }
        }
        Ok(FredholmProblem {
            kernel,
            lower,
            upper,
            claimed_lipschitz,
        })
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn grid(&self, cells: usize) -> Result<Grid> {
        Grid::uniform(self.lower, self.upper, cells)
    }
}

fn checked_kernel_eval(kernel: &Kernel, s: f64, t: f64, u: f64) -> Result<f64> {
    let v = kernel(s, t, u);
    if !v.is_finite() {
        return Err(Error::Evaluation {
            witness: format!("F({s}, {t}, {u})"),
            value: v,
        });
    }
    Ok(v)
}

/// One application of the integral operator:
/// `(Pu)(s_i) = sum_j w_j * F(s_i, t_j, u(t_j))`.
pub fn apply_operator(
    problem: &FredholmProblem,
    u: &GridFunction,
    quad: &QuadratureRule,
) -> Result<GridFunction> {
    let grid = u.grid();
    let weights = quad.weights(grid)?;
    let nodes = grid.nodes();
    let mut out = Vec::with_capacity(nodes.len());
    for &s in nodes {
        let mut acc = 0.0;
        for (j, &t) in nodes.iter().enumerate() {
            acc += weights[j] * checked_kernel_eval(&problem.kernel, s, t, u.values()[j])?;
        }
        out.push(acc);
    }
    GridFunction::new(grid.clone(), out)
}

/// Controls for the sampling-based Lipschitz estimator.
#[derive(Clone, Debug)]
pub struct LipschitzConfig {
    /// Range the third kernel argument is drawn from. `None` derives
    /// `[-r, r]` with `r = max(1, 10 * sup |F(s, t, 0)|)` probed on a grid;
    /// the floor keeps kernels that vanish at zero sampleable.
    pub value_range: Option<(f64, f64)>,
    /// Probe grid resolution for the derived range.
    pub probe_cells: usize,
}

impl Default for LipschitzConfig {
    fn default() -> Self {
        LipschitzConfig {
            value_range: None,
            probe_cells: 100,
        }
    }
}

fn derived_value_range(problem: &FredholmProblem, probe_cells: usize) -> Result<(f64, f64)> {
    let grid = problem.grid(probe_cells)?;
    let mut sup = 0.0f64;
    for &s in grid.nodes() {
        for &t in grid.nodes() {
            sup = sup.max(checked_kernel_eval(&problem.kernel, s, t, 0.0)?.abs());
        }
    }
    let r = (10.0 * sup).max(1.0);
    Ok((-r, r))
}

/// `sup |F(s,t,u) - F(s,t,v)| / |u - v|` over sampled `(s, t, u, v)`.
pub fn estimate_kernel_lipschitz(
    problem: &FredholmProblem,
    cfg: &LipschitzConfig,
    sampler: &mut Sampler,
    n_samples: usize,
) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::invalid_param("n_samples", "must be >= 1"));
    }
    let (v_lo, v_hi) = match cfg.value_range {
        Some(r) => r,
        None => derived_value_range(problem, cfg.probe_cells)?,
    };
    let mut sup = 0.0f64;
    for _ in 0..n_samples {
        let s = sampler.uniform(problem.lower, problem.upper);
        let t = sampler.uniform(problem.lower, problem.upper);
        let u = sampler.uniform(v_lo, v_hi);
        let v = sampler.uniform(v_lo, v_hi);
        if u == v {
            continue;
        }
        let fu = checked_kernel_eval(&problem.kernel, s, t, u)?;
        let fv = checked_kernel_eval(&problem.kernel, s, t, v)?;
        sup = sup.max((fu - fv).abs() / (u - v).abs());
    }
    Ok(sup)
}

/// The operator's contraction factor `lipschitz * (upper - lower)`; the
/// iteration is guaranteed to converge when this is below 1.
pub fn contraction_factor(problem: &FredholmProblem, lipschitz: f64) -> f64 {
    lipschitz * (problem.upper - problem.lower)
}

/// How to treat a contraction factor at or above 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreconditionMode {
    /// Fail with [`Error::Precondition`] before iterating.
    Strict,
    /// Attach a warning and iterate anyway.
    BestEffort,
}

/// A finished Fredholm run.
#[derive(Clone, Debug)]
pub struct FredholmSolution {
    pub result: FixedPointResult<GridFunction>,
    /// The Lipschitz constant used (claimed, or estimated when unclaimed).
    pub lipschitz: f64,
    pub lipschitz_claimed: bool,
    /// `lipschitz * (upper - lower)`.
    pub factor: f64,
    pub warnings: Vec<String>,
}

/// Solve from the zero grid function with default estimator seed 0.
pub fn solve(
    problem: &FredholmProblem,
    cells: usize,
    quad: &QuadratureRule,
    stop: &StoppingRule,
) -> Result<FredholmSolution> {
    solve_with(
        problem,
        cells,
        quad,
        stop,
        None,
        PreconditionMode::BestEffort,
        &mut Sampler::from_seed(0),
    )
}

/// Full-control solve: optional starting iterate, strictness, and the
/// sampler used when the Lipschitz constant has to be estimated.
pub fn solve_with(
    problem: &FredholmProblem,
    cells: usize,
    quad: &QuadratureRule,
    stop: &StoppingRule,
    x0: Option<GridFunction>,
    mode: PreconditionMode,
    sampler: &mut Sampler,
) -> Result<FredholmSolution> {
    let grid = problem.grid(cells)?;
    let mut warnings = Vec::new();

    let (lipschitz, lipschitz_claimed) = match problem.claimed_lipschitz {
        Some(l) => (l, true),
        None => (
            estimate_kernel_lipschitz(problem, &LipschitzConfig::default(), sampler, 10_000)?,
            false,
        ),
    };
    let factor = contraction_factor(problem, lipschitz);
    let rate = if factor < 1.0 {
        Some(factor)
    } else {
        let message = format!(
            "contraction factor {factor:.6} = lipschitz {lipschitz:.6} * length {} is not below 1",
            problem.upper - problem.lower
        );
        if mode == PreconditionMode::Strict {
            return Err(Error::Precondition { message });
        }
        warnings.push(format!("{message}; iterating best-effort"));
        None
    };

    let space = GridSpace::new(grid.clone(), AlphaBetaParams::METRIC, -1.0, 1.0)?;
    let x0 = match x0 {
        Some(u) => {
            if u.grid() != &grid {
                return Err(Error::Domain(
                    "starting iterate must live on the solve grid".into(),
                ));
            }
            u
        }
        None => GridFunction::zero(grid),
    };
    let result = picard_with_rate(
        |u: &GridFunction| apply_operator(problem, u, quad),
        &space,
        x0,
        rate,
        stop,
    )?;

    if let Some(factor) = result.divergence_factor(STAGNATION_WINDOW) {
        return Err(Error::Divergence {
            window: STAGNATION_WINDOW,
            factor,
        });
    }
    if result
        .fixed_point
        .values()
        .iter()
        .any(|&v| v < 0.0)
    {
        warnings.push("solution takes negative values".into());
    }

    Ok(FredholmSolution {
        result,
        lipschitz,
        lipschitz_claimed,
        factor,
        warnings,
    })
}
