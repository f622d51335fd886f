//! First-order initial value problems `u'(s) = f(s, u(s))`, `u(s0) = r0`,
//! solved by Picard iteration on the equivalent integral form
//! `u(s) = r0 + ∫_{s0}^{s} f(t, u(t)) dt` over the window
//! `[s0 - h, s0 + h]`.
//!
//! The window uses a symmetric grid with `s0` as an exact node; the running
//! integral is a cumulative trapezoid sum outward from the center, signed on
//! the left half. Every iterate therefore satisfies `u(s0) = r0` exactly.
//! When `f` is Lipschitz in `u` with constant `L`, the step operator
//! contracts sup-distances by `L * h`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction, GridSpace};
use crate::iterate::{picard_with_rate, FixedPointResult, StoppingRule, STAGNATION_WINDOW};
use crate::sample::Sampler;
use crate::space::AlphaBetaParams;

/// Right-hand side signature: `f(s, u)`.
pub type Rhs = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Margin kept below 1 when suggesting the largest admissible window.
pub const H_MARGIN: f64 = 0.05;

/// One IVP instance.
#[derive(Clone)]
pub struct OdeProblem {
    rhs: Rhs,
    pub s0: f64,
    pub r0: f64,
    /// Half-width `h` of the solution window.
    pub half_width: f64,
    /// Lipschitz constant of `f` in `u`, when known analytically.
    pub claimed_lipschitz: Option<f64>,
}

impl OdeProblem {
    pub fn new(
        rhs: Rhs,
        s0: f64,
        r0: f64,
        half_width: f64,
        claimed_lipschitz: Option<f64>,
    ) -> Result<Self> {
        if !s0.is_finite() || !r0.is_finite() {
            return Err(Error::invalid_param(
                "s0/r0",
                format!("must be finite, got ({s0}, {r0})"),
            ));
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::invalid_param(
                "h",
                format!("half-width must be positive, got {half_width}"),
            ));
        }
        if let Some(l) = claimed_lipschitz {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::invalid_param(
                    "lambda",
                    format!("claimed Lipschitz constant must be positive, got {l}"),
                ));
            }
        }
        Ok(OdeProblem {
            rhs,
            s0,
            r0,
            half_width,
            claimed_lipschitz,
        })
    }

    pub fn rhs(&self) -> &Rhs {
        &self.rhs
    }

    pub fn grid(&self, cells_per_side: usize) -> Result<Grid> {
        Grid::symmetric(self.s0, self.half_width, cells_per_side)
    }
}

fn checked_rhs_eval(rhs: &Rhs, s: f64, u: f64) -> Result<f64> {
    let v = rhs(s, u);
    if !v.is_finite() {
        return Err(Error::Evaluation {
            witness: format!("f({s}, {u})"),
            value: v,
        });
    }
    Ok(v)
}

/// Index of the center node, after validating that the grid is symmetric
/// around `s0` with `s0` as an exact node.
fn center_index(problem: &OdeProblem, grid: &Grid) -> Result<usize> {
    let n = grid.len();
    if n % 2 == 0 {
        return Err(Error::Domain(
            "grid must have an odd node count (even cells per side)".into(),
        ));
    }
    let c = n / 2;
    if grid.nodes()[c] != problem.s0 {
        return Err(Error::Domain(format!(
            "grid center {} is not the initial point {}",
            grid.nodes()[c],
            problem.s0
        )));
    }
    Ok(c)
}

/// One Picard step: `(Pu)(s_i) = r0 +` the signed cumulative trapezoid sum
/// of `f(t, u(t))` from `s0` out to `s_i`.
pub fn picard_step(problem: &OdeProblem, u: &GridFunction) -> Result<GridFunction> {
    let grid = u.grid();
    let c = center_index(problem, grid)?;
    let nodes = grid.nodes();
    let dx = grid.spacing();

    let mut g = Vec::with_capacity(nodes.len());
    for (j, &t) in nodes.iter().enumerate() {
        g.push(checked_rhs_eval(&problem.rhs, t, u.values()[j])?);
    }

    let mut out = vec![0.0; nodes.len()];
    out[c] = problem.r0;
    for i in c + 1..nodes.len() {
        out[i] = out[i - 1] + dx * 0.5 * (g[i - 1] + g[i]);
    }
    for i in (0..c).rev() {
        out[i] = out[i + 1] - dx * 0.5 * (g[i] + g[i + 1]);
    }
    GridFunction::new(grid.clone(), out)
}

/// The step operator's contraction factor `lipschitz * h`.
pub fn contraction_factor(problem: &OdeProblem, lipschitz: f64) -> f64 {
    lipschitz * problem.half_width
}

/// `sup |df/du|` over sampled `(s, u)`, by central differences.
///
/// `s` ranges over the window; `u` over `[r0 - r, r0 + r]` with
/// `r = max(1, 10 * sup_s |f(s, r0)|)` probed on the solve grid.
pub fn estimate_rhs_lipschitz(
    problem: &OdeProblem,
    sampler: &mut Sampler,
    n_samples: usize,
) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::invalid_param("n_samples", "must be >= 1"));
    }
    let probe = problem.grid(100)?;
    let mut sup0 = 0.0f64;
    for &s in probe.nodes() {
        sup0 = sup0.max(checked_rhs_eval(&problem.rhs, s, problem.r0)?.abs());
    }
    let r = (10.0 * sup0).max(1.0);

    let (lo, hi) = (problem.s0 - problem.half_width, problem.s0 + problem.half_width);
    let mut sup = 0.0f64;
    for _ in 0..n_samples {
        let s = sampler.uniform(lo, hi);
        let u = sampler.uniform(problem.r0 - r, problem.r0 + r);
        let delta = 1e-6 * u.abs().max(1.0);
        let fp = checked_rhs_eval(&problem.rhs, s, u + delta)?;
        let fm = checked_rhs_eval(&problem.rhs, s, u - delta)?;
        sup = sup.max((fp - fm).abs() / (2.0 * delta));
    }
    Ok(sup)
}

/// How to treat a contraction factor at or above 1.
pub use crate::fredholm::PreconditionMode;

/// A finished IVP run.
#[derive(Clone, Debug)]
pub struct OdeSolution {
    pub result: FixedPointResult<GridFunction>,
    pub lipschitz: f64,
    pub lipschitz_claimed: bool,
    /// `lipschitz * h`.
    pub factor: f64,
    pub warnings: Vec<String>,
    /// Suggested window when the factor is not below 1:
    /// `(1 - `[`H_MARGIN`]`) / lipschitz`. The problem's own window is never
    /// shrunk silently.
    pub largest_admissible_h: Option<f64>,
}

/// Solve from the constant start `u ≡ r0` with default estimator seed 0.
pub fn solve_ivp(
    problem: &OdeProblem,
    cells_per_side: usize,
    stop: &StoppingRule,
) -> Result<OdeSolution> {
    solve_ivp_with(
        problem,
        cells_per_side,
        stop,
        PreconditionMode::BestEffort,
        &mut Sampler::from_seed(0),
    )
}

/// Full-control solve.
pub fn solve_ivp_with(
    problem: &OdeProblem,
    cells_per_side: usize,
    stop: &StoppingRule,
    mode: PreconditionMode,
    sampler: &mut Sampler,
) -> Result<OdeSolution> {
    let grid = problem.grid(cells_per_side)?;
    let mut warnings = Vec::new();

    let (lipschitz, lipschitz_claimed) = match problem.claimed_lipschitz {
        Some(l) => (l, true),
        None => (estimate_rhs_lipschitz(problem, sampler, 10_000)?, false),
    };
    let factor = contraction_factor(problem, lipschitz);
    let mut largest_admissible_h = None;
    let rate = if factor < 1.0 {
        Some(factor)
    } else {
        let suggestion = if lipschitz > 0.0 {
            largest_admissible_h = Some((1.0 - H_MARGIN) / lipschitz);
            format!("; largest admissible h is {:.6}", (1.0 - H_MARGIN) / lipschitz)
        } else {
            String::new()
        };
        let message = format!(
            "contraction factor {factor:.6} = lipschitz {lipschitz:.6} * h {} is not below 1{suggestion}",
            problem.half_width
        );
        if mode == PreconditionMode::Strict {
            return Err(Error::Precondition { message });
        }
        warnings.push(format!("{message}; iterating best-effort"));
        None
    };

    let space = GridSpace::new(grid.clone(), AlphaBetaParams::METRIC, -1.0, 1.0)?;
    let x0 = GridFunction::constant(grid, problem.r0)?;
    let result = picard_with_rate(
        |u: &GridFunction| picard_step(problem, u),
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

    Ok(OdeSolution {
        result,
        lipschitz,
        lipschitz_claimed,
        factor,
        warnings,
        largest_admissible_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iterate::Termination;

    fn decay() -> OdeProblem {
        OdeProblem::new(Arc::new(|_, u| -u), 0.0, 1.0, 0.5, Some(1.0)).unwrap()
    }

    #[test]
    fn zero_rhs_maps_everything_to_the_initial_constant() {
        let p = OdeProblem::new(Arc::new(|_, _| 0.0), 0.0, 2.0, 1.0, None).unwrap();
        let grid = p.grid(64).unwrap();
        let u = GridFunction::from_fn(grid, |t| t * t - 3.0).unwrap();
        let v = picard_step(&p, &u).unwrap();
        assert!(v.values().iter().all(|&x| x == 2.0));
    }

    #[test]
    fn linear_rhs_integrates_to_the_exact_antiderivative() {
        // f = 2s with r0 = 0: the step lands on s^2. The trapezoid rule is
        // exact for linear integrands, so only rounding accumulates.
        let p = OdeProblem::new(Arc::new(|s, _| 2.0 * s), 0.0, 0.0, 1.0, None).unwrap();
        let grid = p.grid(1000).unwrap();
        let u = GridFunction::zero(grid);
        let v = picard_step(&p, &u).unwrap();
        let worst = v
            .grid()
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, &s)| (v.values()[i] - s * s).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-5, "sup error {worst}");
    }

    #[test]
    fn first_decay_iterate_is_the_linear_taylor_segment() {
        // From u ≡ 1 the step gives 1 - (s - s0), the degree-1 truncation of
        // the exponential.
        let p = decay();
        let grid = p.grid(500).unwrap();
        let u = GridFunction::constant(grid, 1.0).unwrap();
        let v = picard_step(&p, &u).unwrap();
        let worst = v
            .grid()
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, &s)| (v.values()[i] - (1.0 - s)).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-12, "sup error {worst}");
    }

    #[test]
    fn factor_is_lipschitz_times_half_width() {
        let p = OdeProblem::new(Arc::new(|_, u| u), 0.0, 1.0, 0.5, None).unwrap();
        assert_eq!(contraction_factor(&p, 1.0), 0.5);
        let p = OdeProblem::new(Arc::new(|_, u| u), 0.0, 1.0, 2.0, None).unwrap();
        assert_eq!(contraction_factor(&p, 1.0), 2.0);
        assert_eq!(contraction_factor(&p, 0.125), 0.25);
    }

    #[test]
    fn decay_solution_matches_the_exponential() {
        let sol = solve_ivp(&decay(), 500, &StoppingRule::default()).unwrap();
        assert_eq!(sol.result.termination, Termination::Converged);
        let u = &sol.result.fixed_point;
        let worst = u
            .grid()
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, &s)| (u.values()[i] - (-s).exp()).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-4, "sup error {worst}");
        // initial condition exact on every iterate
        for iterate in &sol.result.trace {
            assert_eq!(iterate.values()[500], 1.0);
        }
    }

    #[test]
    fn zero_rhs_converges_immediately_to_the_constant() {
        let p = OdeProblem::new(Arc::new(|_, _| 0.0), 1.0, 3.0, 0.5, Some(1e-9)).unwrap();
        let sol = solve_ivp(&p, 50, &StoppingRule::default()).unwrap();
        assert_eq!(sol.result.termination, Termination::Converged);
        assert_eq!(sol.result.n_iter, 0);
        assert!(sol.result.fixed_point.values().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn u_free_rhs_lands_in_one_productive_step() {
        // f = 2s with r0 = 1: the first step reaches s^2 + 1 and the second
        // reproduces it bit for bit, certifying convergence.
        let p = OdeProblem::new(Arc::new(|s, _| 2.0 * s), 0.0, 1.0, 0.5, None).unwrap();
        let stop = StoppingRule {
            tol: 1e-10,
            ..StoppingRule::default()
        };
        let sol = solve_ivp(&p, 500, &stop).unwrap();
        assert_eq!(sol.result.termination, Termination::Converged);
        assert!(sol.result.n_iter <= 2, "n_iter = {}", sol.result.n_iter);
        let u = &sol.result.fixed_point;
        let worst = u
            .grid()
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, &s)| (u.values()[i] - (s * s + 1.0)).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-5, "sup error {worst}");
    }

    #[test]
    fn decay_lipschitz_estimates_to_one() {
        let p = OdeProblem::new(Arc::new(|_, u| -u), 0.0, 1.0, 0.5, None).unwrap();
        let mut sampler = Sampler::from_seed(9);
        let l = estimate_rhs_lipschitz(&p, &mut sampler, 1_000).unwrap();
        assert!((l - 1.0).abs() <= 1e-9, "{l}");
    }

    #[test]
    fn wide_window_reports_the_admissible_half_width() {
        let p = OdeProblem::new(Arc::new(|_, u| -u), 0.0, 1.0, 2.0, Some(1.0)).unwrap();
        let err = solve_ivp_with(
            &p,
            100,
            &StoppingRule::default(),
            PreconditionMode::Strict,
            &mut Sampler::from_seed(0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));

        let sol = solve_ivp(&p, 100, &StoppingRule::default()).unwrap();
        assert_eq!(sol.largest_admissible_h, Some(0.95));
        assert!(!sol.warnings.is_empty());
    }

    #[test]
    fn picard_iterates_track_the_taylor_polynomials() {
        // For f = a*u the n-th iterate is the degree-n Taylor polynomial of
        // r0 * exp(a (s - s0)), up to accumulated quadrature error.
        let a = -1.0;
        let p = OdeProblem::new(Arc::new(move |_, u| a * u), 0.0, 1.0, 0.5, Some(1.0)).unwrap();
        let grid = p.grid(500).unwrap();
        let mut u = GridFunction::constant(grid.clone(), 1.0).unwrap();
        for n in 1..=6 {
            u = picard_step(&p, &u).unwrap();
            let taylor = |s: f64| (0..=n).map(|k| (a * s).powi(k) / factorial(k)).sum::<f64>();
            let worst = grid
                .nodes()
                .iter()
                .enumerate()
                .map(|(i, &s)| (u.values()[i] - taylor(s)).abs())
                .fold(0.0f64, f64::max);
            assert!(worst <= 1e-7, "degree {n}: sup error {worst}");
        }
    }

    fn factorial(k: i32) -> f64 {
        (1..=k).map(|i| i as f64).product::<f64>().max(1.0)
    }

    #[test]
    fn odd_grids_are_rejected() {
        let p = decay();
        let bad = Grid::uniform(-0.5, 0.5, 7).unwrap(); // even node count
        let u = GridFunction::zero(bad);
        assert!(picard_step(&p, &u).is_err());
    }
}
