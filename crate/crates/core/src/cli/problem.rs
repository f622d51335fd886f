//! Problem-file parsing and validation.
//!
//! Parsing is strict: any unknown field is rejected, exactly one task table
//! must be present, and every numeric field is range-checked against the
//! constraint of the module it feeds before anything runs.

use serde::{Deserialize, Serialize};

use crate::builtins;
use crate::contraction::{ContractionKind, ContractionSpec};
use crate::error::{Error, Result};
use crate::fredholm::FredholmProblem;
use crate::grid::{Grid, GridSpace, QuadratureRule};
use crate::iterate::{StopMode, StoppingRule, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::metric::ClassifyConfig;
use crate::ode::OdeProblem;
use crate::space::{AlphaBetaParams, ScalarSpace, Space};

/// Top-level problem file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ProblemFile {
    /// Format version; must be `"1"`.
    pub version: String,
    /// RNG seed for every sampled operation (default 0).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify_metric: Option<VerifyMetricTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classify: Option<ClassifyTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate_contraction: Option<EstimateContractionTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve_map: Option<SolveMapTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve_fredholm: Option<SolveFredholmTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve_ode: Option<SolveOdeTask>,
}

/// Output file names, relative to the run's output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GridDef {
    pub lo: f64,
    pub hi: f64,
    pub cells: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct VerifyMetricTask {
    /// `"abs"`, `"abs-squared"`, or `"sup-grid"`.
    pub space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<[f64; 2]>,
    pub alpha: f64,
    pub beta: f64,
    pub n_triples: usize,
    /// Extra scalar triples checked after the sampled ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<[f64; 3]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ClassifyTask {
    pub space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<[f64; 2]>,
    pub n_triples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EstimateContractionTask {
    /// Built-in map name (`"x/4"`).
    pub map: String,
    /// Built-in distance name (`"abs"`, `"abs-squared"`).
    pub distance: String,
    pub interval: [f64; 2],
    /// Contraction kind to fit.
    pub kind: String,
    pub n_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SolveMapTask {
    pub map: String,
    pub distance: String,
    pub interval: [f64; 2],
    /// Claimed triangle constants of the space (default `(1, 1)`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub x0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    /// `"a-posteriori"` (default) or `"a-priori-if-available"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SolveFredholmTask {
    /// Built-in kernel name (`"fredholm-linear"`).
    pub kernel: String,
    pub m: f64,
    pub n: f64,
    pub cells: usize,
    /// `"trapezoid"` (default) or `"simpson"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<String>,
    /// Claimed kernel Lipschitz constant; estimated by sampling when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    /// Constant starting iterate (default: the zero function).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0_constant: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SolveOdeTask {
    /// Built-in right-hand side name (`"ode-decay"`, `"ode-poly"`).
    pub rhs: String,
    pub s0: f64,
    pub r0: f64,
    pub h: f64,
    pub nodes_per_side: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

/// The task block actually present in a file.
#[derive(Clone, Debug)]
pub enum Task<'a> {
    VerifyMetric(&'a VerifyMetricTask),
    Classify(&'a ClassifyTask),
    EstimateContraction(&'a EstimateContractionTask),
    SolveMap(&'a SolveMapTask),
    SolveFredholm(&'a SolveFredholmTask),
    SolveOde(&'a SolveOdeTask),
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let file: ProblemFile =
            toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != "1" {
            return Err(Error::validation(
                "version",
                format!("unsupported version {:?}, expected \"1\"", self.version),
            ));
        }
        let mut present = 0usize;
        for is_some in [
            self.verify_metric.is_some(),
            self.classify.is_some(),
            self.estimate_contraction.is_some(),
            self.solve_map.is_some(),
            self.solve_fredholm.is_some(),
            self.solve_ode.is_some(),
        ] {
            present += usize::from(is_some);
        }
        if present != 1 {
            return Err(Error::validation(
                "task",
                format!("exactly one task table must be present, found {present}"),
            ));
        }
        self.task()?.check()?;
        if let Some(out) = &self.output {
            for (field, name) in [
                ("output.summary", &out.summary),
                ("output.trace", &out.trace),
                ("output.solution", &out.solution),
            ] {
                if let Some(name) = name {
                    if name.is_empty() || std::path::Path::new(name).is_absolute() {
                        return Err(Error::validation(
                            field,
                            "must be a non-empty relative file name",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn task(&self) -> Result<Task<'_>> {
        if let Some(t) = &self.verify_metric {
            return Ok(Task::VerifyMetric(t));
        }
        if let Some(t) = &self.classify {
            return Ok(Task::Classify(t));
        }
        if let Some(t) = &self.estimate_contraction {
            return Ok(Task::EstimateContraction(t));
        }
        if let Some(t) = &self.solve_map {
            return Ok(Task::SolveMap(t));
        }
        if let Some(t) = &self.solve_fredholm {
            return Ok(Task::SolveFredholm(t));
        }
        if let Some(t) = &self.solve_ode {
            return Ok(Task::SolveOde(t));
        }
        Err(Error::validation("task", "no task table present"))
    }

    pub fn task_name(&self) -> &'static str {
        match self.task() {
            Ok(Task::VerifyMetric(_)) => "verify-metric",
            Ok(Task::Classify(_)) => "classify",
            Ok(Task::EstimateContraction(_)) => "estimate-contraction",
            Ok(Task::SolveMap(_)) => "solve-map",
            Ok(Task::SolveFredholm(_)) => "solve-fredholm",
            Ok(Task::SolveOde(_)) => "solve-ode",
            Err(_) => "invalid",
        }
    }
}

impl Task<'_> {
    fn check(&self) -> Result<()> {
        match self {
            Task::VerifyMetric(t) => {
                build_space(&t.space, &t.interval, &t.points, &t.grid, &t.values, t.alpha, t.beta)?;
                require_positive_count("n-triples", t.n_triples)?;
                if t.witnesses.is_some() && t.space == "sup-grid" {
                    return Err(Error::validation(
                        "witnesses",
                        "witness triples are supported for scalar spaces only",
                    ));
                }
            }
            Task::Classify(t) => {
                build_space(&t.space, &t.interval, &t.points, &t.grid, &t.values, 1.0, 1.0)?;
                require_positive_count("n-triples", t.n_triples)?;
                if let Some(c) = t.max_constant {
                    if !c.is_finite() || c < 1.0 {
                        return Err(Error::validation("max-constant", "must be >= 1"));
                    }
                }
                if let Some(grid) = &t.alpha_grid {
                    if grid.is_empty() || grid.iter().any(|a| !a.is_finite() || *a < 1.0) {
                        return Err(Error::validation(
                            "alpha-grid",
                            "every alpha must be a finite real >= 1",
                        ));
                    }
                }
            }
            Task::EstimateContraction(t) => {
                t.build_space()?;
                t.kind()?;
                require_positive_count("n-pairs", t.n_pairs)?;
            }
            Task::SolveMap(t) => {
                t.build()?;
            }
            Task::SolveFredholm(t) => {
                t.build()?;
            }
            Task::SolveOde(t) => {
                t.build()?;
            }
        }
        Ok(())
    }
}

fn require_positive_count(field: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::validation(field, "must be >= 1"));
    }
    Ok(())
}

/// A built space instance: scalar or grid-function.
pub enum SpaceInstance {
    Scalar(ScalarSpace),
    Grid(GridSpace),
}

pub(crate) fn build_space(
    space: &str,
    interval: &Option<[f64; 2]>,
    points: &Option<Vec<f64>>,
    grid: &Option<GridDef>,
    values: &Option<[f64; 2]>,
    alpha: f64,
    beta: f64,
) -> Result<SpaceInstance> {
    let params = AlphaBetaParams::new(alpha, beta)
        .map_err(|e| Error::validation("alpha/beta", e.to_string()))?;
    match space {
        "abs" | "abs-squared" => {
            let distance = builtins::distance(space).expect("matched above");
            if grid.is_some() || values.is_some() {
                return Err(Error::validation(
                    "grid/values",
                    "only applicable to the sup-grid space",
                ));
            }
            match (interval, points) {
                (Some([lo, hi]), None) => Ok(SpaceInstance::Scalar(
                    ScalarSpace::interval(*lo, *hi, distance, params)
                        .map_err(|e| Error::validation("interval", e.to_string()))?,
                )),
                (None, Some(pts)) => Ok(SpaceInstance::Scalar(
                    ScalarSpace::finite(pts.clone(), distance, params)
                        .map_err(|e| Error::validation("points", e.to_string()))?,
                )),
                _ => Err(Error::validation(
                    "interval/points",
                    "scalar spaces need exactly one of `interval` or `points`",
                )),
            }
        }
        "sup-grid" => {
            if interval.is_some() || points.is_some() {
                return Err(Error::validation(
                    "interval/points",
                    "not applicable to the sup-grid space",
                ));
            }
            let g = grid.as_ref().ok_or_else(|| {
                Error::validation("grid", "the sup-grid space needs `grid = { lo, hi, cells }`")
            })?;
            let v = values.as_ref().ok_or_else(|| {
                Error::validation("values", "the sup-grid space needs `values = [lo, hi]`")
            })?;
            let grid = Grid::uniform(g.lo, g.hi, g.cells)
                .map_err(|e| Error::validation("grid", e.to_string()))?;
            Ok(SpaceInstance::Grid(
                GridSpace::new(grid, params, v[0], v[1])
                    .map_err(|e| Error::validation("values", e.to_string()))?,
            ))
        }
        other => Err(Error::validation(
            "space",
            format!("unknown space {other:?}; built-ins: abs, abs-squared, sup-grid"),
        )),
    }
}

impl VerifyMetricTask {
    pub fn build_space(&self) -> Result<SpaceInstance> {
        build_space(
            &self.space,
            &self.interval,
            &self.points,
            &self.grid,
            &self.values,
            self.alpha,
            self.beta,
        )
    }
}

impl ClassifyTask {
    pub fn build_space(&self) -> Result<SpaceInstance> {
        build_space(&self.space, &self.interval, &self.points, &self.grid, &self.values, 1.0, 1.0)
    }

    pub fn config(&self) -> ClassifyConfig {
        let mut cfg = ClassifyConfig::default();
        if let Some(c) = self.max_constant {
            cfg.max_constant = c;
        }
        if let Some(grid) = &self.alpha_grid {
            cfg.alpha_grid = grid.clone();
        }
        cfg
    }
}

fn lookup_map(name: &str) -> Result<builtins::ScalarMap> {
    builtins::map(name).ok_or_else(|| {
        Error::validation(
            "map",
            format!("unknown map {name:?}; built-ins: {}", builtins::MAP_NAMES.join(", ")),
        )
    })
}

fn scalar_space(distance: &str, interval: [f64; 2], params: AlphaBetaParams) -> Result<ScalarSpace> {
    let dist = builtins::distance(distance).ok_or_else(|| {
        Error::validation(
            "distance",
            format!(
                "unknown distance {distance:?}; built-ins: {}",
                builtins::DISTANCE_NAMES.join(", ")
            ),
        )
    })?;
    ScalarSpace::interval(interval[0], interval[1], dist, params)
        .map_err(|e| Error::validation("interval", e.to_string()))
}

impl EstimateContractionTask {
    pub fn build_space(&self) -> Result<ScalarSpace> {
        scalar_space(&self.distance, self.interval, AlphaBetaParams::METRIC)
    }

    pub fn map(&self) -> Result<builtins::ScalarMap> {
        lookup_map(&self.map)
    }

    pub fn kind(&self) -> Result<ContractionKind> {
        ContractionKind::parse(&self.kind).ok_or_else(|| {
            Error::validation(
                "kind",
                format!(
                    "unknown kind {:?}; one of banach, alpha-beta, weak-alpha-beta, kannan, reich",
                    self.kind
                ),
            )
        })
    }
}

fn stopping_rule(tol: Option<f64>, max_iter: Option<usize>, mode: Option<&str>) -> Result<StoppingRule> {
    let mode = match mode {
        None | Some("a-posteriori") => StopMode::APosteriori,
        Some("a-priori-if-available") => StopMode::APrioriIfAvailable,
        Some(other) => {
            return Err(Error::validation(
                "mode",
                format!("unknown mode {other:?}; a-posteriori or a-priori-if-available"),
            ))
        }
    };
    let rule = StoppingRule {
        tol: tol.unwrap_or(DEFAULT_TOL),
        max_iter: max_iter.unwrap_or(DEFAULT_MAX_ITER),
        mode,
    };
    rule.validate()
        .map_err(|e| Error::validation("tol/max-iter", e.to_string()))?;
    Ok(rule)
}

/// Everything needed to run a scalar solve.
pub struct SolveMapPlan {
    pub map: builtins::ScalarMap,
    pub space: ScalarSpace,
    pub spec: ContractionSpec,
    pub x0: f64,
    pub stop: StoppingRule,
}

impl SolveMapTask {
    pub fn build(&self) -> Result<SolveMapPlan> {
        let params = AlphaBetaParams::new(self.alpha.unwrap_or(1.0), self.beta.unwrap_or(1.0))
            .map_err(|e| Error::validation("alpha/beta", e.to_string()))?;
        let space = scalar_space(&self.distance, self.interval, params)?;
        let map = lookup_map(&self.map)?;
        let kind = ContractionKind::parse(&self.kind).ok_or_else(|| {
            Error::validation(
                "kind",
                format!(
                    "unknown kind {:?}; one of banach, alpha-beta, weak-alpha-beta, kannan, reich",
                    self.kind
                ),
            )
        })?;
        let spec = self.spec_for(kind)?;
        spec.validate()
            .map_err(|e| Error::validation("constants", e.to_string()))?;
        if !space.contains(&self.x0) {
            return Err(Error::validation(
                "x0",
                format!("{} lies outside the interval {:?}", self.x0, self.interval),
            ));
        }
        let stop = stopping_rule(self.tol, self.max_iter, self.mode.as_deref())?;
        Ok(SolveMapPlan {
            map,
            space,
            spec,
            x0: self.x0,
            stop,
        })
    }

    fn spec_for(&self, kind: ContractionKind) -> Result<ContractionSpec> {
        let take = |field: &'static str, v: Option<f64>| {
            v.ok_or_else(|| Error::validation(field, format!("required for kind {}", kind.name())))
        };
        let forbid = |field: &'static str, v: Option<f64>| {
            if v.is_some() {
                Err(Error::validation(
                    field,
                    format!("not a constant of kind {}", kind.name()),
                ))
            } else {
                Ok(())
            }
        };
        match kind {
            ContractionKind::Banach => {
                forbid("xi1", self.xi1)?;
                forbid("xi2", self.xi2)?;
                forbid("xi3", self.xi3)?;
                forbid("lambda", self.lambda)?;
                Ok(ContractionSpec::Banach { k: take("k", self.k)? })
            }
            ContractionKind::AlphaBeta => {
                forbid("k", self.k)?;
                forbid("xi3", self.xi3)?;
                forbid("lambda", self.lambda)?;
                Ok(ContractionSpec::AlphaBeta {
                    xi1: take("xi1", self.xi1)?,
                    xi2: take("xi2", self.xi2)?,
                })
            }
            ContractionKind::WeakAlphaBeta => {
                forbid("k", self.k)?;
                forbid("xi3", self.xi3)?;
                forbid("lambda", self.lambda)?;
                Ok(ContractionSpec::WeakAlphaBeta {
                    xi1: take("xi1", self.xi1)?,
                    xi2: take("xi2", self.xi2)?,
                })
            }
            ContractionKind::Kannan => {
                forbid("k", self.k)?;
                forbid("xi1", self.xi1)?;
                forbid("xi2", self.xi2)?;
                forbid("xi3", self.xi3)?;
                Ok(ContractionSpec::Kannan {
                    lambda: take("lambda", self.lambda)?,
                })
            }
            ContractionKind::Reich => {
                forbid("k", self.k)?;
                forbid("lambda", self.lambda)?;
                Ok(ContractionSpec::Reich {
                    xi1: take("xi1", self.xi1)?,
                    xi2: take("xi2", self.xi2)?,
                    xi3: take("xi3", self.xi3)?,
                })
            }
        }
    }
}

pub struct SolveFredholmPlan {
    pub problem: FredholmProblem,
    pub cells: usize,
    pub quad: QuadratureRule,
    pub stop: StoppingRule,
    pub x0_constant: Option<f64>,
}

impl SolveFredholmTask {
    pub fn build(&self) -> Result<SolveFredholmPlan> {
        let (kernel, builtin_lipschitz) = builtins::kernel(&self.kernel).ok_or_else(|| {
            Error::validation(
                "kernel",
                format!(
                    "unknown kernel {:?}; built-ins: {}",
                    self.kernel,
                    builtins::KERNEL_NAMES.join(", ")
                ),
            )
        })?;
        let lipschitz = self.lambda.or(builtin_lipschitz);
        let problem = FredholmProblem::new(kernel, self.m, self.n, lipschitz)
            .map_err(|e| Error::validation("m/n/lambda", e.to_string()))?;
        require_positive_count("cells", self.cells)?;
        let quad = match self.quadrature.as_deref() {
            None | Some("trapezoid") => QuadratureRule::Trapezoid,
            Some("simpson") => QuadratureRule::Simpson,
            Some(other) => {
                return Err(Error::validation(
                    "quadrature",
                    format!("unknown rule {other:?}; trapezoid or simpson"),
                ))
            }
        };
        if quad == QuadratureRule::Simpson && self.cells % 2 != 0 {
            return Err(Error::validation("cells", "Simpson needs an even cell count"));
        }
        let stop = stopping_rule(self.tol, self.max_iter, None)?;
        Ok(SolveFredholmPlan {
            problem,
            cells: self.cells,
            quad,
            stop,
            x0_constant: self.x0_constant,
        })
    }
}

pub struct SolveOdePlan {
    pub problem: OdeProblem,
    pub nodes_per_side: usize,
    pub stop: StoppingRule,
}

impl SolveOdeTask {
    pub fn build(&self) -> Result<SolveOdePlan> {
        let (rhs, builtin_lipschitz) = builtins::rhs(&self.rhs).ok_or_else(|| {
            Error::validation(
                "rhs",
                format!(
                    "unknown rhs {:?}; built-ins: {}",
                    self.rhs,
                    builtins::RHS_NAMES.join(", ")
                ),
            )
        })?;
        let lipschitz = self.lambda.or(builtin_lipschitz);
        let problem = OdeProblem::new(rhs, self.s0, self.r0, self.h, lipschitz)
            .map_err(|e| Error::validation("s0/r0/h/lambda", e.to_string()))?;
        require_positive_count("nodes-per-side", self.nodes_per_side)?;
        let stop = stopping_rule(self.tol, self.max_iter, None)?;
        Ok(SolveOdePlan {
            problem,
            nodes_per_side: self.nodes_per_side,
            stop,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOLVE_MAP: &str = r#"
version = "1"
seed = 7

[solve-map]
map = "x/4"
distance = "abs"
interval = [0.0, 1.0]
alpha = 2.0
beta = 1.0
kind = "banach"
k = 0.25
x0 = 1.0
tol = 1e-12
"#;

    #[test]
    fn parses_the_quarter_map_file() {
        let file = ProblemFile::parse(SOLVE_MAP).unwrap();
        assert_eq!(file.task_name(), "solve-map");
        let plan = file.solve_map.as_ref().unwrap().build().unwrap();
        assert_eq!(plan.spec, ContractionSpec::Banach { k: 0.25 });
        assert_eq!(plan.x0, 1.0);
        assert_eq!(plan.stop.tol, 1e-12);
    }

    #[test]
    fn round_trips_through_toml() {
        let file = ProblemFile::parse(SOLVE_MAP).unwrap();
        let text = toml::to_string(&file).unwrap();
        let again = ProblemFile::parse(&text).unwrap();
        assert_eq!(file, again);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = SOLVE_MAP.replace("tol = 1e-12", "tol = 1e-12\nbogus = 3");
        let err = ProblemFile::parse(&text).unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
    }

    #[test]
    fn out_of_range_kannan_constant_names_the_constraint() {
        let text = r#"
version = "1"

[solve-map]
map = "x/4"
distance = "abs"
interval = [0.0, 1.0]
kind = "kannan"
lambda = 0.6
x0 = 1.0
"#;
        let err = ProblemFile::parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("lambda") && msg.contains("[0, 0.5)"), "{msg}");
    }

    #[test]
    fn two_task_blocks_are_rejected() {
        let text = format!(
            "{SOLVE_MAP}\n[solve-ode]\nrhs = \"ode-decay\"\ns0 = 0.0\nr0 = 1.0\nh = 0.5\nnodes-per-side = 10\n"
        );
        let err = ProblemFile::parse(&text).unwrap_err();
        assert!(err.to_string().contains("exactly one task"), "{err}");
    }

    #[test]
    fn zero_task_blocks_are_rejected() {
        let err = ProblemFile::parse("version = \"1\"\n").unwrap_err();
        assert!(err.to_string().contains("exactly one task"), "{err}");
    }

    #[test]
    fn wrong_kind_constants_are_rejected() {
        let text = SOLVE_MAP.replace("k = 0.25", "k = 0.25\nlambda = 0.1");
        let err = ProblemFile::parse(&text).unwrap_err();
        assert!(err.to_string().contains("not a constant"), "{err}");
    }

    #[test]
    fn sup_grid_space_builds() {
        let text = r#"
version = "1"

[verify-metric]
space = "sup-grid"
grid = { lo = 0.0, hi = 1.0, cells = 16 }
values = [-1.0, 1.0]
alpha = 1.0
beta = 1.0
n-triples = 100
"#;
        let file = ProblemFile::parse(text).unwrap();
        let t = file.verify_metric.as_ref().unwrap();
        assert!(matches!(t.build_space().unwrap(), SpaceInstance::Grid(_)));
    }

    #[test]
    fn witnesses_on_sup_grid_are_rejected() {
        let text = r#"
version = "1"

[verify-metric]
space = "sup-grid"
grid = { lo = 0.0, hi = 1.0, cells = 16 }
values = [-1.0, 1.0]
alpha = 1.0
beta = 1.0
n-triples = 100
witnesses = [[0.0, 2.0, 1.0]]
"#;
        assert!(ProblemFile::parse(text).is_err());
    }

    #[test]
    fn version_must_be_one() {
        let text = SOLVE_MAP.replace("version = \"1\"", "version = \"2\"");
        let err = ProblemFile::parse(&text).unwrap_err();
        assert!(err.to_string().contains("version"), "{err}");
    }
}
