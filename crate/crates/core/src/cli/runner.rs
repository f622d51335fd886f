//! Task dispatch and output writing.
//!
//! Summaries are JSON with alphabetically ordered keys and no timestamps, so
//! identical inputs and seeds produce byte-identical files. Iterative tasks
//! additionally write a residual trace CSV, and the grid solvers a solution
//! CSV.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::contraction::{check_condition, estimate_constants, ConstantsEstimate, ContractionSpec};
use crate::error::{Error, Result};
use crate::fredholm;
use crate::grid::GridFunction;
use crate::iterate::{picard, FixedPointResult};
use crate::metric::{classify_space_with, verify_axioms_with_witnesses, AxiomReport, Classification};
use crate::ode;
use crate::sample::Sampler;
use crate::space::Space;

use super::problem::{ProblemFile, SpaceInstance, Task};

/// Process-level options from the command line.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides the problem file's seed.
    pub seed_override: Option<u64>,
    /// Where output files go; `None` produces no files (summary is still
    /// returned as a string).
    pub out_dir: Option<PathBuf>,
    /// Fail on violated contraction preconditions instead of iterating
    /// best-effort.
    pub strict: bool,
}

/// What a run produced.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub summary_json: String,
    pub summary_path: Option<PathBuf>,
    pub trace_path: Option<PathBuf>,
    pub solution_path: Option<PathBuf>,
}

/// Parse and run a problem file from disk.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<RunOutcome> {
    let text = fs::read_to_string(path)?;
    let file = ProblemFile::parse(&text)?;
    run(&file, opts)
}

/// Run an already-parsed problem file.
pub fn run(file: &ProblemFile, opts: &RunOptions) -> Result<RunOutcome> {
    file.validate()?;
    let seed = opts.seed_override.or(file.seed).unwrap_or(0);
    let mut sampler = Sampler::from_seed(seed);

    let mut trace_csv: Option<String> = None;
    let mut solution_csv: Option<String> = None;

    let result = match file.task()? {
        Task::VerifyMetric(t) => {
            let witnesses: Vec<[f64; 3]> = t.witnesses.clone().unwrap_or_default();
            match t.build_space()? {
                SpaceInstance::Scalar(space) => {
                    let params = space.params();
                    let wit: Vec<[f64; 3]> = witnesses;
                    let report = verify_axioms_with_witnesses(
                        &space,
                        &params,
                        &mut sampler,
                        t.n_triples,
                        &wit,
                    )?;
                    report_json(&report)
                }
                SpaceInstance::Grid(space) => {
                    let params = space.params();
                    let report =
                        verify_axioms_with_witnesses(&space, &params, &mut sampler, t.n_triples, &[])?;
                    report_json(&report)
                }
            }
        }
        Task::Classify(t) => {
            let cfg = t.config();
            let classification = match t.build_space()? {
                SpaceInstance::Scalar(space) => {
                    classify_space_with(&space, &cfg, &mut sampler, t.n_triples)?
                }
                SpaceInstance::Grid(space) => {
                    classify_space_with(&space, &cfg, &mut sampler, t.n_triples)?
                }
            };
            classification_json(&classification)
        }
        Task::EstimateContraction(t) => {
            let space = t.build_space()?;
            let map = t.map()?;
            let estimate =
                estimate_constants(t.kind()?, |x| map(*x), &space, &mut sampler, t.n_pairs)?;
            match estimate {
                ConstantsEstimate::Admissible(spec) => {
                    // also report how the fitted constants behave on a fresh
                    // check over the same seeded stream
                    let mut check_sampler = Sampler::from_seed(seed);
                    let report =
                        check_condition(&spec, |x| map(*x), &space, &mut check_sampler, t.n_pairs)?;
                    json!({
                        "feasible": true,
                        "kind": spec.kind().name(),
                        "constants": constants_json(&spec),
                        "derived_rate": spec.derived_rate()?,
                        "check_holds": report.holds,
                        "check_worst_slack": report.worst_slack,
                    })
                }
                ConstantsEstimate::Infeasible { kind, observed } => json!({
                    "feasible": false,
                    "kind": kind.name(),
                    "observed": finite_or_null(observed),
                }),
            }
        }
        Task::SolveMap(t) => {
            let plan = t.build()?;
            let map = plan.map.clone();
            let run = picard(|x| map(*x), &plan.space, plan.x0, &plan.spec, &plan.stop)?;
            trace_csv = Some(trace_to_csv(&run));
            scalar_result_json(&run, &plan.spec)
        }
        Task::SolveFredholm(t) => {
            let plan = t.build()?;
            let x0 = match plan.x0_constant {
                Some(c) => Some(
                    GridFunction::constant(plan.problem.grid(plan.cells)?, c)
                        .map_err(|e| Error::validation("x0-constant", e.to_string()))?,
                ),
                None => None,
            };
            let mode = precondition_mode(opts.strict);
            let sol = fredholm::solve_with(
                &plan.problem,
                plan.cells,
                &plan.quad,
                &plan.stop,
                x0,
                mode,
                &mut sampler,
            )?;
            trace_csv = Some(trace_to_csv(&sol.result));
            solution_csv = Some(solution_to_csv(&sol.result.fixed_point));
            grid_result_json(
                &sol.result,
                sol.lipschitz,
                sol.lipschitz_claimed,
                sol.factor,
                &sol.warnings,
                None,
            )
        }
        Task::SolveOde(t) => {
            let plan = t.build()?;
            let mode = precondition_mode(opts.strict);
            let sol = ode::solve_ivp_with(
                &plan.problem,
                plan.nodes_per_side,
                &plan.stop,
                mode,
                &mut sampler,
            )?;
            trace_csv = Some(trace_to_csv(&sol.result));
            solution_csv = Some(solution_to_csv(&sol.result.fixed_point));
            grid_result_json(
                &sol.result,
                sol.lipschitz,
                sol.lipschitz_claimed,
                sol.factor,
                &sol.warnings,
                sol.largest_admissible_h,
            )
        }
    };

    let summary = json!({
        "version": file.version,
        "task": file.task_name(),
        "seed": seed,
        "strict": opts.strict,
        "inputs": task_echo(file)?,
        "result": result,
    });
    let summary_json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::Parse(format!("summary serialization: {e}")))?;

    let out = file.output.clone().unwrap_or(super::problem::OutputSpec {
        summary: None,
        trace: None,
        solution: None,
    });
    let mut outcome = RunOutcome {
        summary_json: summary_json.clone(),
        summary_path: None,
        trace_path: None,
        solution_path: None,
    };
    if let Some(dir) = &opts.out_dir {
        fs::create_dir_all(dir)?;
        let summary_path = dir.join(out.summary.as_deref().unwrap_or("summary.json"));
        fs::write(&summary_path, summary_json.as_bytes())?;
        outcome.summary_path = Some(summary_path);
        if let Some(csv) = &trace_csv {
            let path = dir.join(out.trace.as_deref().unwrap_or("trace.csv"));
            fs::write(&path, csv.as_bytes())?;
            outcome.trace_path = Some(path);
        }
        if let Some(csv) = &solution_csv {
            let path = dir.join(out.solution.as_deref().unwrap_or("solution.csv"));
            fs::write(&path, csv.as_bytes())?;
            outcome.solution_path = Some(path);
        }
    }
    Ok(outcome)
}

fn precondition_mode(strict: bool) -> fredholm::PreconditionMode {
    if strict {
        fredholm::PreconditionMode::Strict
    } else {
        fredholm::PreconditionMode::BestEffort
    }
}

/// The task table exactly as configured, for reproducibility.
fn task_echo(file: &ProblemFile) -> Result<Value> {
    let v = serde_json::to_value(file).map_err(|e| Error::Parse(e.to_string()))?;
    let mut map = match v {
        Value::Object(m) => m,
        _ => unreachable!("a struct serializes to an object"),
    };
    map.remove("version");
    map.remove("seed");
    map.remove("output");
    Ok(Value::Object(map))
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn report_json<P: std::fmt::Display>(report: &AxiomReport<P>) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": format!("{:?}", v.axiom).to_lowercase(),
                "witness": v.witness.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "lhs": v.lhs,
                "rhs": v.rhs,
            })
        })
        .collect();
    json!({
        "passed": report.passed,
        "triples_checked": report.triples_checked,
        "violations": violations,
        "near_zero_pairs": report.near_zero_pairs.len(),
    })
}

fn classification_json(c: &Classification) -> Value {
    let constants = match c {
        Classification::Metric => json!({"alpha": 1.0, "beta": 1.0}),
        Classification::StrongB { beta } => json!({"alpha": 1.0, "beta": beta}),
        Classification::BMetric { s } => json!({"alpha": s, "beta": s}),
        Classification::AlphaBeta { alpha, beta } => json!({"alpha": alpha, "beta": beta}),
        Classification::Unknown => Value::Null,
    };
    json!({"label": c.label(), "constants": constants})
}

fn constants_json(spec: &ContractionSpec) -> Value {
    match *spec {
        ContractionSpec::Banach { k } => json!({"k": k}),
        ContractionSpec::AlphaBeta { xi1, xi2 } => json!({"xi1": xi1, "xi2": xi2}),
        ContractionSpec::WeakAlphaBeta { xi1, xi2 } => json!({"xi1": xi1, "xi2": xi2}),
        ContractionSpec::Kannan { lambda } => json!({"lambda": lambda}),
        ContractionSpec::Reich { xi1, xi2, xi3 } => json!({"xi1": xi1, "xi2": xi2, "xi3": xi3}),
    }
}

fn scalar_result_json(run: &FixedPointResult<f64>, spec: &ContractionSpec) -> Value {
    json!({
        "fixed_point": run.fixed_point,
        "n_iter": run.n_iter,
        "termination": run.termination.name(),
        "final_residual": run.final_residual(),
        "constants": constants_json(spec),
        "derived_rate": spec.derived_rate().ok(),
        "bound_available": run.a_priori_bounds.is_some(),
        "trace_len": run.trace.len(),
    })
}

fn grid_result_json(
    run: &FixedPointResult<GridFunction>,
    lipschitz: f64,
    lipschitz_claimed: bool,
    factor: f64,
    warnings: &[String],
    largest_admissible_h: Option<f64>,
) -> Value {
    let mut v = json!({
        "nodes": run.fixed_point.grid().len(),
        "sup_norm": run.fixed_point.sup_norm(),
        "n_iter": run.n_iter,
        "termination": run.termination.name(),
        "final_residual": run.final_residual(),
        "lipschitz": lipschitz,
        "lipschitz_claimed": lipschitz_claimed,
        "factor": factor,
        "bound_available": run.a_priori_bounds.is_some(),
        "warnings": warnings,
    });
    if let Some(h) = largest_admissible_h {
        v.as_object_mut()
            .expect("object literal")
            .insert("largest_admissible_h".into(), json!(h));
    }
    v
}

/// `iteration,residual,a_priori_bound` rows; the bound column is empty when
/// unavailable.
fn trace_to_csv<P>(run: &FixedPointResult<P>) -> String {
    let mut csv = String::from("iteration,residual,a_priori_bound\n");
    for (n, r) in run.residuals.iter().enumerate() {
        let bound = run
            .a_priori_bounds
            .as_ref()
            .map(|b| b[n].to_string())
            .unwrap_or_default();
        let _ = writeln!(csv, "{n},{r},{bound}");
    }
    csv
}

/// `node,value` rows.
fn solution_to_csv(u: &GridFunction) -> String {
    let mut csv = String::from("node,value\n");
    for (i, &t) in u.grid().nodes().iter().enumerate() {
        let _ = writeln!(csv, "{t},{}", u.values()[i]);
    }
    csv
}
