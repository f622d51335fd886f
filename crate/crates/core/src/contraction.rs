//! Contraction classes, their admissibility constraints, empirical constant
//! estimation, and the per-step convergence rate each class induces.
//!
//! Every class's inequality compares `G(map(x), map(y))` against a
//! combination of `G(x,y)`, `G(x, map(x))`, and `G(y, map(y))`:
//!
//! - Banach:      `K * G(x,y)`
//! - two-constant: `xi1*G(x,y) + xi2*[G(x,Px) + G(y,Py)]`
//! - weak:         `xi1*G(x,y) + xi2*max[G(x,Px), G(y,Py)]`
//! - Kannan:       `lambda*[G(x,Px) + G(y,Py)]`
//! - Reich:        `xi1*G(x,y) + xi2*G(x,Px) + xi3*G(y,Py)`

use crate::error::{Error, Result};
use crate::leq_with_slack;
use crate::sample::Sampler;
use crate::space::Space;
use crate::EPS_AXIOM;

/// Grid step used when fitting multi-constant classes.
pub const ESTIMATE_GRID_STEP: f64 = 0.05;

/// Tag for the five supported classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractionKind {
    Banach,
    AlphaBeta,
    WeakAlphaBeta,
    Kannan,
    Reich,
}

impl ContractionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ContractionKind::Banach => "banach",
            ContractionKind::AlphaBeta => "alpha-beta",
            ContractionKind::WeakAlphaBeta => "weak-alpha-beta",
            ContractionKind::Kannan => "kannan",
            ContractionKind::Reich => "reich",
        }
    }

    pub fn parse(s: &str) -> Option<ContractionKind> {
        match s {
            "banach" => Some(ContractionKind::Banach),
            "alpha-beta" => Some(ContractionKind::AlphaBeta),
            "weak-alpha-beta" => Some(ContractionKind::WeakAlphaBeta),
            "kannan" => Some(ContractionKind::Kannan),
            "reich" => Some(ContractionKind::Reich),
            _ => None,
        }
    }
}

/// A contraction class together with its constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContractionSpec {
    /// `0 <= k < 1`.
    Banach { k: f64 },
    /// `xi1, xi2 >= 0`. Admissibility needs `xi1 + 2*xi2 < 1`: the per-step
    /// factor is `(xi1 + xi2)/(1 - xi2)` and it must stay below one, which
    /// the weaker sum bound `xi1 + xi2 < 1` alone does not give.
    AlphaBeta { xi1: f64, xi2: f64 },
    /// `xi1, xi2 >= 0` with `xi1 + xi2 < 1`.
    WeakAlphaBeta { xi1: f64, xi2: f64 },
    /// `0 <= lambda < 1/2`.
    Kannan { lambda: f64 },
    /// `xi1, xi2, xi3 >= 0` with `xi1 + xi2 + xi3 < 1`.
    Reich { xi1: f64, xi2: f64, xi3: f64 },
}

fn nonneg(field: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::invalid_param(
            field,
            format!("must be a finite nonnegative real, got {v}"),
        ));
    }
    Ok(())
}

impl ContractionSpec {
    pub fn kind(&self) -> ContractionKind {
        match self {
            ContractionSpec::Banach { .. } => ContractionKind::Banach,
            ContractionSpec::AlphaBeta { .. } => ContractionKind::AlphaBeta,
            ContractionSpec::WeakAlphaBeta { .. } => ContractionKind::WeakAlphaBeta,
            ContractionSpec::Kannan { .. } => ContractionKind::Kannan,
            ContractionSpec::Reich { .. } => ContractionKind::Reich,
        }
    }

    /// Check the class's admissibility constraints.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ContractionSpec::Banach { k } => {
                nonneg("K", k)?;
                if k >= 1.0 {
                    return Err(Error::invalid_param("K", format!("must be < 1, got {k}")));
                }
            }
            ContractionSpec::AlphaBeta { xi1, xi2 } => {
                nonneg("xi1", xi1)?;
                nonneg("xi2", xi2)?;
                if xi1 + xi2 >= 1.0 {
                    return Err(Error::invalid_param(
                        "xi1+xi2",
                        format!("must be < 1, got {}", xi1 + xi2),
                    ));
                }
                if xi1 + 2.0 * xi2 >= 1.0 {
                    return Err(Error::invalid_param(
                        "xi1+2*xi2",
                        format!(
                            "must be < 1 so the per-step factor (xi1+xi2)/(1-xi2) stays below one, got {}",
                            xi1 + 2.0 * xi2
                        ),
                    ));
                }
            }
            ContractionSpec::WeakAlphaBeta { xi1, xi2 } => {
                nonneg("xi1", xi1)?;
                nonneg("xi2", xi2)?;
                if xi1 + xi2 >= 1.0 {
                    return Err(Error::invalid_param(
                        "xi1+xi2",
                        format!("must be < 1, got {}", xi1 + xi2),
                    ));
                }
            }
            ContractionSpec::Kannan { lambda } => {
                nonneg("lambda", lambda)?;
                if lambda >= 0.5 {
                    return Err(Error::invalid_param(
                        "lambda",
                        format!("must lie in [0, 0.5), got {lambda}"),
                    ));
                }
            }
            ContractionSpec::Reich { xi1, xi2, xi3 } => {
                nonneg("xi1", xi1)?;
                nonneg("xi2", xi2)?;
                nonneg("xi3", xi3)?;
                if xi1 + xi2 + xi3 >= 1.0 {
                    return Err(Error::invalid_param(
                        "xi1+xi2+xi3",
                        format!("must be < 1, got {}", xi1 + xi2 + xi3),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The per-step residual shrink factor `K` in
    /// `G(x_{n+1}, x_{n+2}) <= K * G(x_n, x_{n+1})`, always `< 1` for an
    /// admissible spec:
    ///
    /// - Banach: `K`
    /// - two-constant: `(xi1 + xi2)/(1 - xi2)`
    /// - weak: `max(xi1/(1 - xi2), xi1 + xi2)` (whichever self-distance
    ///   dominates can change per step, so both case rates are covered)
    /// - Kannan: `lambda/(1 - lambda)`
    /// - Reich: `(xi1 + xi2)/(1 - xi3)`
    pub fn derived_rate(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            ContractionSpec::Banach { k } => k,
            ContractionSpec::AlphaBeta { xi1, xi2 } => (xi1 + xi2) / (1.0 - xi2),
            ContractionSpec::WeakAlphaBeta { xi1, xi2 } => (xi1 / (1.0 - xi2)).max(xi1 + xi2),
            ContractionSpec::Kannan { lambda } => lambda / (1.0 - lambda),
            ContractionSpec::Reich { xi1, xi2, xi3 } => (xi1 + xi2) / (1.0 - xi3),
        })
    }

    /// Right-hand side of the class inequality for one pair, given the
    /// distances `d_xy = G(x,y)`, `d_x = G(x, map(x))`, `d_y = G(y, map(y))`.
    fn rhs(&self, d_xy: f64, d_x: f64, d_y: f64) -> f64 {
        match *self {
            ContractionSpec::Banach { k } => k * d_xy,
            ContractionSpec::AlphaBeta { xi1, xi2 } => xi1 * d_xy + xi2 * (d_x + d_y),
            ContractionSpec::WeakAlphaBeta { xi1, xi2 } => xi1 * d_xy + xi2 * d_x.max(d_y),
            ContractionSpec::Kannan { lambda } => lambda * (d_x + d_y),
            ContractionSpec::Reich { xi1, xi2, xi3 } => xi1 * d_xy + xi2 * d_x + xi3 * d_y,
        }
    }
}

/// Outcome of checking a class inequality on sampled pairs.
#[derive(Clone, Debug)]
pub struct ConditionReport<P> {
    /// True iff `worst_slack >= -`[`EPS_AXIOM`].
    pub holds: bool,
    pub worst_pair: (P, P),
    /// `rhs - lhs` at the worst pair (most negative over the sample).
    pub worst_slack: f64,
    pub pairs_checked: usize,
}

/// Per-pair distances needed by every class inequality.
struct PairStats<P> {
    x: P,
    y: P,
    d_xy: f64,
    d_x: f64,
    d_y: f64,
    d_img: f64,
}

/// Draw `n_pairs` ordered pairs, exhaustively enumerating small finite
/// domains (all `|X|^2` ordered pairs) when that fits the budget.
fn collect_pairs<S: Space>(
    space: &S,
    sampler: &mut Sampler,
    n_pairs: usize,
) -> Result<Vec<(S::Point, S::Point)>> {
    if n_pairs == 0 {
        return Err(Error::invalid_param("n_pairs", "must be >= 1"));
    }
    if let Some(pts) = space.enumerate() {
        if pts.is_empty() {
            return Err(Error::Domain("domain has no points".into()));
        }
        let square = pts.len().saturating_pow(2);
        if square <= n_pairs {
            let mut out = Vec::with_capacity(square);
            for x in &pts {
                for y in &pts {
                    out.push((x.clone(), y.clone()));
                }
            }
            return Ok(out);
        }
    }
    let mut out = Vec::with_capacity(n_pairs);
    for _ in 0..n_pairs {
        out.push((space.sample(sampler)?, space.sample(sampler)?));
    }
    Ok(out)
}

fn collect_pair_stats<S: Space>(
    map: impl Fn(&S::Point) -> S::Point,
    space: &S,
    sampler: &mut Sampler,
    n_pairs: usize,
) -> Result<Vec<PairStats<S::Point>>> {
    let pairs = collect_pairs(space, sampler, n_pairs)?;
    let mut stats = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let px = map(&x);
        let py = map(&y);
        for (arg, img) in [(&x, &px), (&y, &py)] {
            if !space.point_is_finite(img) {
                return Err(Error::Evaluation {
                    witness: format!("map({arg})"),
                    value: f64::NAN,
                });
            }
        }
        let d_xy = space.checked_distance(&x, &y)?;
        let d_x = space.checked_distance(&x, &px)?;
        let d_y = space.checked_distance(&y, &py)?;
        let d_img = space.checked_distance(&px, &py)?;
        stats.push(PairStats {
            x,
            y,
            d_xy,
            d_x,
            d_y,
            d_img,
        });
    }
    Ok(stats)
}

/// Evaluate the class inequality of `spec` on `n_pairs` sampled pairs and
/// report the worst slack.
pub fn check_condition<S: Space>(
    spec: &ContractionSpec,
    map: impl Fn(&S::Point) -> S::Point,
    space: &S,
    sampler: &mut Sampler,
    n_pairs: usize,
) -> Result<ConditionReport<S::Point>> {
    spec.validate()?;
    let stats = collect_pair_stats(map, space, sampler, n_pairs)?;
    let mut worst: Option<(f64, usize)> = None;
    for (i, p) in stats.iter().enumerate() {
        let slack = spec.rhs(p.d_xy, p.d_x, p.d_y) - p.d_img;
        if worst.map_or(true, |(w, _)| slack < w) {
            worst = Some((slack, i));
        }
    }
    let (worst_slack, idx) = worst.expect("n_pairs >= 1 guarantees at least one pair");
    Ok(ConditionReport {
        holds: worst_slack >= -EPS_AXIOM,
        worst_pair: (stats[idx].x.clone(), stats[idx].y.clone()),
        worst_slack,
        pairs_checked: stats.len(),
    })
}

/// Result of [`estimate_constants`].
#[derive(Clone, Debug, PartialEq)]
pub enum ConstantsEstimate {
    Admissible(ContractionSpec),
    /// No admissible constants fit the sample. `observed` is the best
    /// admissibility statistic reached: the sup ratio for Banach/Kannan, the
    /// smallest constants' sum over the sweep for the other kinds.
    Infeasible {
        kind: ContractionKind,
        observed: f64,
    },
}

fn sweep_grid() -> Vec<f64> {
    (0..20).map(|i| i as f64 * ESTIMATE_GRID_STEP).collect()
}

/// Fit constants of the given class to the sampled behavior of `map`.
///
/// Banach and Kannan take the sup of the defining ratio. The multi-constant
/// classes minimize `xi1` subject to the inequality holding on every sample,
/// sweeping the remaining constants over a fixed grid with step
/// [`ESTIMATE_GRID_STEP`]; ties prefer smaller trailing constants. Pairs
/// where the defining denominator vanishes are skipped as vacuous when their
/// left side is zero too; with a positive left side they rule the class out
/// outright (so fitted constants always pass [`check_condition`] on the same
/// sample set).
pub fn estimate_constants<S: Space>(
    kind: ContractionKind,
    map: impl Fn(&S::Point) -> S::Point,
    space: &S,
    sampler: &mut Sampler,
    n_pairs: usize,
) -> Result<ConstantsEstimate> {
    let stats = collect_pair_stats(map, space, sampler, n_pairs)?;

    let finish = |spec: ContractionSpec, observed: f64| match spec.validate() {
        Ok(()) => ConstantsEstimate::Admissible(spec),
        Err(_) => ConstantsEstimate::Infeasible { kind, observed },
    };

    match kind {
        ContractionKind::Banach => {
            let mut k = 0.0f64;
            for p in &stats {
                if p.d_xy > 0.0 {
                    k = k.max(p.d_img / p.d_xy);
                } else if !leq_with_slack(p.d_img, 0.0) {
                    // zero denominator with a positive left side: no finite
                    // constant can ever satisfy the inequality
                    k = f64::INFINITY;
                }
            }
            Ok(finish(ContractionSpec::Banach { k }, k))
        }
        ContractionKind::Kannan => {
            let mut lambda = 0.0f64;
            for p in &stats {
                let den = p.d_x + p.d_y;
                if den > 0.0 {
                    lambda = lambda.max(p.d_img / den);
                } else if !leq_with_slack(p.d_img, 0.0) {
                    lambda = f64::INFINITY;
                }
            }
            Ok(finish(ContractionSpec::Kannan { lambda }, lambda))
        }
        ContractionKind::AlphaBeta | ContractionKind::WeakAlphaBeta => {
            let mut best: Option<ContractionSpec> = None;
            let mut best_sum = f64::INFINITY;
            for xi2 in sweep_grid() {
                let mut xi1 = 0.0f64;
                let mut feasible = true;
                for p in &stats {
                    let rest = match kind {
                        ContractionKind::AlphaBeta => xi2 * (p.d_x + p.d_y),
                        _ => xi2 * p.d_x.max(p.d_y),
                    };
                    if p.d_xy > 0.0 {
                        xi1 = xi1.max((p.d_img - rest) / p.d_xy);
                    } else if !leq_with_slack(p.d_img, rest) {
                        feasible = false;
                        break;
                    }
                }
                if !feasible {
                    continue;
                }
                let xi1 = xi1.max(0.0);
                best_sum = best_sum.min(xi1 + xi2);
                let spec = match kind {
                    ContractionKind::AlphaBeta => ContractionSpec::AlphaBeta { xi1, xi2 },
                    _ => ContractionSpec::WeakAlphaBeta { xi1, xi2 },
                };
                if spec.validate().is_ok() {
                    let better = match best {
                        None => true,
                        Some(b) => {
                            let b_xi1 = match b {
                                ContractionSpec::AlphaBeta { xi1, .. }
                                | ContractionSpec::WeakAlphaBeta { xi1, .. } => xi1,
                                _ => unreachable!(),
                            };
                            xi1 < b_xi1
                        }
                    };
                    if better {
                        best = Some(spec);
                    }
                }
            }
            Ok(match best {
                Some(spec) => ConstantsEstimate::Admissible(spec),
                None => ConstantsEstimate::Infeasible {
                    kind,
                    observed: best_sum,
                },
            })
        }
        ContractionKind::Reich => {
            let mut best: Option<(f64, f64, f64)> = None;
            let mut best_sum = f64::INFINITY;
            for xi2 in sweep_grid() {
                for xi3 in sweep_grid() {
                    let mut xi1 = 0.0f64;
                    let mut feasible = true;
                    for p in &stats {
                        let rest = xi2 * p.d_x + xi3 * p.d_y;
                        if p.d_xy > 0.0 {
                            xi1 = xi1.max((p.d_img - rest) / p.d_xy);
                        } else if !leq_with_slack(p.d_img, rest) {
                            feasible = false;
                            break;
                        }
                    }
                    if !feasible {
                        continue;
                    }
                    let xi1 = xi1.max(0.0);
                    best_sum = best_sum.min(xi1 + xi2 + xi3);
                    let spec = ContractionSpec::Reich { xi1, xi2, xi3 };
                    if spec.validate().is_ok() {
                        let better = match best {
                            None => true,
                            Some((b1, _, _)) => xi1 < b1,
                        };
                        if better {
                            best = Some((xi1, xi2, xi3));
                        }
                    }
                }
            }
            Ok(match best {
                Some((xi1, xi2, xi3)) => {
                    ConstantsEstimate::Admissible(ContractionSpec::Reich { xi1, xi2, xi3 })
                }
                None => ConstantsEstimate::Infeasible {
                    kind,
                    observed: best_sum,
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{AlphaBetaParams, ScalarDistance, ScalarSpace};

    fn unit_abs(params: AlphaBetaParams) -> ScalarSpace {
        ScalarSpace::interval(0.0, 1.0, ScalarDistance::Abs, params).unwrap()
    }

    fn quarter(x: &f64) -> f64 {
        x / 4.0
    }

    #[test]
    fn quarter_map_satisfies_the_weak_condition_with_the_known_constants() {
        let space = unit_abs(AlphaBetaParams::new(2.0, 1.0).unwrap());
        let spec = ContractionSpec::WeakAlphaBeta { xi1: 0.25, xi2: 0.0 };
        let mut sampler = Sampler::from_seed(3);
        let report = check_condition(&spec, quarter, &space, &mut sampler, 10_000).unwrap();
        assert!(report.holds);
        assert_eq!(report.pairs_checked, 10_000);
    }

    #[test]
    fn quarter_map_is_an_exact_banach_quarter() {
        // Oracle: |x/4 - y/4| = |x - y|/4 exactly in the reals; direct
        // evaluation over a 100 x 100 pair grid confirms the ratio.
        for i in 0..100 {
            for j in 0..100 {
                let x = i as f64 / 99.0;
                let y = j as f64 / 99.0;
                if x != y {
                    let ratio = (x / 4.0 - y / 4.0).abs() / (x - y).abs();
                    assert!((ratio - 0.25).abs() < 1e-12);
                }
            }
        }
        let space = unit_abs(AlphaBetaParams::METRIC);
        let spec = ContractionSpec::Banach { k: 0.25 };
        let mut sampler = Sampler::from_seed(5);
        let report = check_condition(&spec, quarter, &space, &mut sampler, 10_000).unwrap();
        assert!(report.holds);
        assert!(report.worst_slack.abs() <= 1e-15, "slack {}", report.worst_slack);
    }

    #[test]
    fn too_small_banach_constant_fails_with_the_extreme_pair() {
        let space = ScalarSpace::finite(
            vec![0.0, 1.0],
            ScalarDistance::Abs,
            AlphaBetaParams::METRIC,
        )
        .unwrap();
        let spec = ContractionSpec::Banach { k: 0.1 };
        let mut sampler = Sampler::from_seed(0);
        let report = check_condition(&spec, quarter, &space, &mut sampler, 100).unwrap();
        assert!(!report.holds);
        assert_eq!(report.worst_pair, (0.0, 1.0));
        assert!((report.worst_slack - (0.1 - 0.25)).abs() < 1e-15);
    }

    #[test]
    fn banach_estimate_recovers_the_quarter_ratio() {
        let space = unit_abs(AlphaBetaParams::METRIC);
        let mut sampler = Sampler::from_seed(8);
        match estimate_constants(ContractionKind::Banach, quarter, &space, &mut sampler, 10_000)
            .unwrap()
        {
            ConstantsEstimate::Admissible(ContractionSpec::Banach { k }) => {
                assert!((k - 0.25).abs() <= 1e-15, "k = {k}");
            }
            other => panic!("expected admissible banach, got {other:?}"),
        }
    }

    #[test]
    fn constant_map_estimates_to_zero() {
        let space = unit_abs(AlphaBetaParams::METRIC);
        let mut sampler = Sampler::from_seed(1);
        match estimate_constants(ContractionKind::Banach, |_| 0.5, &space, &mut sampler, 1_000)
            .unwrap()
        {
            ConstantsEstimate::Admissible(ContractionSpec::Banach { k }) => assert_eq!(k, 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_map_is_infeasible_for_every_kind() {
        let space = unit_abs(AlphaBetaParams::METRIC);
        for kind in [
            ContractionKind::Banach,
            ContractionKind::AlphaBeta,
            ContractionKind::WeakAlphaBeta,
            ContractionKind::Kannan,
            ContractionKind::Reich,
        ] {
            let mut sampler = Sampler::from_seed(2);
            let est = estimate_constants(kind, |x| *x, &space, &mut sampler, 500).unwrap();
            assert!(
                matches!(est, ConstantsEstimate::Infeasible { .. }),
                "{kind:?} gave {est:?}"
            );
        }
    }

    #[test]
    fn estimated_constants_pass_their_own_check() {
        let space = unit_abs(AlphaBetaParams::METRIC);
        let map = |x: &f64| 0.6 * x + 0.1;
        for kind in [
            ContractionKind::Banach,
            ContractionKind::AlphaBeta,
            ContractionKind::WeakAlphaBeta,
            ContractionKind::Reich,
        ] {
            let mut sampler = Sampler::from_seed(77);
            let est = estimate_constants(kind, map, &space, &mut sampler, 2_000).unwrap();
            let spec = match est {
                ConstantsEstimate::Admissible(spec) => spec,
                other => panic!("{kind:?}: {other:?}"),
            };
            let mut sampler = Sampler::from_seed(77);
            let report = check_condition(&spec, map, &space, &mut sampler, 2_000).unwrap();
            assert!(report.holds, "{kind:?} worst slack {}", report.worst_slack);
        }
    }

    #[test]
    fn derived_rates_match_hand_values() {
        let cases = [
            (ContractionSpec::Banach { k: 0.25 }, 0.25),
            (ContractionSpec::AlphaBeta { xi1: 0.25, xi2: 0.0 }, 0.25),
            (ContractionSpec::Kannan { lambda: 0.3 }, 3.0 / 7.0),
            (
                ContractionSpec::Reich { xi1: 0.2, xi2: 0.3, xi3: 0.4 },
                0.5 / 0.6,
            ),
            (ContractionSpec::WeakAlphaBeta { xi1: 0.3, xi2: 0.5 }, 0.8),
        ];
        for (spec, expected) in cases {
            assert!((spec.derived_rate().unwrap() - expected).abs() <= 1e-15, "{spec:?}");
        }
    }

    #[test]
    fn invariant_violations_are_contract_errors() {
        assert!(ContractionSpec::Banach { k: 1.0 }.derived_rate().is_err());
        assert!(ContractionSpec::Kannan { lambda: 0.5 }.derived_rate().is_err());
        assert!(ContractionSpec::Reich { xi1: 0.5, xi2: 0.3, xi3: 0.2 }
            .derived_rate()
            .is_err());
        assert!(ContractionSpec::AlphaBeta { xi1: 0.0, xi2: 0.6 }
            .derived_rate()
            .is_err());
        // Admissible two-constant specs keep the per-step factor below one.
        assert!(ContractionSpec::AlphaBeta { xi1: 0.2, xi2: 0.3 }.validate().is_ok());
        let r = ContractionSpec::AlphaBeta { xi1: 0.2, xi2: 0.3 }
            .derived_rate()
            .unwrap();
        assert!((r - 0.5 / 0.7).abs() < 1e-15);
    }

    #[test]
    fn banach_pass_implies_the_subsuming_kinds_pass() {
        let space = unit_abs(AlphaBetaParams::METRIC);
        let k = 0.25;
        for spec in [
            ContractionSpec::AlphaBeta { xi1: k, xi2: 0.0 },
            ContractionSpec::WeakAlphaBeta { xi1: k, xi2: 0.0 },
        ] {
            let mut sampler = Sampler::from_seed(13);
            let report = check_condition(&spec, quarter, &space, &mut sampler, 5_000).unwrap();
            assert!(report.holds, "{spec:?}");
        }
    }

    #[test]
    fn non_finite_map_output_is_an_evaluation_error() {
        let space = unit_abs(AlphaBetaParams::METRIC);
        let mut sampler = Sampler::from_seed(0);
        let err = check_condition(
            &ContractionSpec::Banach { k: 0.5 },
            |_| f64::NAN,
            &space,
            &mut sampler,
            10,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Evaluation { .. }));
    }
}
