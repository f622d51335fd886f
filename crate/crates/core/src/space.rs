//! Spaces: a point domain plus a distance function with an `(alpha, beta)`
//! certificate for the relaxed triangle inequality
//! `G(x,y) <= alpha*G(x,z) + beta*G(z,y)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::Sampler;

/// The pair of triangle-inequality constants. Both must be >= 1.
///
/// `(1,1)` is the classical metric case; `(1,s)` the strong-b case;
/// `(s,s)` the b-metric case with constant `s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaBetaParams {
    pub alpha: f64,
    pub beta: f64,
}

impl AlphaBetaParams {
    /// The classical metric certificate `(1, 1)`.
    pub const METRIC: AlphaBetaParams = AlphaBetaParams {
        alpha: 1.0,
        beta: 1.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 1.0 {
            return Err(Error::invalid_param(
                "alpha",
                format!("must be a finite real >= 1, got {alpha}"),
            ));
        }
        if !beta.is_finite() || beta < 1.0 {
            return Err(Error::invalid_param(
                "beta",
                format!("must be a finite real >= 1, got {beta}"),
            ));
        }
        Ok(AlphaBetaParams { alpha, beta })
    }

    /// The symmetric certificate `(s, s)`.
    pub fn symmetric(s: f64) -> Result<Self> {
        AlphaBetaParams::new(s, s)
    }
}

/// A point domain with a distance function and a claimed certificate.
///
/// `distance` must be finite and nonnegative on the domain; callers go
/// through [`Space::checked_distance`], which turns a violation into
/// [`Error::Evaluation`] with the offending pair as witness.
pub trait Space {
    type Point: Clone + PartialEq + fmt::Display;

    /// The claimed `(alpha, beta)` certificate for this space.
    fn params(&self) -> AlphaBetaParams;

    /// Raw distance evaluation. Prefer [`Space::checked_distance`].
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> f64;

    /// Draw one point from the domain.
    fn sample(&self, sampler: &mut Sampler) -> Result<Self::Point>;

    /// Whether `x` lies in the domain (used for self-map closure checks).
    fn contains(&self, x: &Self::Point) -> bool;

    /// Whether every coordinate of `x` is a finite real. Distinguishes
    /// evaluation failures (non-finite output) from closure failures
    /// (finite output outside the domain).
    fn point_is_finite(&self, x: &Self::Point) -> bool;

    /// All points of the domain when it is finite and small enough to
    /// enumerate; `None` for continuous domains.
    fn enumerate(&self) -> Option<Vec<Self::Point>> {
        None
    }

    /// Distance with the nonnegativity/finiteness contract enforced.
    fn checked_distance(&self, x: &Self::Point, y: &Self::Point) -> Result<f64> {
        let d = self.distance(x, y);
        if !d.is_finite() || d < 0.0 {
            return Err(Error::Evaluation {
                witness: format!("G({x}, {y})"),
                value: d,
            });
        }
        Ok(d)
    }
}

/// Distance functions between real scalars.
#[derive(Clone)]
pub enum ScalarDistance {
    /// `|x - y|`, the classical metric on the reals.
    Abs,
    /// `|x - y|^2`. Not a metric, but satisfies the relaxed inequality at
    /// `(2, 2)` since `(a + b)^2 <= 2a^2 + 2b^2` for all nonnegative `a, b`.
    AbsSquared,
    /// User-supplied distance.
    Custom(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl ScalarDistance {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            ScalarDistance::Abs => (x - y).abs(),
            ScalarDistance::AbsSquared => (x - y) * (x - y),
            ScalarDistance::Custom(f) => f(x, y),
        }
    }
}

impl fmt::Debug for ScalarDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDistance::Abs => write!(f, "Abs"),
            ScalarDistance::AbsSquared => write!(f, "AbsSquared"),
            ScalarDistance::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Point set of a scalar space.
#[derive(Clone, Debug)]
pub enum ScalarDomain {
    /// Closed interval `[lo, hi]` with uniform sampling.
    Interval { lo: f64, hi: f64 },
    /// Explicit finite point list with uniform index sampling.
    Finite(Vec<f64>),
}

/// A space over real scalars.
#[derive(Clone, Debug)]
pub struct ScalarSpace {
    domain: ScalarDomain,
    distance: ScalarDistance,
    params: AlphaBetaParams,
}

impl ScalarSpace {
    pub fn interval(
        lo: f64,
        hi: f64,
        distance: ScalarDistance,
        params: AlphaBetaParams,
    ) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::Domain(format!(
                "interval bounds must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(ScalarSpace {
            domain: ScalarDomain::Interval { lo, hi },
            distance,
            params,
        })
    }

    pub fn finite(points: Vec<f64>, distance: ScalarDistance, params: AlphaBetaParams) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("finite domain has no points".into()));
        }
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::Domain(format!("finite domain contains {bad}")));
        }
        Ok(ScalarSpace {
            domain: ScalarDomain::Finite(points),
            distance,
            params,
        })
    }

    /// Same domain and distance, different claimed certificate.
    pub fn with_params(&self, params: AlphaBetaParams) -> Self {
        ScalarSpace {
            domain: self.domain.clone(),
            distance: self.distance.clone(),
            params,
        }
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }
}

impl Space for ScalarSpace {
    type Point = f64;

    fn params(&self) -> AlphaBetaParams {
        self.params
    }

    fn distance(&self, x: &f64, y: &f64) -> f64 {
        self.distance.eval(*x, *y)
    }

    fn sample(&self, sampler: &mut Sampler) -> Result<f64> {
        match &self.domain {
            ScalarDomain::Interval { lo, hi } => Ok(sampler.uniform(*lo, *hi)),
            ScalarDomain::Finite(points) => Ok(points[sampler.index(points.len())]),
        }
    }

    fn contains(&self, x: &f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match &self.domain {
            ScalarDomain::Interval { lo, hi } => *lo <= *x && *x <= *hi,
            ScalarDomain::Finite(points) => points.contains(x),
        }
    }

    fn point_is_finite(&self, x: &f64) -> bool {
        x.is_finite()
    }

    fn enumerate(&self) -> Option<Vec<f64>> {
        match &self.domain {
            ScalarDomain::Interval { .. } => None,
            ScalarDomain::Finite(points) => Some(points.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reject_sub_one_constants() {
        assert!(AlphaBetaParams::new(0.5, 1.0).is_err());
        assert!(AlphaBetaParams::new(1.0, 0.99).is_err());
        assert!(AlphaBetaParams::new(f64::NAN, 1.0).is_err());
        let p = AlphaBetaParams::new(1.0, 1.0).unwrap();
        assert_eq!(p, AlphaBetaParams::METRIC);
    }

    #[test]
    fn interval_rejects_degenerate_bounds() {
        assert!(ScalarSpace::interval(1.0, 1.0, ScalarDistance::Abs, AlphaBetaParams::METRIC).is_err());
        assert!(ScalarSpace::interval(2.0, 1.0, ScalarDistance::Abs, AlphaBetaParams::METRIC).is_err());
    }

    #[test]
    fn finite_space_enumerates_and_samples_members() {
        let s = ScalarSpace::finite(vec![0.0, 1.0, 2.0], ScalarDistance::AbsSquared, AlphaBetaParams::METRIC)
            .unwrap();
        assert_eq!(s.enumerate().unwrap(), vec![0.0, 1.0, 2.0]);
        let mut sampler = Sampler::from_seed(3);
        for _ in 0..50 {
            let x = s.sample(&mut sampler).unwrap();
            assert!(s.contains(&x));
        }
    }

    #[test]
    fn checked_distance_flags_negative_values() {
        let s = ScalarSpace::interval(
            0.0,
            1.0,
            ScalarDistance::Custom(Arc::new(|x, y| x - y)),
            AlphaBetaParams::METRIC,
        )
        .unwrap();
        let err = s.checked_distance(&0.0, &1.0).unwrap_err();
        assert!(matches!(err, Error::Evaluation { .. }));
        assert!(s.checked_distance(&1.0, &0.0).is_ok());
    }

    #[test]
    fn abs_squared_matches_formula() {
        assert_eq!(ScalarDistance::AbsSquared.eval(0.0, 2.0), 4.0);
        assert_eq!(ScalarDistance::Abs.eval(-1.0, 2.0), 3.0);
    }
}
