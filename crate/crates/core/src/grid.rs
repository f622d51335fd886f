//! Uniform grids, grid functions compared in sup-norm, and quadrature rules.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sample::Sampler;
use crate::space::{AlphaBetaParams, Space};

/// A uniform node grid `t_0 < t_1 < ... < t_M`.
#[derive(Clone, Debug)]
pub struct Grid {
    nodes: Arc<Vec<f64>>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.nodes, &other.nodes) || self.nodes == other.nodes
    }
}

impl Grid {
    /// Uniform grid over `[lo, hi]` with `cells` intervals (`cells + 1` nodes).
    /// The endpoints are exact.
    pub fn uniform(lo: f64, hi: f64, cells: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::Domain(format!(
                "grid bounds must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        if cells < 1 {
            return Err(Error::Domain("grid needs at least one cell".into()));
        }
        let dx = (hi - lo) / cells as f64;
        let mut nodes: Vec<f64> = (0..=cells).map(|i| lo + i as f64 * dx).collect();
        nodes[cells] = hi;
        Ok(Grid {
            nodes: Arc::new(nodes),
        })
    }

    /// Grid over `[center - half_width, center + half_width]` with
    /// `cells_per_side` intervals on each side. `center` is a node, exactly;
    /// node `i` pairs with node `2*cells_per_side - i` symmetrically.
    pub fn symmetric(center: f64, half_width: f64, cells_per_side: usize) -> Result<Self> {
        if !center.is_finite() || !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::Domain(format!(
                "symmetric grid needs finite center and half_width > 0, got ({center}, {half_width})"
            )));
        }
        if cells_per_side < 1 {
            return Err(Error::Domain("grid needs at least one cell per side".into()));
        }
        let dx = half_width / cells_per_side as f64;
        let n = cells_per_side as i64;
        let nodes: Vec<f64> = (-n..=n).map(|i| center + i as f64 * dx).collect();
        Ok(Grid {
            nodes: Arc::new(nodes),
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructors guarantee >= 2 nodes
    }

    pub fn cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn spacing(&self) -> f64 {
        (self.hi() - self.lo()) / self.cells() as f64
    }
}

/// A real-valued function represented by its samples on a uniform grid.
///
/// Distances between grid functions are sup-norm distances over the nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Domain(format!(
                "value count {} does not match node count {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Evaluation {
                witness: "grid function constructor".into(),
                value: *bad,
            });
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zero(grid: Grid) -> Self {
        let n = grid.len();
        GridFunction {
            grid,
            values: vec![0.0; n],
        }
    }

    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        let n = grid.len();
        GridFunction::new(grid, vec![c; n])
    }

    /// Sample a scalar function at the nodes.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values: Vec<f64> = grid.nodes().iter().map(|&t| f(t)).collect();
        GridFunction::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Max absolute node value.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sup-norm distance to another function on the same grid.
    pub fn sup_distance(&self, other: &GridFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Domain(
                "sup distance requires both functions on the same grid".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

impl fmt::Display for GridFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u[{}, {}] ({} nodes, sup |u| = {:.6e})",
            self.grid.lo(),
            self.grid.hi(),
            self.grid.len(),
            self.sup_norm()
        )
    }
}

/// The space of grid functions on a fixed grid under the sup-norm distance.
///
/// Sampling draws independent uniform node values from `[value_lo, value_hi]`.
#[derive(Clone, Debug)]
pub struct GridSpace {
    grid: Grid,
    params: AlphaBetaParams,
    value_lo: f64,
    value_hi: f64,
}

impl GridSpace {
    pub fn new(grid: Grid, params: AlphaBetaParams, value_lo: f64, value_hi: f64) -> Result<Self> {
        if !value_lo.is_finite() || !value_hi.is_finite() || value_lo > value_hi {
            return Err(Error::Domain(format!(
                "value range must be finite with lo <= hi, got [{value_lo}, {value_hi}]"
            )));
        }
        Ok(GridSpace {
            grid,
            params,
            value_lo,
            value_hi,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
}

impl Space for GridSpace {
    type Point = GridFunction;

    fn params(&self) -> AlphaBetaParams {
        self.params
    }

    fn distance(&self, x: &GridFunction, y: &GridFunction) -> f64 {
        match x.sup_distance(y) {
            Ok(d) => d,
            Err(_) => f64::NAN, // surfaces through checked_distance
        }
    }

    fn sample(&self, sampler: &mut Sampler) -> Result<GridFunction> {
        let values: Vec<f64> = (0..self.grid.len())
            .map(|_| sampler.uniform(self.value_lo, self.value_hi))
            .collect();
        GridFunction::new(self.grid.clone(), values)
    }

    fn contains(&self, x: &GridFunction) -> bool {
        *x.grid() == self.grid && x.values().iter().all(|v| v.is_finite())
    }

    fn point_is_finite(&self, x: &GridFunction) -> bool {
        x.values().iter().all(|v| v.is_finite())
    }
}

/// Composite quadrature rule on a uniform grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureRule {
    /// Composite trapezoid; O(dx^2) for twice-differentiable integrands.
    Trapezoid,
    /// Composite Simpson; needs an even cell count, O(dx^4).
    Simpson,
}

impl QuadratureRule {
    /// Per-node weights. They are nonnegative and sum to `hi - lo` up to
    /// rounding.
    pub fn weights(&self, grid: &Grid) -> Result<Vec<f64>> {
        let dx = grid.spacing();
        let m = grid.cells();
        match self {
            QuadratureRule::Trapezoid => {
                let mut w = vec![dx; grid.len()];
                w[0] = dx / 2.0;
                w[m] = dx / 2.0;
                Ok(w)
            }
            QuadratureRule::Simpson => {
                if m % 2 != 0 {
                    return Err(Error::InvalidParam {
                        field: "quadrature",
                        message: format!("Simpson needs an even cell count, got {m}"),
                    });
                }
                let mut w = vec![0.0; grid.len()];
                for (i, wi) in w.iter_mut().enumerate() {
                    *wi = if i == 0 || i == m {
                        dx / 3.0
                    } else if i % 2 == 1 {
                        4.0 * dx / 3.0
                    } else {
                        2.0 * dx / 3.0
                    };
                }
                Ok(w)
            }
        }
    }

    /// `sum_j w_j * f(t_j)` over the grid.
    pub fn integrate(&self, grid: &Grid, f: impl Fn(f64) -> f64) -> Result<f64> {
        let w = self.weights(grid)?;
        Ok(grid
            .nodes()
            .iter()
            .zip(&w)
            .map(|(&t, &wi)| wi * f(t))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_hits_endpoints_exactly() {
        let g = Grid::uniform(0.0, 1.0, 1000).unwrap();
        assert_eq!(g.lo(), 0.0);
        assert_eq!(g.hi(), 1.0);
        assert_eq!(g.len(), 1001);
        assert!((g.spacing() - 0.001).abs() < 1e-15);
    }

    #[test]
    fn symmetric_grid_centers_exactly() {
        let g = Grid::symmetric(0.3, 0.5, 500).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.nodes()[500], 0.3);
        // node i mirrors node 2n - i around the center
        for i in 0..=1000 {
            let a = g.nodes()[i] - 0.3;
            let b = 0.3 - g.nodes()[1000 - i];
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for cells in [2usize, 10, 100, 1000] {
            let g = Grid::uniform(-1.0, 3.0, cells).unwrap();
            for rule in [QuadratureRule::Trapezoid, QuadratureRule::Simpson] {
                let w = rule.weights(&g).unwrap();
                let sum: f64 = w.iter().sum();
                assert!(
                    (sum - 4.0).abs() <= 1e-12 * 4.0,
                    "{rule:?} at {cells} cells: {sum}"
                );
                assert!(w.iter().all(|&x| x >= 0.0));
            }
        }
    }

    #[test]
    fn simpson_rejects_odd_cells() {
        let g = Grid::uniform(0.0, 1.0, 3).unwrap();
        assert!(QuadratureRule::Simpson.weights(&g).is_err());
        assert!(QuadratureRule::Trapezoid.weights(&g).is_ok());
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let g = Grid::uniform(0.0, 1.0, 10).unwrap();
        let v = QuadratureRule::Simpson.integrate(&g, |t| t * t * t).unwrap();
        assert!((v - 0.25).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_quadratic_error_shrinks_fourfold() {
        // integral of t^2 over [0,1] = 1/3; composite trapezoid error ~ dx^2/6
        let e = |cells: usize| {
            let g = Grid::uniform(0.0, 1.0, cells).unwrap();
            (QuadratureRule::Trapezoid.integrate(&g, |t| t * t).unwrap() - 1.0 / 3.0).abs()
        };
        let ratio = e(100) / e(200);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn sup_distance_requires_matching_grids() {
        let g1 = Grid::uniform(0.0, 1.0, 4).unwrap();
        let g2 = Grid::uniform(0.0, 1.0, 5).unwrap();
        let u = GridFunction::zero(g1.clone());
        let v = GridFunction::zero(g2);
        assert!(u.sup_distance(&v).is_err());
        let w = GridFunction::constant(g1, 2.5).unwrap();
        assert_eq!(u.sup_distance(&w).unwrap(), 2.5);
    }

    #[test]
    fn grid_function_rejects_non_finite_values() {
        let g = Grid::uniform(0.0, 1.0, 2).unwrap();
        assert!(GridFunction::new(g.clone(), vec![0.0, f64::NAN, 1.0]).is_err());
        assert!(GridFunction::new(g, vec![0.0, 1.0]).is_err()); // wrong length
    }

    #[test]
    fn grid_space_samples_in_value_range() {
        let g = Grid::uniform(0.0, 1.0, 8).unwrap();
        let s = GridSpace::new(g, AlphaBetaParams::METRIC, -2.0, 2.0).unwrap();
        let mut sampler = Sampler::from_seed(1);
        let u = s.sample(&mut sampler).unwrap();
        assert!(s.contains(&u));
        assert!(u.values().iter().all(|&v| (-2.0..=2.0).contains(&v)));
    }
}
