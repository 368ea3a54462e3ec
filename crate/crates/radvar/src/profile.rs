//! Piecewise-linear radial profiles v(r).
//!
//! A profile is a strictly increasing grid with one value per node,
//! interpolated linearly and extended by its edge values outside the grid
//! (clamped evaluation). Node values are allowed to be ±∞ so that profiles
//! with genuinely infinite energy are representable; every consumer treats
//! a non-finite node as "infinite slope on the adjacent cells".

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != values.len() {
            return Err(Error::InvalidSpec(
                "profile needs >= 2 nodes and matching value count".into(),
            ));
        }
        if grid.iter().any(|g| !g.is_finite() || *g < 0.0) {
            return Err(Error::InvalidSpec(
                "profile grid must be finite and >= 0".into(),
            ));
        }
        if !grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidSpec(
                "profile grid must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidSpec("profile values must not be NaN".into()));
        }
        Ok(Self { grid, values })
    }

    /// Constant profile c on the given grid.
    pub fn constant(grid: Vec<f64>, c: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![c; n])
    }

    /// Sample a function on a grid.
    pub fn from_fn(grid: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.iter().map(|&r| f(r)).collect();
        Self::new(grid, values)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees >= 2 nodes
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// v(r): linear interpolation, clamped to the edge values outside the
    /// grid (constant extension).
    pub fn value(&self, r: f64) -> f64 {
        let g = &self.grid;
        if r <= g[0] {
            return self.values[0];
        }
        if r >= g[g.len() - 1] {
            return self.values[g.len() - 1];
        }
        let j = match g.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(j) => return self.values[j],
            Err(j) => j - 1,
        };
        let t = (r - g[j]) / (g[j + 1] - g[j]);
        self.values[j] * (1.0 - t) + self.values[j + 1] * t
    }

    /// v'(r) of the interpolant (0 outside the grid; on a node, the slope of
    /// the right cell).
    pub fn slope(&self, r: f64) -> f64 {
        let g = &self.grid;
        if r < g[0] || r >= g[g.len() - 1] {
            return 0.0;
        }
        let j = match g.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(j) => j.min(g.len() - 2),
            Err(j) => j - 1,
        };
        (self.values[j + 1] - self.values[j]) / (g[j + 1] - g[j])
    }

    /// New profile with midpoints inserted into every cell (same function,
    /// twice the resolution — refinement studies).
    pub fn refine_midpoints(&self) -> Self {
        let mut grid = Vec::with_capacity(self.grid.len() * 2 - 1);
        let mut values = Vec::with_capacity(grid.capacity());
        for j in 0..self.grid.len() - 1 {
            let (r0, r1) = (self.grid[j], self.grid[j + 1]);
            grid.push(r0);
            values.push(self.values[j]);
            grid.push(0.5 * (r0 + r1));
            values.push(0.5 * (self.values[j] + self.values[j + 1]));
        }
        grid.push(*self.grid.last().unwrap());
        values.push(*self.values.last().unwrap());
        Self { grid, values }
    }

    /// Merge another grid's nodes into this profile (values interpolated;
    /// the function is unchanged).
    pub fn with_nodes(&self, extra: &[f64]) -> Self {
        let mut grid = self.grid.clone();
        let (lo, hi) = (grid[0], *grid.last().unwrap());
        for &x in extra {
            if x.is_finite() && x > lo && x < hi {
                grid.push(x);
            }
        }
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        grid.dedup();
        let values = grid.iter().map(|&r| self.value(r)).collect();
        Self { grid, values }
    }
}

/// Uniform grid of n nodes on [lo, hi].
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && hi > lo);
    let mut g: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    // Endpoints exact: downstream code matches interval bounds bitwise.
    g[n - 1] = hi;
    g
}

/// Grid of n nodes on [lo, hi] algebraically graded toward both endpoints
/// with exponent g ≥ 1 (g = 1: uniform). Used where profiles or weights
/// degenerate at interval ends.
pub fn graded_grid(lo: f64, hi: f64, n: usize, g: f64) -> Vec<f64> {
    assert!(n >= 2 && hi > lo && g >= 1.0);
    let mut grid: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            // Symmetric grading: map t through a smoothstep-like power law.
            let s = if t < 0.5 {
                0.5 * (2.0 * t).powf(g)
            } else {
                1.0 - 0.5 * (2.0 * (1.0 - t)).powf(g)
            };
            lo + (hi - lo) * s
        })
        .collect();
    grid[n - 1] = hi;
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn interpolation_and_clamping() {
        let p = RadialProfile::new(vec![0.2, 0.4, 0.8], vec![1.0, 3.0, 1.0]).unwrap();
        assert_relative_eq!(p.value(0.3), 2.0);
        assert_relative_eq!(p.value(0.6), 2.0);
        assert_relative_eq!(p.value(0.1), 1.0); // clamped left
        assert_relative_eq!(p.value(0.9), 1.0); // clamped right
        assert_relative_eq!(p.slope(0.3), 10.0);
        assert_relative_eq!(p.slope(0.6), -5.0);
        assert_eq!(p.slope(0.9), 0.0);
    }

    #[test]
    fn refinement_preserves_function() {
        let p = RadialProfile::new(vec![0.0, 0.5, 1.0], vec![0.0, 2.0, 1.0]).unwrap();
        let r = p.refine_midpoints();
        assert_eq!(r.len(), 5);
        for t in [0.0, 0.13, 0.5, 0.77, 1.0] {
            assert_relative_eq!(p.value(t), r.value(t), max_relative = 1e-15);
        }
    }

    #[test]
    fn node_merge_preserves_function() {
        let p = RadialProfile::new(vec![0.0, 1.0], vec![0.0, 4.0]).unwrap();
        let m = p.with_nodes(&[0.25, 0.5, 0.75, 2.0, -1.0]);
        assert_eq!(m.len(), 5);
        for t in [0.1, 0.3, 0.6, 0.99] {
            assert_relative_eq!(p.value(t), m.value(t), max_relative = 1e-15);
        }
    }

    #[test]
    fn grids() {
        let u = uniform_grid(0.0, 1.0, 5);
        assert_eq!(u, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = graded_grid(0.0, 1.0, 9, 2.0);
        assert_eq!(g.len(), 9);
        assert!(g[1] - g[0] < u[1] - u[0]); // clustered at the ends
        assert_relative_eq!(g[4], 0.5);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(RadialProfile::new(vec![0.0], vec![1.0]).is_err());
        assert!(RadialProfile::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(RadialProfile::new(vec![0.0, 1.0], vec![1.0, f64::NAN]).is_err());
        // ±∞ values are allowed (infinite-energy witnesses).
        assert!(RadialProfile::new(vec![0.0, 1.0], vec![1.0, f64::INFINITY]).is_ok());
    }
}
