//! Parameter grids for table sweeps.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Spacing of grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridScale {
    /// Logarithmic spacing (requires `min > 0`).
    Log,
    /// Uniform spacing.
    Linear,
}

/// A one-dimensional grid `min..=max` with `points` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// First point.
    pub min: f64,
    /// Last point.
    pub max: f64,
    /// Number of base points, at least 2.
    pub points: usize,
    /// Spacing.
    pub scale: GridScale,
}

/// Base intervals entirely below this `A` are refined by [`DENSIFY_FACTOR`] on log grids.
pub const DENSIFY_BELOW: f64 = 1.0;
/// Refinement factor below [`DENSIFY_BELOW`].
pub const DENSIFY_FACTOR: usize = 4;

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { min: 1e-3, max: 1e3, points: 400, scale: GridScale::Log }
    }
}

impl GridSpec {
    /// Check `min < max`, `points >= 2`, and `min > 0` for log grids.
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(Error::InvalidArgument("grid needs finite min < max"));
        }
        if self.points < 2 {
            return Err(Error::InvalidArgument("grid needs at least 2 points"));
        }
        if self.scale == GridScale::Log && self.min <= 0.0 {
            return Err(Error::InvalidArgument("log grid needs min > 0"));
        }
        Ok(())
    }

    /// The base grid points, ascending, with the exact endpoints.
    pub fn values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.points;
        let last = (n - 1) as f64;
        let mut out: Vec<f64> = match self.scale {
            GridScale::Linear => (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / last)
                .collect(),
            GridScale::Log => {
                let (l0, l1) = (libm::log(self.min), libm::log(self.max));
                (0..n).map(|i| libm::exp(l0 + (l1 - l0) * i as f64 / last)).collect()
            }
        };
        out[0] = self.min;
        out[n - 1] = self.max;
        Ok(out)
    }

    /// Grid used for tables: log grids get [`DENSIFY_FACTOR`] times the point
    /// density on every base interval below [`DENSIFY_BELOW`].
    pub fn table_values(&self) -> Result<Vec<f64>> {
        let base = self.values()?;
        if self.scale == GridScale::Linear {
            return Ok(base);
        }
        let mut out = Vec::with_capacity(base.len() * DENSIFY_FACTOR);
        for pair in base.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            out.push(lo);
            if hi <= DENSIFY_BELOW {
                let (l0, l1) = (libm::log(lo), libm::log(hi));
                for j in 1..DENSIFY_FACTOR {
                    let t = j as f64 / DENSIFY_FACTOR as f64;
                    out.push(libm::exp(l0 + (l1 - l0) * t));
                }
            }
        }
        out.push(*base.last().expect("grid has at least two points"));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_grid() {
        let g = GridSpec::default();
        let base = g.values().unwrap();
        assert_eq!(base.len(), 400);
        let dense = g.table_values().unwrap();
        let below = base.iter().filter(|&&a| a < 1.0).count();
        let below_dense = dense.iter().filter(|&&a| a < 1.0).count();
        assert!(below_dense >= 4 * (below - 1));
        assert!(dense.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(dense[0], 1e-3);
        assert_eq!(*dense.last().unwrap(), 1e3);
    }

    #[test]
    fn linear_grid_is_not_densified() {
        let g = GridSpec { min: 0.0, max: 2.0, points: 5, scale: GridScale::Linear };
        assert_eq!(g.table_values().unwrap(), alloc::vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn invalid_grids() {
        assert!(GridSpec { min: 0.0, max: 1.0, points: 10, scale: GridScale::Log }.validate().is_err());
        assert!(GridSpec { min: 1.0, max: 1.0, points: 10, scale: GridScale::Linear }.validate().is_err());
        assert!(GridSpec { min: 0.0, max: 1.0, points: 1, scale: GridScale::Linear }.validate().is_err());
    }
}
