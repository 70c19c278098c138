//! Finite-difference eigensolver for the radial reductions, used as an
//! independent check of the root-finding results.
//!
//! With `v = r u` the radial eigenproblem
//! `-(u'' + (2/r) u' - l(l+1) u / r^2) = lambda u` becomes
//! `-v'' + l(l+1) v / r^2 = lambda v` with `v = 0` at both radii. Second-order
//! central differences on a uniform grid give a symmetric tridiagonal matrix
//! whose smallest eigenvalue is isolated by Sturm-sequence bisection.

use alloc::vec::Vec;

use crate::eigenfun::RadialProfile;
use crate::error::{Error, Result};
use crate::geometry::ShellGeometry;

/// Largest accepted grid size.
pub const MAX_GRID: usize = 1_000_000;

/// A radial eigenproblem: `l = 0` is the Laplace reduction, `l = 1` the Stokes first mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProblem {
    /// Shell (radii in its frame).
    pub geom: ShellGeometry,
    /// Angular degree, 0 or 1.
    pub l: u32,
    /// Number of grid intervals.
    pub n_grid: usize,
}

impl RadialProblem {
    /// Validate and build.
    pub fn new(geom: ShellGeometry, l: u32, n_grid: usize) -> Result<Self> {
        if l > 1 {
            return Err(Error::InvalidArgument("oracle supports l = 0 and l = 1 only"));
        }
        if n_grid < 64 {
            return Err(Error::InvalidArgument("oracle grid needs at least 64 intervals"));
        }
        if n_grid > MAX_GRID {
            return Err(Error::IllConditioned { n_grid });
        }
        Ok(RadialProblem { geom, l, n_grid })
    }

    fn tridiagonal(&self) -> (Vec<f64>, f64) {
        let (ri, ro) = (self.geom.r_inner(), self.geom.r_outer());
        let h = (ro - ri) / self.n_grid as f64;
        let inv_h2 = 1.0 / (h * h);
        let ll = f64::from(self.l * (self.l + 1));
        let diag = (1..self.n_grid)
            .map(|i| {
                let r = ri + i as f64 * h;
                2.0 * inv_h2 + ll / (r * r)
            })
            .collect();
        (diag, -inv_h2)
    }
}

/// Number of eigenvalues below `x` of the tridiagonal matrix with constant off-diagonal `off`.
fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = 1.0;
    for (i, d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - off2 / q };
        if q == 0.0 {
            q = f64::EPSILON * (d.abs() + off.abs());
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue of the discretized problem.
pub fn radial_eigenvalue(problem: &RadialProblem) -> Result<f64> {
    let problem = RadialProblem::new(problem.geom, problem.l, problem.n_grid)?;
    let (diag, off) = problem.tridiagonal();
    let mut lo = diag.iter().fold(f64::INFINITY, |m, d| m.min(*d)) - 2.0 * off.abs();
    let mut hi = diag.iter().fold(f64::NEG_INFINITY, |m, d| m.max(*d)) + 2.0 * off.abs();
    lo = lo.min(0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs() || mid <= lo || mid >= hi {
            return Ok(0.5 * (lo + hi));
        }
        if sturm_count(&diag, off, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence { iterations: 200 })
}

/// Rayleigh quotient `int (u'^2 + l(l+1) u^2 / r^2) r^2 dr / int u^2 r^2 dr` of a sampled profile.
///
/// Derivatives by three-point differences (one-sided at the ends), integrals
/// by the trapezoid rule.
pub fn rayleigh_quotient(profile: &RadialProfile, l: u32) -> Result<f64> {
    let s = &profile.samples;
    let n = s.len();
    if n < 3 {
        return Err(Error::InvalidArgument("Rayleigh quotient needs at least 3 samples"));
    }
    let ll = f64::from(l * (l + 1));
    let deriv = |i: usize| -> f64 {
        let (i0, i1, i2) = if i == 0 {
            (0, 1, 2)
        } else if i == n - 1 {
            (n - 3, n - 2, n - 1)
        } else {
            (i - 1, i, i + 1)
        };
        let (x0, y0) = s[i0];
        let (x1, y1) = s[i1];
        let (x2, y2) = s[i2];
        let x = s[i].0;
        // derivative of the quadratic through the three points
        y0 * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2))
            + y1 * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2))
            + y2 * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1))
    };
    let energy: Vec<f64> = (0..n)
        .map(|i| {
            let (r, u) = s[i];
            let du = deriv(i);
            du * du * r * r + ll * u * u
        })
        .collect();
    let mass: Vec<f64> = s.iter().map(|&(r, u)| u * u * r * r).collect();
    let trap = |v: &[f64]| -> f64 {
        v.windows(2)
            .zip(s.windows(2))
            .map(|(f, x)| 0.5 * (f[0] + f[1]) * (x[1].0 - x[0].0))
            .sum()
    };
    let m = trap(&mass);
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidArgument("profile has zero mass"));
    }
    Ok(trap(&energy) / m)
}
