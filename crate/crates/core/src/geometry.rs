//! Shell geometry in the two canonical normalizations.

use crate::error::{Error, Result};

/// Which normalization a geometry (and the eigenvalues computed on it) uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// Gap width `R_o - R_i = 1`, radii `A/2` and `1 + A/2`.
    A,
    /// Outer radius 1, radii `sigma` and `1`.
    Sigma,
}

/// How a shell is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShellParam {
    /// Inverse relative gap width `A >= 0`.
    A(f64),
    /// Radius ratio `sigma` in `[0, 1)`.
    Sigma(f64),
    /// Explicit radii `0 <= inner < outer`; rescaled to the A frame.
    Radii {
        /// Inner radius.
        inner: f64,
        /// Outer radius.
        outer: f64,
    },
}

/// A spherical shell, with all parameterizations kept mutually consistent.
///
/// `A = 0` (equivalently `sigma = 0`) is the punctured unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellGeometry {
    a: f64,
    sigma: f64,
    r_inner: f64,
    r_outer: f64,
    frame: Frame,
}

/// Build a geometry from any of its parameterizations.
pub fn geometry_from(param: ShellParam) -> Result<ShellGeometry> {
    match param {
        ShellParam::A(a) => ShellGeometry::from_a(a),
        ShellParam::Sigma(s) => ShellGeometry::from_sigma(s),
        ShellParam::Radii { inner, outer } => ShellGeometry::from_radii(inner, outer),
    }
}

impl ShellGeometry {
    /// Shell `Omega_A` with radii `A/2` and `1 + A/2`.
    pub fn from_a(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidGeometry("A must be finite"));
        }
        if a < 0.0 {
            return Err(Error::InvalidGeometry("A must be nonnegative"));
        }
        Ok(ShellGeometry {
            a,
            sigma: a / (a + 2.0),
            r_inner: 0.5 * a,
            r_outer: 1.0 + 0.5 * a,
            frame: Frame::A,
        })
    }

    /// Shell `Omega*_sigma` with radii `sigma` and `1`.
    pub fn from_sigma(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() {
            return Err(Error::InvalidGeometry("sigma must be finite"));
        }
        if sigma < 0.0 {
            return Err(Error::InvalidGeometry("sigma must be nonnegative"));
        }
        if sigma >= 1.0 {
            return Err(Error::InvalidGeometry("sigma must be below 1"));
        }
        Ok(ShellGeometry {
            a: 2.0 * sigma / (1.0 - sigma),
            sigma,
            r_inner: sigma,
            r_outer: 1.0,
            frame: Frame::Sigma,
        })
    }

    /// Shell with the given radii, rescaled to unit gap width (A frame).
    pub fn from_radii(inner: f64, outer: f64) -> Result<Self> {
        if !inner.is_finite() || !outer.is_finite() {
            return Err(Error::InvalidGeometry("radii must be finite"));
        }
        if inner < 0.0 {
            return Err(Error::InvalidGeometry("inner radius must be nonnegative"));
        }
        if inner >= outer {
            return Err(Error::InvalidGeometry("inner radius must be below outer radius"));
        }
        let gap = outer - inner;
        Ok(ShellGeometry {
            a: 2.0 * inner / gap,
            sigma: inner / outer,
            r_inner: inner / gap,
            r_outer: outer / gap,
            frame: Frame::A,
        })
    }

    /// The same shell in the other canonical normalization.
    pub fn in_frame(&self, frame: Frame) -> Self {
        match frame {
            Frame::A => ShellGeometry {
                r_inner: 0.5 * self.a,
                r_outer: 1.0 + 0.5 * self.a,
                frame,
                ..*self
            },
            Frame::Sigma => ShellGeometry {
                r_inner: self.sigma,
                r_outer: 1.0,
                frame,
                ..*self
            },
        }
    }

    /// Inverse relative gap width.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Radius ratio.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Inner radius in this geometry's frame.
    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    /// Outer radius in this geometry's frame.
    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    /// Gap width `R_o - R_i` in this geometry's frame.
    pub fn gap(&self) -> f64 {
        self.r_outer - self.r_inner
    }

    /// Normalization of the radii.
    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Whether this is the punctured ball (`A = 0`).
    pub fn is_punctured_ball(&self) -> bool {
        self.r_inner == 0.0
    }

    /// Factor `1 + A/2` converting A-frame wavenumbers to sigma-frame ones.
    pub fn frame_scale(&self) -> f64 {
        1.0 + 0.5 * self.a
    }
}
