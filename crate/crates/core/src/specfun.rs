//! Half-integer order Bessel functions in closed form and the eigencondition
//! functions built from them.
//!
//! `J_{+-1/2}` and `J_{+-3/2}` are elementary:
//!
//! ```text
//! J_{1/2}(t)  =  sqrt(2/(pi t)) sin t
//! J_{-1/2}(t) =  sqrt(2/(pi t)) cos t
//! J_{3/2}(t)  =  sqrt(2/(pi t)) (sin t / t - cos t)  =  J_{1/2}(t)/t - J_{-1/2}(t)
//! J_{-3/2}(t) = -sqrt(2/(pi t)) (sin t + cos t / t)
//! ```
//!
//! The order-3/2 pair switches to a ten-term ascending series below
//! [`SERIES_THRESHOLD`], where `sin t / t - cos t` cancels.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::ShellGeometry;

/// Below this argument `J_{+-3/2}` are summed from their ascending series.
pub const SERIES_THRESHOLD: f64 = 0.1;

const SERIES_TERMS: usize = 10;

fn check_arg(what: &'static str, t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: t })
    }
}

#[inline]
fn amplitude(t: f64) -> f64 {
    libm::sqrt(2.0 / (t * PI))
}

/// `J_{1/2}(t)` for `t > 0`.
pub fn bessel_half(t: f64) -> Result<f64> {
    check_arg("J_1/2", t)?;
    Ok(amplitude(t) * libm::sin(t))
}

/// `J_{-1/2}(t)` for `t > 0`.
pub fn bessel_neg_half(t: f64) -> Result<f64> {
    check_arg("J_-1/2", t)?;
    Ok(amplitude(t) * libm::cos(t))
}

/// `J_{3/2}(t)` for `t > 0`.
pub fn bessel_three_half(t: f64) -> Result<f64> {
    check_arg("J_3/2", t)?;
    if t < SERIES_THRESHOLD {
        return Ok(ascending_series(1.5, t));
    }
    let (s, c) = (libm::sin(t), libm::cos(t));
    Ok(amplitude(t) * (s / t - c))
}

/// `J_{-3/2}(t)` for `t > 0`.
pub fn bessel_neg_three_half(t: f64) -> Result<f64> {
    check_arg("J_-3/2", t)?;
    if t < SERIES_THRESHOLD {
        return Ok(ascending_series(-1.5, t));
    }
    let (s, c) = (libm::sin(t), libm::cos(t));
    Ok(-amplitude(t) * (s + c / t))
}

/// `sum_m (-1)^m (t/2)^(2m+nu) / (m! Gamma(m+nu+1))` for `nu = +-3/2`.
fn ascending_series(nu: f64, t: f64) -> f64 {
    let half = 0.5 * t;
    // Gamma(5/2) = 3 sqrt(pi)/4, Gamma(-1/2) = -2 sqrt(pi)
    let sqrt_pi = libm::sqrt(PI);
    let (power, gamma) = if nu > 0.0 {
        (half * libm::sqrt(half), 0.75 * sqrt_pi)
    } else {
        (1.0 / (half * libm::sqrt(half)), -2.0 * sqrt_pi)
    };
    let q = -half * half;
    let mut term = power / gamma;
    let mut sum = term;
    for m in 0..SERIES_TERMS - 1 {
        let mf = m as f64 + 1.0;
        term *= q / (mf * (mf + nu));
        sum += term;
    }
    sum
}

/// The eigencondition functions available for root finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenconditionKind {
    /// Closed sine form of the Laplace cross product.
    LaplaceSine,
    /// `J_{1/2}(k R_o) J_{-1/2}(k R_i) - J_{1/2}(k R_i) J_{-1/2}(k R_o)`.
    LaplaceCross,
    /// `J_{3/2}(k R_o) J_{-3/2}(k R_i) - J_{3/2}(k R_i) J_{-3/2}(k R_o)`.
    StokesCross,
    /// Trigonometric rewriting of [`StokesCross`](Self::StokesCross) without its positive prefactor.
    StokesTrig,
}

impl EigenconditionKind {
    /// Evaluate at wavenumber `kappa` on `geom` (radii taken in the geometry's frame).
    pub fn evaluate(self, kappa: f64, geom: &ShellGeometry) -> Result<f64> {
        match self {
            EigenconditionKind::LaplaceSine => laplace_eigencondition(kappa, geom),
            EigenconditionKind::LaplaceCross => laplace_eigencondition_cross(kappa, geom),
            EigenconditionKind::StokesCross => stokes_eigencondition_cross(kappa, geom),
            EigenconditionKind::StokesTrig => stokes_eigencondition(kappa, geom),
        }
    }
}

fn check_kappa_and_shell(kappa: f64, geom: &ShellGeometry) -> Result<()> {
    check_arg("eigencondition kappa", kappa)?;
    if geom.is_punctured_ball() {
        return Err(Error::Domain { what: "eigencondition inner radius", value: 0.0 });
    }
    Ok(())
}

/// Laplace eigencondition in closed form,
/// `2 / (pi kappa sqrt(R_i R_o)) * sin(kappa (R_o - R_i))`.
///
/// In the A frame this is `(2/(pi kappa)) [(A/2)(1+A/2)]^{-1/2} sin kappa`.
pub fn laplace_eigencondition(kappa: f64, geom: &ShellGeometry) -> Result<f64> {
    check_kappa_and_shell(kappa, geom)?;
    let (ri, ro) = (geom.r_inner(), geom.r_outer());
    let gap = geom.gap();
    Ok(2.0 / (PI * kappa * libm::sqrt(ri * ro)) * libm::sin(kappa * gap))
}

/// Laplace eigencondition as the Bessel cross product.
pub fn laplace_eigencondition_cross(kappa: f64, geom: &ShellGeometry) -> Result<f64> {
    check_kappa_and_shell(kappa, geom)?;
    let inner = kappa * geom.r_inner();
    let outer = kappa * geom.r_outer();
    cross(bessel_half, bessel_neg_half, inner, outer)
}

fn cross(
    pos: fn(f64) -> Result<f64>,
    neg: fn(f64) -> Result<f64>,
    inner: f64,
    outer: f64,
) -> Result<f64> {
    Ok(pos(outer)? * neg(inner)? - pos(inner)? * neg(outer)?)
}

/// Stokes eigencondition, trigonometric form (canonical).
///
/// With `a = kappa R_i`, `b = kappa R_o`:
///
/// ```text
/// F = -(1 + 1/(a b)) sin(b - a) + (b - a)/(a b) cos(b - a)
/// ```
///
/// which in the A frame (`R = A/2`) reads
/// `-(1 + 1/(kappa^2 R(1+R))) sin kappa + cos kappa / (kappa R(1+R))`.
/// The cross product equals `2/(pi sqrt(a b)) * F`.
pub fn stokes_eigencondition(kappa: f64, geom: &ShellGeometry) -> Result<f64> {
    check_kappa_and_shell(kappa, geom)?;
    Ok(stokes_trig(kappa * geom.r_inner(), kappa * geom.r_outer(), kappa * geom.gap()))
}

#[inline]
pub(crate) fn stokes_trig(a: f64, b: f64, d: f64) -> f64 {
    let ab = a * b;
    -(1.0 + 1.0 / ab) * libm::sin(d) + d / ab * libm::cos(d)
}

/// The positive factor relating the two Stokes branches: cross = factor * trig.
pub fn stokes_prefactor(kappa: f64, geom: &ShellGeometry) -> f64 {
    2.0 / (PI * kappa * libm::sqrt(geom.r_inner() * geom.r_outer()))
}

/// Stokes eigencondition as the Bessel cross product.
///
/// Fails with [`Error::LossOfPrecision`] when `kappa R_i` is below the series switch.
pub fn stokes_eigencondition_cross(kappa: f64, geom: &ShellGeometry) -> Result<f64> {
    check_kappa_and_shell(kappa, geom)?;
    let inner = kappa * geom.r_inner();
    if inner < SERIES_THRESHOLD {
        return Err(Error::LossOfPrecision { argument: inner });
    }
    cross(bessel_three_half, bessel_neg_three_half, inner, kappa * geom.r_outer())
}
