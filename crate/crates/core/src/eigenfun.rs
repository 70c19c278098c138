//! Radial parts of the first Laplace and Stokes eigenfunctions, their
//! L2 normalization, the small-gap `sin(pi s)` approximation, and the three
//! degree-one angular fields of the Stokes eigenspace.
//!
//! Radial shapes (up to normalization), with `kappa` the first root:
//!
//! ```text
//! Laplace: u(r) = r^{-1/2} (J_{1/2}(kappa r) - q J_{-1/2}(kappa r)),  q = J_{1/2}(kappa R_i) / J_{-1/2}(kappa R_i)
//! Stokes:  f(r) = r^{-1/2} (J_{3/2}(kappa r) - q J_{-3/2}(kappa r)),  q = J_{3/2}(kappa R_i) / J_{-3/2}(kappa R_i)
//! ```
//!
//! When the denominator of `q` is close to zero the boundary-anchored cross
//! form is used instead (for Laplace this is `sin(kappa (r - R_i)) / r`).
//! Profiles are scaled so that `integral(f^2 r^2 dr) * angular_l2 = 1` and the
//! value at the mid radius is positive.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::ShellGeometry;
use crate::quadrature::{gauss_legendre, Rule};
use crate::specfun::{self, bessel_half, bessel_neg_half, bessel_neg_three_half, bessel_three_half};
use crate::spectra::{laplace_first, stokes_first, Operator};

/// Angular L2 factor of a radial scalar: area of the unit sphere.
pub const LAPLACE_ANGULAR_L2: f64 = 4.0 * PI;
/// `integral over the sphere of |w_alpha|^2`, the same for all three modes.
pub const STOKES_ANGULAR_L2: f64 = 8.0 * PI / 3.0;

/// Gauss-Legendre panels per unit radial length used for normalization.
pub const PANELS_PER_UNIT: usize = 4;
/// Nodes per panel (64 nodes per unit length in total).
pub const PANEL_ORDER: usize = 16;

/// Relative size below which a ratio denominator counts as vanishing.
const SINGULAR_TOL: f64 = 1e-4;

/// Sampled, normalized radial eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// Shell the profile lives on (radii in its frame).
    pub geom: ShellGeometry,
    /// Operator.
    pub operator: Operator,
    /// `(r, value)` pairs, ascending in `r`.
    pub samples: Vec<(f64, f64)>,
    /// Positive scaling constant applied to the raw shape.
    pub norm_constant: f64,
}

impl RadialProfile {
    /// Largest absolute value over the samples.
    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, &(_, v)| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    /// Punctured ball, no second solution.
    Ball,
    /// `J_+(kappa r) - ratio J_-(kappa r)`.
    Ratio(f64),
    /// `J_-(t_i) J_+(kappa r) - J_+(t_i) J_-(kappa r)`.
    Anchored { pos_in: f64, neg_in: f64 },
}

/// A first eigenfunction's radial factor that can be evaluated anywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialEigenfunction {
    operator: Operator,
    geom: ShellGeometry,
    kappa: f64,
    shape: Shape,
    scale: f64,
}

/// Ratio `J_+(t) / J_-(t)`, or [`Error::NormalizationSingular`] if `J_-(t)` is tiny.
fn bessel_ratio(operator: Operator, t: f64) -> Result<f64> {
    let (num, den) = pair_at(operator, t)?;
    if den.abs() < SINGULAR_TOL * libm::hypot(num, den) {
        return Err(Error::NormalizationSingular);
    }
    Ok(num / den)
}

fn pair_at(operator: Operator, t: f64) -> Result<(f64, f64)> {
    Ok(match operator {
        Operator::Laplace => (bessel_half(t)?, bessel_neg_half(t)?),
        Operator::Stokes => (bessel_three_half(t)?, bessel_neg_three_half(t)?),
    })
}

fn angular_l2(operator: Operator) -> f64 {
    match operator {
        Operator::Laplace => LAPLACE_ANGULAR_L2,
        Operator::Stokes => STOKES_ANGULAR_L2,
    }
}

impl RadialEigenfunction {
    /// First eigenfunction of `operator` on `geom`, normalized.
    pub fn new(geom: &ShellGeometry, operator: Operator) -> Result<Self> {
        let kappa = match operator {
            Operator::Laplace => laplace_first(geom).kappa,
            Operator::Stokes => stokes_first(geom)?.kappa,
        };
        Self::with_kappa(geom, operator, kappa)
    }

    /// Eigenfunction for an already computed root `kappa`.
    pub fn with_kappa(geom: &ShellGeometry, operator: Operator, kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Domain { what: "eigenfunction kappa", value: kappa });
        }
        let shape = if geom.is_punctured_ball() {
            Shape::Ball
        } else {
            let t_in = kappa * geom.r_inner();
            match bessel_ratio(operator, t_in) {
                Ok(q) => Shape::Ratio(q),
                Err(Error::NormalizationSingular) => {
                    let (pos_in, neg_in) = pair_at(operator, t_in)?;
                    Shape::Anchored { pos_in, neg_in }
                }
                Err(e) => return Err(e),
            }
        };
        let mut f = RadialEigenfunction { operator, geom: *geom, kappa, shape, scale: 1.0 };
        let mid = 0.5 * (geom.r_inner() + geom.r_outer());
        let sign = if f.raw(mid)? < 0.0 { -1.0 } else { 1.0 };
        let norm = f.norm_constant_with(PANELS_PER_UNIT)?;
        f.scale = sign * norm;
        Ok(f)
    }

    /// Root used.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Operator.
    pub fn operator(&self) -> Operator {
        self.operator
    }

    /// Whether the boundary-anchored fallback form is in use.
    pub fn uses_fallback_form(&self) -> bool {
        matches!(self.shape, Shape::Anchored { .. })
    }

    /// Positive normalization constant.
    pub fn norm_constant(&self) -> f64 {
        self.scale.abs()
    }

    /// Normalization constant computed with `panels_per_unit` GL panels per unit length.
    pub fn norm_constant_with(&self, panels_per_unit: usize) -> Result<f64> {
        let (ri, ro) = (self.geom.r_inner(), self.geom.r_outer());
        let panels = libm::ceil(panels_per_unit as f64 * (ro - ri)).max(1.0) as usize;
        let rule = Rule::composite(ri, ro, panels, PANEL_ORDER);
        let mut err = None;
        let integral = rule.integrate(|r| match self.raw(r) {
            Ok(v) => v * v * r * r,
            Err(e) => {
                err = Some(e);
                0.0
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mass = integral * angular_l2(self.operator);
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::NormalizationSingular);
        }
        Ok(1.0 / libm::sqrt(mass))
    }

    /// Unnormalized radial shape.
    fn raw(&self, r: f64) -> Result<f64> {
        let t = self.kappa * r;
        if r == 0.0 {
            // only reachable on the punctured ball
            return Ok(match self.operator {
                Operator::Laplace => libm::sqrt(2.0 / (PI * self.kappa)) * self.kappa,
                Operator::Stokes => 0.0,
            });
        }
        let (pos, neg) = match self.shape {
            Shape::Ball => {
                let pos = match self.operator {
                    Operator::Laplace => bessel_half(t)?,
                    Operator::Stokes => bessel_three_half(t)?,
                };
                return Ok(pos / libm::sqrt(r));
            }
            _ => pair_at(self.operator, t)?,
        };
        let v = match self.shape {
            Shape::Ratio(q) => pos - q * neg,
            Shape::Anchored { pos_in, neg_in } => neg_in * pos - pos_in * neg,
            Shape::Ball => unreachable!(),
        };
        Ok(v / libm::sqrt(r))
    }

    /// Normalized value at radius `r`; zero outside the shell.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < self.geom.r_inner() || r > self.geom.r_outer() {
            return Ok(0.0);
        }
        Ok(self.scale * self.raw(r)?)
    }

    /// `n_samples` equally spaced samples from `R_i` to `R_o`.
    pub fn profile(&self, n_samples: usize) -> Result<RadialProfile> {
        let samples = sample_radii(&self.geom, n_samples)?
            .into_iter()
            .map(|r| Ok((r, self.eval(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RadialProfile {
            geom: self.geom,
            operator: self.operator,
            samples,
            norm_constant: self.norm_constant(),
        })
    }
}

fn sample_radii(geom: &ShellGeometry, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument("profiles need at least 2 samples"));
    }
    let (ri, ro) = (geom.r_inner(), geom.r_outer());
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|j| if j == n - 1 { ro } else { ri + (ro - ri) * j as f64 / last })
        .collect())
}

/// Normalized first Laplace radial eigenfunction on `geom`.
pub fn laplace_profile(geom: &ShellGeometry, n_samples: usize) -> Result<RadialProfile> {
    RadialEigenfunction::new(geom, Operator::Laplace)?.profile(n_samples)
}

/// Normalized radial factor of the first Stokes eigenfunctions on `geom`.
pub fn stokes_profile(geom: &ShellGeometry, n_samples: usize) -> Result<RadialProfile> {
    RadialEigenfunction::new(geom, Operator::Stokes)?.profile(n_samples)
}

/// Normalized small-gap approximation `c sin(pi s)`, `s = (r - R_i) / (R_o - R_i)`.
pub fn small_gap_profile(geom: &ShellGeometry, operator: Operator, n_samples: usize) -> Result<RadialProfile> {
    let (ri, ro) = (geom.r_inner(), geom.r_outer());
    let gap = geom.gap();
    let shape = |r: f64| libm::sin(PI * (r - ri) / gap);
    let panels = libm::ceil(PANELS_PER_UNIT as f64 * gap).max(1.0) as usize;
    let rule = Rule::composite(ri, ro, panels, PANEL_ORDER);
    let mass = rule.integrate(|r| shape(r) * shape(r) * r * r) * angular_l2(operator);
    let c = 1.0 / libm::sqrt(mass);
    let samples = sample_radii(geom, n_samples)?
        .into_iter()
        .map(|r| (r, c * shape(r)))
        .collect();
    Ok(RadialProfile { geom: *geom, operator, samples, norm_constant: c })
}

/// Sup-norm gap between the exact first eigenfunction and `sin(pi s)`.
///
/// Both shapes are compared in reduced form `r * f(r)` (which removes the
/// slowly varying `1/r` envelope) and divided by their value at `s = 1/2`.
/// For Stokes the exact reduced shape is the trigonometric form
/// `sin(k s) + (sin(k s) - k s cos(k s)) / (k^2 (R+s) R)`, `k = kappa * gap`.
pub fn small_gap_deviation(geom: &ShellGeometry, operator: Operator, n_samples: usize) -> Result<f64> {
    let (ri, gap) = (geom.r_inner(), geom.gap());
    let reduced: alloc::boxed::Box<dyn Fn(f64) -> Result<f64>> = match operator {
        Operator::Laplace => {
            let ef = RadialEigenfunction::new(geom, Operator::Laplace)?;
            alloc::boxed::Box::new(move |r: f64| Ok(r * ef.eval(r)?))
        }
        Operator::Stokes => {
            if geom.is_punctured_ball() {
                return Err(Error::Domain { what: "small-gap deviation inner radius", value: 0.0 });
            }
            let kappa = stokes_first(geom)?.kappa;
            alloc::boxed::Box::new(move |r: f64| {
                let (a, b) = (kappa * ri, kappa * r);
                Ok(-specfun::stokes_trig(a, b, b - a))
            })
        }
    };
    let mid = reduced(ri + 0.5 * gap)?;
    let mut dev: f64 = 0.0;
    for r in sample_radii(geom, n_samples)? {
        let s = (r - ri) / gap;
        let exact = reduced(r)? / mid;
        dev = dev.max((exact - libm::sin(PI * s)).abs());
    }
    Ok(dev)
}

/// One of the three degree-one tangential fields spanning the Stokes eigenspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMode {
    /// Index in `{-1, 0, 1}`.
    pub alpha: i32,
    /// `integral over the unit sphere of |w_alpha|^2`, by quadrature.
    pub angular_l2: f64,
}

/// The mode `w_alpha`.
pub fn angular_mode(alpha: i32) -> Result<AngularMode> {
    if !(-1..=1).contains(&alpha) {
        return Err(Error::InvalidArgument("angular mode index must be -1, 0 or 1"));
    }
    let mut mode = AngularMode { alpha, angular_l2: 0.0 };
    mode.angular_l2 = sphere_inner_product(&mode, &mode);
    Ok(mode)
}

impl AngularMode {
    /// Components `(e_theta, e_phi)` at polar angle `theta`, azimuth `phi`.
    pub fn eval(&self, theta: f64, phi: f64) -> [f64; 2] {
        let (st, ct) = (libm::sin(theta), libm::cos(theta));
        let (sp, cp) = (libm::sin(phi), libm::cos(phi));
        match self.alpha {
            0 => [0.0, st],
            -1 => [cp, -sp * ct],
            _ => [sp, cp * ct],
        }
    }
}

/// `integral over the unit sphere of w_a . w_b`.
///
/// Gauss-Legendre in `cos theta` and the trapezoid rule in `phi`; exact for
/// these low-degree trigonometric integrands.
pub fn sphere_inner_product(a: &AngularMode, b: &AngularMode) -> f64 {
    let (mu, w) = gauss_legendre(24);
    let n_phi = 48;
    let dphi = 2.0 * PI / n_phi as f64;
    let mut sum = 0.0;
    for (m, wm) in mu.iter().zip(&w) {
        let theta = libm::acos(*m);
        for j in 0..n_phi {
            let phi = j as f64 * dphi;
            let (u, v) = (a.eval(theta, phi), b.eval(theta, phi));
            sum += wm * dphi * (u[0] * v[0] + u[1] * v[1]);
        }
    }
    sum
}
