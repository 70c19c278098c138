//! First eigenvalues, Poincare constants and analytic bounds.
//!
//! In the A frame (unit gap) the first Laplace eigenvalue is exactly `pi^2`
//! for every `A`. The first Stokes eigenvalue is the square of the smallest
//! positive root of the Stokes eigencondition and lies between `pi^2` and the
//! square of the first zero of `J_{3/2}` (its value on the punctured ball).

use core::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::geometry::{Frame, ShellGeometry};
use crate::rootfind::{smallest_positive_root, try_smallest_positive_root, RootSearchConfig};
use crate::specfun;

/// The operator whose spectrum is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Scalar Dirichlet Laplacian.
    Laplace,
    /// Stokes operator on solenoidal fields with zero trace.
    Stokes,
}

impl Operator {
    /// Multiplicity of the first eigenvalue: simple for Laplace, triple for Stokes.
    pub fn first_multiplicity(self) -> u32 {
        match self {
            Operator::Laplace => 1,
            Operator::Stokes => 3,
        }
    }
}

/// How an eigenvalue was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Exact formula.
    ClosedForm,
    /// Root of a transcendental eigencondition.
    RootFind,
    /// Finite-difference oracle.
    Oracle,
}

/// A first eigenvalue with its Poincare constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResult {
    /// Operator.
    pub operator: Operator,
    /// Normalization the values refer to.
    pub frame: Frame,
    /// Smallest positive root `kappa`.
    pub kappa: f64,
    /// `kappa^2`.
    pub lambda: f64,
    /// Multiplicity of the eigenvalue.
    pub multiplicity: u32,
    /// Poincare constant `lambda^{-1/2}`.
    pub poincare: f64,
    /// Provenance.
    pub method: Method,
}

impl EigenResult {
    /// Build from `kappa`, filling `lambda` and the Poincare constant.
    pub fn from_kappa(operator: Operator, frame: Frame, kappa: f64, method: Method) -> Self {
        EigenResult {
            operator,
            frame,
            kappa,
            lambda: kappa * kappa,
            multiplicity: operator.first_multiplicity(),
            poincare: 1.0 / kappa,
            method,
        }
    }
}

/// First Laplace eigenvalue, `kappa = pi / (R_o - R_i)`.
pub fn laplace_first(geom: &ShellGeometry) -> EigenResult {
    EigenResult::from_kappa(Operator::Laplace, geom.frame(), PI / geom.gap(), Method::ClosedForm)
}

/// First Laplace eigenvalue by root finding on the Bessel cross product.
///
/// On the punctured ball the root of `J_{1/2}` is used instead.
pub fn laplace_first_rootfind(geom: &ShellGeometry, cfg: &RootSearchConfig) -> Result<EigenResult> {
    let cfg = cfg.scaled(1.0 / geom.gap());
    let kappa = if geom.is_punctured_ball() {
        let ro = geom.r_outer();
        try_smallest_positive_root(|k| specfun::bessel_half(k * ro), &cfg)?
    } else {
        try_smallest_positive_root(|k| specfun::laplace_eigencondition_cross(k, geom), &cfg)?
    };
    Ok(EigenResult::from_kappa(Operator::Laplace, geom.frame(), kappa, Method::RootFind))
}

/// First positive root of `tan x = x`, computed through `x cos x - sin x`.
pub fn first_zero_j3half(cfg: &RootSearchConfig) -> Result<f64> {
    smallest_positive_root(|x| x * libm::cos(x) - libm::sin(x), cfg)
}

/// First Stokes eigenvalue with the default root search.
pub fn stokes_first(geom: &ShellGeometry) -> Result<EigenResult> {
    stokes_first_with(geom, &RootSearchConfig::default())
}

/// First Stokes eigenvalue.
///
/// `cfg` is given in A-frame units; it is rescaled to the geometry's frame.
/// The punctured ball takes the closed path through the first zero of `J_{3/2}`.
pub fn stokes_first_with(geom: &ShellGeometry, cfg: &RootSearchConfig) -> Result<EigenResult> {
    let kappa = if geom.is_punctured_ball() {
        first_zero_j3half(cfg)? / geom.r_outer()
    } else {
        let scaled = cfg.scaled(1.0 / geom.gap());
        try_smallest_positive_root(|k| specfun::stokes_eigencondition(k, geom), &scaled)?
    };
    Ok(EigenResult::from_kappa(Operator::Stokes, geom.frame(), kappa, Method::RootFind))
}

/// The 1D interval eigenvalue `pi^2` recovered by both operators as `A -> infinity`.
pub fn small_gap_reference() -> f64 {
    PI * PI
}

/// Analytic upper bounds on the Laplace Poincare constant of `Omega_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSet {
    /// Inverse relative gap width.
    pub a: f64,
    /// `diam / 2 = (A + 2) / 2`.
    pub diam_half: f64,
    /// `diam / (pi sqrt 2) = (sqrt 2 / pi)(1 + A/2)`.
    pub diam_over_pi_sqrt2: f64,
    /// `(1/pi)(1 + 2/A)`; absent (vacuous) at `A = 0`.
    pub nazarov: Option<f64>,
    /// Minimum of the two sharper bounds.
    pub best: f64,
}

/// Bounds for the shell's `A` (independent of frame).
pub fn bounds_for(geom: &ShellGeometry) -> BoundSet {
    let a = geom.a();
    let diam_over_pi_sqrt2 = SQRT_2 / PI * (1.0 + 0.5 * a);
    let nazarov = (a > 0.0).then(|| (1.0 + 2.0 / a) / PI);
    let best = nazarov.map_or(diam_over_pi_sqrt2, |n| n.min(diam_over_pi_sqrt2));
    BoundSet { a, diam_half: 0.5 * (a + 2.0), diam_over_pi_sqrt2, nazarov, best }
}

/// Upper end of the Stokes sandwich `pi <= kappa_S(A) <= 4.4934094580`.
pub const STOKES_KAPPA_UPPER: f64 = 4.493_409_458_0;

/// One row of the A-sweep table (A-frame values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    /// Inverse relative gap width.
    pub a: f64,
    /// Radius ratio.
    pub sigma: f64,
    /// Laplace root.
    pub kappa_l: f64,
    /// Laplace eigenvalue.
    pub lambda_l: f64,
    /// Laplace Poincare constant.
    pub c_p: f64,
    /// Stokes root.
    pub kappa_s: f64,
    /// Stokes eigenvalue.
    pub lambda_s: f64,
    /// Stokes Poincare constant.
    pub c_ps: f64,
}

/// Compute the table row at `a`.
pub fn table_row(a: f64) -> Result<TableRow> {
    let geom = ShellGeometry::from_a(a)?;
    let lap = laplace_first(&geom);
    let sto = stokes_first(&geom)?;
    Ok(TableRow {
        a,
        sigma: geom.sigma(),
        kappa_l: lap.kappa,
        lambda_l: lap.lambda,
        c_p: lap.poincare,
        kappa_s: sto.kappa,
        lambda_s: sto.lambda,
        c_ps: sto.poincare,
    })
}

/// Why a row failed [`check_table_row`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowViolation {
    /// `c_pS <= c_p` failed.
    StokesAboveLaplace,
    /// `c_p <= best bound` failed.
    LaplaceAboveBound,
    /// `pi <= kappa_S <= 4.4934094580` failed.
    StokesOutsideSandwich,
}

/// Re-assert ordering and sandwich on a row, with absolute `slack`.
pub fn check_table_row(row: &TableRow, slack: f64) -> core::result::Result<(), RowViolation> {
    if row.c_ps > row.c_p + slack {
        return Err(RowViolation::StokesAboveLaplace);
    }
    if row.a > 0.0 {
        let geom = ShellGeometry::from_a(row.a).map_err(|_| RowViolation::LaplaceAboveBound)?;
        if row.c_p > bounds_for(&geom).best + slack {
            return Err(RowViolation::LaplaceAboveBound);
        }
    }
    if row.kappa_s < PI - slack || row.kappa_s > STOKES_KAPPA_UPPER + slack {
        return Err(RowViolation::StokesOutsideSandwich);
    }
    Ok(())
}

impl From<RowViolation> for Error {
    fn from(v: RowViolation) -> Self {
        Error::InvalidArgument(match v {
            RowViolation::StokesAboveLaplace => "row violates c_pS <= c_p",
            RowViolation::LaplaceAboveBound => "row violates c_p <= best bound",
            RowViolation::StokesOutsideSandwich => "row violates pi <= kappa_S <= j_{3/2,1}",
        })
    }
}
