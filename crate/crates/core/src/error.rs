//! Crate error type.

use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of a function (e.g. `t <= 0` for a Bessel function).
    Domain {
        /// Function that rejected the argument.
        what: &'static str,
        /// Offending value.
        value: f64,
    },
    /// Shell parameters do not describe a valid shell.
    InvalidGeometry(&'static str),
    /// A generic invalid argument (node counts, mode indices, ...).
    InvalidArgument(&'static str),
    /// The upward scan found no sign change below `scan_max`.
    NoSignChange {
        /// Upper end of the scanned range.
        scan_max: f64,
    },
    /// Bisection did not reach the requested tolerance.
    Unconverged {
        /// Width of the last bracket.
        width: f64,
    },
    /// The refinement re-scan found a sign change below the reported root.
    EarlierRoot {
        /// Left end of the earlier bracket.
        at: f64,
    },
    /// The cross-product branch would lose precision at this argument.
    LossOfPrecision {
        /// The small Bessel argument that triggered it.
        argument: f64,
    },
    /// The Bessel ratio form of an eigenfunction has a vanishing denominator.
    NormalizationSingular,
    /// A Green's function was evaluated on its diagonal.
    Singularity,
    /// The last kept image-series term is larger than the requested tail tolerance.
    TruncationInsufficient {
        /// Magnitude of the last kept term.
        last_term: f64,
        /// Requested tolerance.
        tail_tol: f64,
    },
    /// An iteration did not settle.
    NonConvergence {
        /// Iterations performed.
        iterations: usize,
    },
    /// Grid size is too large for double precision second differences.
    IllConditioned {
        /// Requested grid size.
        n_grid: usize,
    },
    /// A function evaluation returned NaN or infinity.
    NonFinite {
        /// Argument at which it happened.
        at: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what}: argument {value} outside domain"),
            Error::InvalidGeometry(msg) => write!(f, "invalid geometry: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NoSignChange { scan_max } => {
                write!(f, "no sign change found in (0, {scan_max}]")
            }
            Error::Unconverged { width } => {
                write!(f, "bisection unconverged, bracket width {width:e}")
            }
            Error::EarlierRoot { at } => {
                write!(f, "fine re-scan found an earlier sign change near {at}")
            }
            Error::LossOfPrecision { argument } => {
                write!(f, "cross-product branch loses precision at argument {argument}")
            }
            Error::NormalizationSingular => write!(f, "eigenfunction ratio denominator vanishes"),
            Error::Singularity => write!(f, "Green's function evaluated at x = y"),
            Error::TruncationInsufficient { last_term, tail_tol } => write!(
                f,
                "image series truncated too early: last term {last_term:e} exceeds {tail_tol:e}"
            ),
            Error::NonConvergence { iterations } => {
                write!(f, "no convergence after {iterations} iterations")
            }
            Error::IllConditioned { n_grid } => write!(f, "grid of {n_grid} points is ill-conditioned"),
            Error::NonFinite { at } => write!(f, "non-finite function value at {at}"),
        }
    }
}

impl core::error::Error for Error {}
