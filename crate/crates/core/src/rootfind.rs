//! Smallest positive root of a scalar function by upward scan and bisection.

use crate::error::{Error, Result};

/// Scan grid and tolerances for [`smallest_positive_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSearchConfig {
    /// First scan point.
    pub scan_start: f64,
    /// Scan step.
    pub scan_step: f64,
    /// Last scan point.
    pub scan_max: f64,
    /// Final bracket width.
    pub abs_tol: f64,
    /// Maximum number of bisection steps.
    pub max_bisections: usize,
}

impl Default for RootSearchConfig {
    fn default() -> Self {
        RootSearchConfig {
            scan_start: 0.05,
            scan_step: 0.05,
            scan_max: 60.0,
            abs_tol: 1e-13,
            max_bisections: 200,
        }
    }
}

impl RootSearchConfig {
    /// Check the invariants of the configuration.
    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.scan_start, self.scan_step, self.scan_max, self.abs_tol]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !all_positive {
            return Err(Error::InvalidArgument("root search parameters must be positive and finite"));
        }
        if self.scan_start >= self.scan_max {
            return Err(Error::InvalidArgument("scan_start must be below scan_max"));
        }
        if self.max_bisections == 0 {
            return Err(Error::InvalidArgument("max_bisections must be positive"));
        }
        Ok(())
    }

    /// All lengths multiplied by `factor` (for problems posed in a rescaled variable).
    pub fn scaled(&self, factor: f64) -> Self {
        RootSearchConfig {
            scan_start: self.scan_start * factor,
            scan_step: self.scan_step * factor,
            scan_max: self.scan_max * factor,
            abs_tol: self.abs_tol * factor,
            max_bisections: self.max_bisections,
        }
    }
}

/// Smallest positive root of an infallible `f`. See [`try_smallest_positive_root`].
pub fn smallest_positive_root<F>(mut f: F, cfg: &RootSearchConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    try_smallest_positive_root(|x| Ok(f(x)), cfg)
}

/// Smallest positive root of `f`.
///
/// Scans `scan_start, scan_start + scan_step, ...` up to `scan_max` for the
/// first sign change, bisects it down to `abs_tol`, then re-scans everything
/// below the bracket at a quarter of the step and fails with
/// [`Error::EarlierRoot`] if that finds a sign change the coarse scan skipped.
/// A scan point where `f` is exactly zero is returned as is.
pub fn try_smallest_positive_root<F>(mut f: F, cfg: &RootSearchConfig) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };

    let (lo, hi, f_lo) = match scan(&mut eval, cfg.scan_start, cfg.scan_max, cfg.scan_step)? {
        Scan::Exact(x) => {
            recheck(&mut eval, cfg, x)?;
            return Ok(x);
        }
        Scan::Bracket(lo, hi, f_lo) => (lo, hi, f_lo),
        Scan::None => return Err(Error::NoSignChange { scan_max: cfg.scan_max }),
    };

    let root = bisect(&mut eval, lo, hi, f_lo, cfg)?;
    recheck(&mut eval, cfg, lo)?;
    Ok(root)
}

enum Scan {
    Exact(f64),
    Bracket(f64, f64, f64),
    None,
}

fn scan<F>(eval: &mut F, start: f64, end: f64, step: f64) -> Result<Scan>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x0 = start;
    let mut f0 = eval(x0)?;
    if f0 == 0.0 {
        return Ok(Scan::Exact(x0));
    }
    let mut i = 1usize;
    while x0 < end {
        let x1 = (start + i as f64 * step).min(end);
        let f1 = eval(x1)?;
        if f1 == 0.0 {
            return Ok(Scan::Exact(x1));
        }
        if (f0 < 0.0) != (f1 < 0.0) {
            return Ok(Scan::Bracket(x0, x1, f0));
        }
        x0 = x1;
        f0 = f1;
        i += 1;
    }
    Ok(Scan::None)
}

fn bisect<F>(eval: &mut F, mut lo: f64, mut hi: f64, mut f_lo: f64, cfg: &RootSearchConfig) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    for _ in 0..cfg.max_bisections {
        if hi - lo <= cfg.abs_tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket is down to adjacent floats
            return Ok(mid);
        }
        let f_mid = eval(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= cfg.abs_tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::Unconverged { width: hi - lo })
    }
}

fn recheck<F>(eval: &mut F, cfg: &RootSearchConfig, below: f64) -> Result<()>
where
    F: FnMut(f64) -> Result<f64>,
{
    if below <= cfg.scan_start {
        return Ok(());
    }
    match scan(eval, cfg.scan_start, below, 0.25 * cfg.scan_step)? {
        Scan::None => Ok(()),
        Scan::Exact(at) if at >= below => Ok(()),
        Scan::Exact(at) | Scan::Bracket(at, _, _) => Err(Error::EarlierRoot { at }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn sine_gives_pi() {
        let r = smallest_positive_root(libm::sin, &RootSearchConfig::default()).unwrap();
        assert!((r - PI).abs() < 1e-13);
    }

    #[test]
    fn tan_x_equals_x() {
        let r = smallest_positive_root(|x| x * libm::cos(x) - libm::sin(x), &RootSearchConfig::default())
            .unwrap();
        assert!((r - crate::FIRST_ZERO_J3HALF).abs() < 1e-12);
    }

    #[test]
    fn exact_zero_on_grid_is_returned() {
        let r = smallest_positive_root(|x| x - 0.5, &RootSearchConfig::default()).unwrap();
        assert!((r - 0.5).abs() < 1e-13);
    }

    #[test]
    fn no_sign_change() {
        let err = smallest_positive_root(|x| 1.0 + x * x, &RootSearchConfig::default()).unwrap_err();
        assert_eq!(err, Error::NoSignChange { scan_max: 60.0 });
    }

    #[test]
    fn skipped_root_pair_is_detected() {
        // Two roots inside one coarse step (0.41, 0.43) followed by a real crossing at 1.0.
        let f = |x: f64| {
            let bump = if (0.41..0.43).contains(&x) { -2.0 } else { 0.0 };
            (1.0 - x) + bump
        };
        let cfg = RootSearchConfig { scan_step: 0.1, ..Default::default() };
        let err = smallest_positive_root(f, &cfg).unwrap_err();
        assert!(matches!(err, Error::EarlierRoot { .. }));
    }

    #[test]
    fn invalid_config() {
        let cfg = RootSearchConfig { scan_start: 70.0, ..Default::default() };
        assert!(smallest_positive_root(libm::sin, &cfg).is_err());
        let cfg = RootSearchConfig { abs_tol: 0.0, ..Default::default() };
        assert!(smallest_positive_root(libm::sin, &cfg).is_err());
    }

    #[test]
    fn unconverged_when_bisections_exhausted() {
        let cfg = RootSearchConfig { max_bisections: 3, ..Default::default() };
        assert!(matches!(smallest_positive_root(libm::sin, &cfg), Err(Error::Unconverged { .. })));
    }

    #[test]
    fn non_finite_values_are_errors() {
        assert!(matches!(
            smallest_positive_root(|x| if x > 1.0 { f64::NAN } else { 1.0 }, &RootSearchConfig::default()),
            Err(Error::NonFinite { .. })
        ));
    }

    proptest::proptest! {
        #[test]
        fn halving_step_keeps_root(shift in 0.0f64..2.0) {
            let f = |x: f64| libm::sin(x - shift);
            let cfg = RootSearchConfig::default();
            let half = RootSearchConfig { scan_step: cfg.scan_step / 2.0, ..cfg };
            let a = smallest_positive_root(f, &cfg).unwrap();
            let b = smallest_positive_root(f, &half).unwrap();
            proptest::prop_assert!((a - b).abs() <= cfg.abs_tol);
        }

        #[test]
        fn bracket_contains_sign_change(c in 0.2f64..30.0) {
            let f = |x: f64| libm::tanh(x - c);
            let cfg = RootSearchConfig::default();
            let r = smallest_positive_root(f, &cfg).unwrap();
            proptest::prop_assert!((r - c).abs() <= cfg.abs_tol);
        }
    }
}
