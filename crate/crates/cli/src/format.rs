//! Fixed 12-significant-digit number formatting for diffable output.

/// Significant digits in every emitted number.
pub const SIG_DIGITS: usize = 12;

/// `x` in plain decimal notation with 12 significant digits; `0` for zero.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    // exponent after rounding to 12 digits, so 9.9999999999995 -> 10.0000000000
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// `x` rounded to 12 significant digits, for JSON output.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    sig12(x).parse().unwrap_or(x)
}

/// Optional value: empty field when absent.
pub fn sig12_opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}
