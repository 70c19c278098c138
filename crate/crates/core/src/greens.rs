//! Dirichlet Green's functions of the negative Laplacian on the unit ball and
//! on the shell `sigma <= |x| <= 1` (method of images), and a Nystrom
//! estimate of the norm of the inverse Laplacian built on them.
//!
//! Every kernel depends on `x`, `y` only through `|x|`, `|y|` and the cosine
//! of the angle between them; the Cartesian entry points reduce to that
//! immediately.
//!
//! Each term of the kernels has the form `1 / sqrt(a^2 + b^2 - 2 a b cos)`.
//! Integrated over the sphere of directions that gives `4 pi / max(a, b)`,
//! so the angular average of the shell kernel is
//!
//! ```text
//! K(r, p) = 1/max(r,p) - 1
//!         + sum_k sigma^k ( 1/max(p, s r) + 1/max(r, s p) - 1/max(r p, s) - 1 ),  s = sigma^(2k)
//! ```
//!
//! which is the Green's function of the radial operator with weight `p^2 dp`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Truncation and discretization parameters of the image series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensParams {
    /// Radius ratio of the shell; 0 selects the unit ball.
    pub sigma: f64,
    /// Number of image orders kept.
    pub truncation_k: usize,
    /// Radial Nystrom nodes (rounded up to whole panels).
    pub radial_nodes: usize,
    /// Largest admissible magnitude of the last kept term.
    pub tail_tol: f64,
}

/// Default tail tolerance.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Nodes per Nystrom panel.
pub const NYSTROM_PANEL_ORDER: usize = 8;

impl GreensParams {
    /// Defaults for `sigma`: `K = ceil(ln tol / ln sigma) + 2`, 128 radial nodes.
    pub fn new(sigma: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&sigma) {
            return Err(Error::InvalidGeometry("sigma must lie in [0, 1)"));
        }
        Ok(GreensParams {
            sigma,
            truncation_k: default_truncation(sigma, DEFAULT_TAIL_TOL),
            radial_nodes: 128,
            tail_tol: DEFAULT_TAIL_TOL,
        })
    }

    /// Same parameters with a different number of radial nodes.
    pub fn with_radial_nodes(self, radial_nodes: usize) -> Self {
        GreensParams { radial_nodes, ..self }
    }

    /// Same parameters with a different truncation order.
    pub fn with_truncation(self, truncation_k: usize) -> Self {
        GreensParams { truncation_k, ..self }
    }
}

/// Truncation order giving geometric tail below `tail_tol`.
pub fn default_truncation(sigma: f64, tail_tol: f64) -> usize {
    if sigma == 0.0 {
        0
    } else if sigma < 1e-3 {
        3
    } else {
        libm::ceil(libm::log(tail_tol) / libm::log(sigma)) as usize + 2
    }
}

#[inline]
fn norm(p: &[f64; 3]) -> f64 {
    libm::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
}

/// `(|x|, |y|, cos angle)`; the cosine is 1 when either point is the origin.
fn reduce(x: &[f64; 3], y: &[f64; 3]) -> (f64, f64, f64) {
    let (rx, ry) = (norm(x), norm(y));
    let c = if rx == 0.0 || ry == 0.0 {
        1.0
    } else {
        ((x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) / (rx * ry)).clamp(-1.0, 1.0)
    };
    (rx, ry, c)
}

/// `1 / sqrt(a^2 + b^2 - 2 a b c)`.
#[inline]
fn inv_dist(a: f64, b: f64, c: f64) -> f64 {
    1.0 / libm::sqrt((a * a + b * b - 2.0 * a * b * c).max(0.0))
}

fn ball_reduced(r: f64, p: f64, c: f64) -> f64 {
    (inv_dist(r, p, c) - inv_dist(r * p, 1.0, c)) / (4.0 * PI)
}

fn check_pair(x: &[f64; 3], y: &[f64; 3], inner: f64) -> Result<(f64, f64, f64)> {
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("points must be finite"));
    }
    if x == y {
        return Err(Error::Singularity);
    }
    let (r, p, c) = reduce(x, y);
    let slack = 1e-12;
    if r > 1.0 + slack || p > 1.0 + slack || r < inner - slack || p < inner - slack {
        return Err(Error::InvalidArgument("points must lie in the closed domain"));
    }
    Ok((r, p, c))
}

/// Green's function of the unit ball,
/// `(1/4pi) (1/|x-y| - 1/sqrt(|x|^2 |y|^2 + 1 - 2 |x||y| cos))`.
pub fn greens_ball(x: &[f64; 3], y: &[f64; 3]) -> Result<f64> {
    let (r, p, c) = check_pair(x, y, 0.0)?;
    Ok(ball_reduced(r, p, c))
}

/// Magnitude-bearing `k`-th image term of the shell kernel, without `1/4pi`.
fn image_term(sigma: f64, k: usize, r: f64, p: f64, c: f64) -> f64 {
    let s = libm::pow(sigma, 2.0 * k as f64);
    let weight = libm::pow(sigma, k as f64);
    weight
        * (inv_dist(p, s * r, c) + inv_dist(s * p, r, c) - inv_dist(r * p, s, c) - inv_dist(s * r * p, 1.0, c))
}

/// Green's function of the shell `sigma <= |x| <= 1`, truncated image series.
pub fn greens_shell(x: &[f64; 3], y: &[f64; 3], params: &GreensParams) -> Result<f64> {
    let sigma = params.sigma;
    if !(0.0..1.0).contains(&sigma) {
        return Err(Error::InvalidGeometry("sigma must lie in [0, 1)"));
    }
    let (r, p, c) = check_pair(x, y, sigma)?;
    let mut g = ball_reduced(r, p, c);
    if sigma == 0.0 {
        return Ok(g);
    }
    let mut last = 0.0;
    for k in 1..=params.truncation_k {
        last = image_term(sigma, k, r, p, c) / (4.0 * PI);
        g += last;
    }
    check_tail(last, params)?;
    Ok(g)
}

fn check_tail(last: f64, params: &GreensParams) -> Result<()> {
    if params.truncation_k == 0 || last.abs() > params.tail_tol {
        return Err(Error::TruncationInsufficient { last_term: last.abs(), tail_tol: params.tail_tol });
    }
    Ok(())
}

#[inline]
fn inv_max(a: f64, b: f64) -> f64 {
    1.0 / a.max(b)
}

/// Kernel without the truncation check, `r, p` in `[sigma, 1]`.
fn radial_kernel_unchecked(r: f64, p: f64, sigma: f64, truncation_k: usize) -> (f64, f64) {
    let mut k_val = inv_max(r, p) - 1.0;
    let mut last = 0.0;
    if sigma > 0.0 {
        let mut weight = 1.0;
        let mut s = 1.0;
        let s_step = sigma * sigma;
        for _ in 0..truncation_k {
            weight *= sigma;
            s *= s_step;
            last = weight * (inv_max(p, s * r) + inv_max(r, s * p) - inv_max(r * p, s) - 1.0);
            k_val += last;
        }
    }
    (k_val, last)
}

/// Angular average of the shell Green's function over the sphere of directions,
/// `K(r, p) = integral G_sigma dOmega`.
pub fn radial_kernel(r: f64, p: f64, params: &GreensParams) -> Result<f64> {
    let sigma = params.sigma;
    if !(0.0..1.0).contains(&sigma) {
        return Err(Error::InvalidGeometry("sigma must lie in [0, 1)"));
    }
    let slack = 1e-12;
    if !(r >= sigma - slack && r <= 1.0 + slack && p >= sigma - slack && p <= 1.0 + slack) {
        return Err(Error::InvalidArgument("radii must lie in [sigma, 1]"));
    }
    let (k, last) = radial_kernel_unchecked(r, p, sigma, params.truncation_k);
    if sigma > 0.0 {
        check_tail(last, params)?;
    }
    Ok(k)
}

/// Result of [`inverse_norm_estimate`].
#[derive(Debug, Clone, PartialEq)]
pub struct InverseNormEstimate {
    /// Largest eigenvalue of the discretized radial operator, `~ 1 / lambda_1`.
    pub estimate: f64,
    /// Power iterations used.
    pub iterations: usize,
    /// Radial collocation nodes.
    pub nodes: Vec<f64>,
    /// Dominant eigenvector at `nodes`, scaled to unit maximum.
    pub eigenvector: Vec<f64>,
}

/// Power-iteration cap.
pub const MAX_POWER_ITERATIONS: usize = 10_000;

/// Estimate `|L_sigma^{-1}| = (1 - sigma)^2 / pi^2` from the radial kernel.
///
/// The operator `(T g)(r) = integral_sigma^1 K(r, p) g(p) p^2 dp` is
/// collocated at composite Gauss-Legendre nodes. In the panel that contains
/// the collocation point the integral is split at `p = r`, where `K` has a
/// derivative kink, and evaluated with Gauss-Legendre on both halves using
/// Lagrange interpolation of the panel values. The top eigenvalue then comes
/// from power iteration.
pub fn inverse_norm_estimate(params: &GreensParams) -> Result<InverseNormEstimate> {
    let sigma = params.sigma;
    if !(0.0..=0.9).contains(&sigma) {
        return Err(Error::InvalidArgument("inverse norm estimate needs sigma in [0, 0.9]"));
    }
    if params.radial_nodes < 64 {
        return Err(Error::InvalidArgument("inverse norm estimate needs at least 64 radial nodes"));
    }
    if sigma > 0.0 {
        // the largest term magnitude of order k is at most 2 sigma^k / sigma
        let bound = 2.0 * libm::pow(sigma, params.truncation_k as f64) / sigma;
        if params.truncation_k == 0 || bound > params.tail_tol * 1e3 {
            return Err(Error::TruncationInsufficient { last_term: bound, tail_tol: params.tail_tol });
        }
    }
    let matrix = NystromMatrix::assemble(params);
    let n = matrix.nodes.len();

    let mut g = vec![1.0; n];
    let mut prev = 0.0;
    for it in 1..=MAX_POWER_ITERATIONS {
        let tg = matrix.apply(&g);
        let num = libm::sqrt(tg.iter().map(|v| v * v).sum::<f64>());
        let den = libm::sqrt(g.iter().map(|v| v * v).sum::<f64>());
        let est = num / den;
        g = tg.into_iter().map(|v| v / num).collect();
        if it > 1 && (est - prev).abs() <= 1e-12 * est {
            let max = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let sign = if g.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            return Ok(InverseNormEstimate {
                estimate: est,
                iterations: it,
                nodes: matrix.nodes,
                eigenvector: g.iter().map(|v| sign * v / max).collect(),
            });
        }
        prev = est;
    }
    Err(Error::NonConvergence { iterations: MAX_POWER_ITERATIONS })
}

struct NystromMatrix {
    nodes: Vec<f64>,
    entries: Vec<f64>,
}

impl NystromMatrix {
    fn assemble(params: &GreensParams) -> Self {
        let sigma = params.sigma;
        let order = NYSTROM_PANEL_ORDER;
        let panels = params.radial_nodes.div_ceil(order);
        let n = panels * order;
        let (ref_x, ref_w) = gauss_legendre(order);
        let h = (1.0 - sigma) / panels as f64;
        let panel_lo = |p: usize| sigma + p as f64 * h;

        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for p in 0..panels {
            let mid = panel_lo(p) + 0.5 * h;
            for (x, w) in ref_x.iter().zip(&ref_w) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        let kernel = |r: f64, q: f64| radial_kernel_unchecked(r, q, sigma, params.truncation_k).0;

        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            let r = nodes[i];
            let own = i / order;
            let row = &mut entries[i * n..(i + 1) * n];
            for j in 0..n {
                if j / order != own {
                    row[j] = weights[j] * kernel(r, nodes[j]) * nodes[j] * nodes[j];
                }
            }
            let base = own * order;
            let panel_nodes = &nodes[base..base + order];
            for (lo, hi) in [(panel_lo(own), r), (r, panel_lo(own) + h)] {
                let half = 0.5 * (hi - lo);
                let mid = lo + half;
                for (x, w) in ref_x.iter().zip(&ref_w) {
                    let q = mid + half * x;
                    let kw = half * w * kernel(r, q) * q * q;
                    for (jj, cell) in row[base..base + order].iter_mut().enumerate() {
                        *cell += kw * lagrange(panel_nodes, jj, q);
                    }
                }
            }
        }
        NystromMatrix { nodes, entries }
    }

    fn apply(&self, g: &[f64]) -> Vec<f64> {
        let n = self.nodes.len();
        self.entries
            .chunks_exact(n)
            .map(|row| row.iter().zip(g).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn lagrange(nodes: &[f64], j: usize, x: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .fold(1.0, |acc, (_, &xm)| acc * (x - xm) / (nodes[j] - xm))
}
