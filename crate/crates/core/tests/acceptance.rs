//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test -p poincare-shell --test acceptance`.

use std::f64::consts::{FRAC_1_PI, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use poincare_shell::eigenfun::RadialEigenfunction;
use poincare_shell::greens::{greens_ball, greens_shell, inverse_norm_estimate, GreensParams};
use poincare_shell::grid::GridSpec;
use poincare_shell::oracle::{radial_eigenvalue, RadialProblem};
use poincare_shell::specfun::{
    bessel_half, bessel_neg_half, bessel_neg_three_half, bessel_three_half, laplace_eigencondition,
    laplace_eigencondition_cross, stokes_eigencondition, stokes_eigencondition_cross, stokes_prefactor,
};
use poincare_shell::spectra::{
    bounds_for, check_table_row, first_zero_j3half, laplace_first_rootfind, stokes_first, table_row,
};
use poincare_shell::{Operator, RootSearchConfig, ShellGeometry};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn lin_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_laplace_constant() -> Outcome {
    let start = Instant::now();
    let cfg = RootSearchConfig::default();
    let (mut worst_k, mut worst_c) = (0.0f64, 0.0f64);
    for a in log_space(1e-3, 1e3, 50) {
        let geom = ShellGeometry::from_a(a).map_err(err)?;
        let r = laplace_first_rootfind(&geom, &cfg).map_err(err)?;
        worst_k = worst_k.max((r.kappa - PI).abs());
        worst_c = worst_c.max((r.poincare - FRAC_1_PI).abs());
    }
    within_time(start, Duration::from_secs(1))?;
    if worst_k <= 1e-10 && worst_c <= 1e-11 {
        Ok(format!("max |kappa - pi| = {worst_k:.2e}, max |c_p - 1/pi| = {worst_c:.2e}"))
    } else {
        Err(format!("max |kappa - pi| = {worst_k:.2e} (tol 1e-10), max |c_p - 1/pi| = {worst_c:.2e} (tol 1e-11)"))
    }
}

fn c2_ball_stokes_constant() -> Outcome {
    let x = first_zero_j3half(&RootSearchConfig::default()).map_err(err)?;
    let via_shell = stokes_first(&ShellGeometry::from_a(0.0).map_err(err)?).map_err(err)?.poincare;
    let c = 1.0 / x;
    let printed = format!("{c:.10}");
    if printed == "0.2225481584" && (c - 0.222_548_158_4).abs() < 5e-11 && via_shell == c {
        Ok(format!("c_pS(0) = {c:.12}"))
    } else {
        Err(format!("c_pS(0) = {c:.12} (shell path {via_shell:.12}), expected 0.2225481584"))
    }
}

fn c3_small_gap_limit() -> Outcome {
    let start = Instant::now();
    let kappa = |a: f64| -> Result<f64, String> {
        Ok(stokes_first(&ShellGeometry::from_a(a).map_err(err)?).map_err(err)?.kappa)
    };
    let d100 = kappa(100.0)? - PI;
    let d1e4 = kappa(1e4)? - PI;
    let sweep = log_space(1e-3, 1e4, 30)
        .into_iter()
        .map(kappa)
        .collect::<Result<Vec<_>, _>>()?;
    within_time(start, Duration::from_secs(1))?;
    if let Some(i) = (1..sweep.len()).find(|&i| sweep[i] >= sweep[i - 1]) {
        return Err(format!("kappa_S not strictly decreasing at sample {i}"));
    }
    if d100 < 1e-3 && d1e4 < 1e-7 && d100 > 0.0 && d1e4 > 0.0 {
        Ok(format!("kappa - pi = {d100:.3e} (A=100), {d1e4:.3e} (A=1e4); 30 samples strictly decreasing"))
    } else {
        Err(format!("kappa - pi = {d100:.3e} (A=100, tol 1e-3), {d1e4:.3e} (A=1e4, tol 1e-7)"))
    }
}

fn c4_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut worst1, mut worst0) = (0.0f64, 0.0f64);
    for a in [0.1, 0.5, 1.0, 2.0, 10.0, 50.0] {
        let geom = ShellGeometry::from_a(a).map_err(err)?;
        let lambda_s = stokes_first(&geom).map_err(err)?.lambda;
        let fd1 = radial_eigenvalue(&RadialProblem::new(geom, 1, 4000).map_err(err)?).map_err(err)?;
        let fd0 = radial_eigenvalue(&RadialProblem::new(geom, 0, 4000).map_err(err)?).map_err(err)?;
        worst1 = worst1.max((fd1 - lambda_s).abs() / lambda_s);
        worst0 = worst0.max((fd0 - PI * PI).abs() / (PI * PI));
    }
    within_time(start, Duration::from_secs(10))?;
    if worst1 < 1e-5 && worst0 < 1e-6 {
        Ok(format!("max rel diff l=1: {worst1:.2e}, l=0: {worst0:.2e}"))
    } else {
        Err(format!("max rel diff l=1: {worst1:.2e} (tol 1e-5), l=0: {worst0:.2e} (tol 1e-6)"))
    }
}

fn c5_greens_validation() -> Outcome {
    let start = Instant::now();
    let mut estimates = Vec::new();
    let mut worst = 0.0f64;
    for sigma in [0.0, 0.25, 0.5, 0.75] {
        let params = GreensParams::new(sigma).map_err(err)?.with_radial_nodes(128);
        let est = inverse_norm_estimate(&params).map_err(err)?.estimate;
        let exact = (1.0 - sigma) * (1.0 - sigma) / (PI * PI);
        worst = worst.max((est - exact).abs() / exact);
        estimates.push(est);
    }
    within_time(start, Duration::from_secs(30))?;
    if !estimates.windows(2).all(|w| w[1] < w[0]) {
        return Err(format!("estimates not decreasing: {estimates:?}"));
    }
    if worst < 0.01 {
        Ok(format!("max rel error {worst:.2e}, decreasing in sigma"))
    } else {
        Err(format!("max rel error {worst:.2e} (tol 1e-2)"))
    }
}

fn c6_bound_chain() -> Outcome {
    let slack = 1e-14;
    let grid = GridSpec::default().table_values().map_err(err)?;
    let mut checked = 0;
    for a in grid.into_iter().filter(|&a| a > 0.0) {
        let row = table_row(a).map_err(err)?;
        let geom = ShellGeometry::from_a(a).map_err(err)?;
        let b = bounds_for(&geom);
        let sqrt2_bound = std::f64::consts::SQRT_2 / PI * (1.0 + a / 2.0);
        let nazarov = FRAC_1_PI * (1.0 + 2.0 / a);
        let ok = row.c_ps <= FRAC_1_PI + slack
            && row.c_p <= FRAC_1_PI + slack
            && FRAC_1_PI <= sqrt2_bound.min(nazarov) + slack
            && row.c_p <= b.best + slack;
        if !ok {
            return Err(format!("chain broken at A = {a:e}: c_pS = {}, c_p = {}", row.c_ps, row.c_p));
        }
        check_table_row(&row, slack).map_err(|v| format!("A = {a:e}: {v:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} rows"))
}

/// `|lhs - rhs| <= tol * scale` on every sample; returns the worst ratio.
fn identity_check(
    name: &str,
    samples: impl Iterator<Item = Result<(f64, f64, f64), String>>,
) -> Result<(usize, f64), String> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for s in samples {
        let (lhs, rhs, scale) = s?;
        worst = worst.max((lhs - rhs).abs() / scale);
        n += 1;
    }
    if worst <= 1e-9 {
        Ok((n, worst))
    } else {
        Err(format!("{name}: worst relative error {worst:.2e} over {n} points"))
    }
}

fn c7_identities() -> Outcome {
    // J_{3/2}(t) = J_{1/2}(t)/t - J_{-1/2}(t), J_{-3/2}(t) = -J_{-1/2}(t)/t - J_{1/2}(t)
    let recurrence = log_space(1e-3, 50.0, 1000).into_iter().flat_map(|t| {
        let row = || -> Result<[(f64, f64, f64); 2], String> {
            let (jp, jn) = (bessel_half(t).map_err(err)?, bessel_neg_half(t).map_err(err)?);
            let j3 = bessel_three_half(t).map_err(err)?;
            let jm3 = bessel_neg_three_half(t).map_err(err)?;
            Ok([
                (j3, jp / t - jn, (jp / t).abs() + jn.abs()),
                (jm3, -jn / t - jp, (jn / t).abs() + jp.abs()),
            ])
        };
        match row() {
            Ok(r) => r.map(Ok).to_vec(),
            Err(e) => vec![Err(e)],
        }
    });
    let (n_rec, w_rec) = identity_check("recurrence", recurrence)?;

    let sine = lin_space(0.5, 10.0, 40).into_iter().flat_map(|k| {
        lin_space(0.1, 50.0, 25).into_iter().map(move |a| {
            let g = ShellGeometry::from_a(a).map_err(err)?;
            let cross = laplace_eigencondition_cross(k, &g).map_err(err)?;
            let closed = laplace_eigencondition(k, &g).map_err(err)?;
            let (ti, to) = (k * g.r_inner(), k * g.r_outer());
            let scale = (bessel_half(to).map_err(err)? * bessel_neg_half(ti).map_err(err)?).abs()
                + (bessel_half(ti).map_err(err)? * bessel_neg_half(to).map_err(err)?).abs();
            Ok((cross, closed, scale))
        })
    });
    let (n_sin, w_sin) = identity_check("sine identity", sine)?;

    let trig = lin_space(3.0, 6.0, 40).into_iter().flat_map(|k| {
        lin_space(0.5, 20.0, 25).into_iter().map(move |r| {
            let g = ShellGeometry::from_a(2.0 * r).map_err(err)?;
            let cross = stokes_eigencondition_cross(k, &g).map_err(err)?;
            let closed = stokes_prefactor(k, &g) * stokes_eigencondition(k, &g).map_err(err)?;
            let (ti, to) = (k * g.r_inner(), k * g.r_outer());
            let scale = (bessel_three_half(to).map_err(err)? * bessel_neg_three_half(ti).map_err(err)?).abs()
                + (bessel_three_half(ti).map_err(err)? * bessel_neg_three_half(to).map_err(err)?).abs();
            Ok((cross, closed, scale))
        })
    });
    let (n_tr, w_tr) = identity_check("cross/trig", trig)?;

    Ok(format!(
        "recurrence {w_rec:.1e} ({n_rec} pts), sine {w_sin:.1e} ({n_sin}), cross/trig {w_tr:.1e} ({n_tr})"
    ))
}

/// First and second derivatives from central differences at `h` and `h/2`,
/// Richardson-extrapolated to fourth order.
fn derivatives(f: impl Fn(f64) -> Result<f64, String>, r: f64, h: f64) -> Result<(f64, f64), String> {
    let u0 = f(r)?;
    let central = |h: f64| -> Result<(f64, f64), String> {
        let (um, up) = (f(r - h)?, f(r + h)?);
        Ok(((up - um) / (2.0 * h), (up - 2.0 * u0 + um) / (h * h)))
    };
    let (a1, a2) = central(h)?;
    let (b1, b2) = central(0.5 * h)?;
    Ok(((4.0 * b1 - a1) / 3.0, (4.0 * b2 - a2) / 3.0))
}

fn c8_eigenfunctions() -> Outcome {
    // spacing 1e-4, relative beyond r = 1, clipped to stay inside the shell
    let base_h = 1e-4;
    let mut geoms = Vec::new();
    for a in [0.0, 0.1, 1.0, 10.0, 100.0] {
        geoms.push(ShellGeometry::from_a(a).map_err(err)?);
    }
    geoms.push(ShellGeometry::from_sigma(0.5).map_err(err)?);

    let (mut worst_res, mut worst_bc, mut worst_norm) = (0.0f64, 0.0f64, 0.0f64);
    for g in &geoms {
        for op in [Operator::Laplace, Operator::Stokes] {
            let f = RadialEigenfunction::new(g, op).map_err(err)?;
            let kappa = f.kappa();
            let ll = match op {
                Operator::Laplace => 0.0,
                Operator::Stokes => 2.0,
            };
            let (ri, ro) = (g.r_inner(), g.r_outer());
            let sup = f.profile(2001).map_err(err)?.sup_norm();
            let n = 200;
            for j in 0..n {
                let r = ri + (ro - ri) * (j as f64 + 0.5) / n as f64;
                let u0 = f.eval(r).map_err(err)?;
                let h = (base_h * r.max(1.0)).min(0.5 * (r - ri).min(ro - r));
                let (d1, d2) = derivatives(|x| f.eval(x).map_err(err), r, h)?;
                let res = d2 + 2.0 * d1 / r + (kappa * kappa - ll / (r * r)) * u0;
                worst_res = worst_res.max(res.abs() / (kappa * kappa * sup));
            }
            worst_bc = worst_bc.max(f.eval(ro).map_err(err)?.abs());
            if !g.is_punctured_ball() {
                worst_bc = worst_bc.max(f.eval(ri).map_err(err)?.abs());
            }
            let n1 = f.norm_constant_with(4).map_err(err)?;
            let n2 = f.norm_constant_with(8).map_err(err)?;
            worst_norm = worst_norm.max((n2 - n1).abs() / n1);
        }
    }
    let msg = format!("ODE residual {worst_res:.1e}, boundary {worst_bc:.1e}, normalization drift {worst_norm:.1e}");
    if worst_res < 1e-6 && worst_bc < 1e-9 && worst_norm < 1e-10 {
        Ok(msg)
    } else {
        Err(msg + " (tol 1e-6, 1e-9, 1e-10)")
    }
}

fn interior_pairs() -> Vec<([f64; 3], [f64; 3])> {
    let point = |r: f64, theta: f64, phi: f64| [r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos()];
    (0..20)
        .map(|i| {
            let t = i as f64;
            let rx = 0.15 + 0.8 * ((t * 0.618_034) % 1.0);
            let ry = 0.15 + 0.8 * ((t * 0.414_214 + 0.37) % 1.0);
            let x = point(rx, 0.3 + 0.13 * t, 0.7 * t);
            let y = point(ry, 2.6 - 0.11 * t, 1.9 + 0.5 * t);
            (x, y)
        })
        .collect()
}

fn c9_sigma_convergence() -> Outcome {
    let sigmas = [0.1, 0.01, 0.001];
    let pairs = interior_pairs();
    let mut last_gap = Vec::new();
    for (i, (x, y)) in pairs.iter().enumerate() {
        let g0 = greens_ball(x, y).map_err(err)?;
        let gaps = sigmas
            .iter()
            .map(|&s| Ok((greens_shell(x, y, &GreensParams::new(s).map_err(err)?).map_err(err)? - g0).abs()))
            .collect::<Result<Vec<f64>, String>>()?;
        if !(gaps[1] < gaps[0] && gaps[2] < gaps[1]) {
            return Err(format!("pair {i}: |G_sigma - G| = {gaps:?} not decreasing"));
        }
        last_gap.push(gaps[2]);
    }

    let ball = RadialEigenfunction::new(&ShellGeometry::from_sigma(0.0).map_err(err)?, Operator::Stokes).map_err(err)?;
    let radii = lin_space(0.2, 1.0, 401);
    let mut sups = Vec::new();
    for &s in &sigmas {
        let f = RadialEigenfunction::new(&ShellGeometry::from_sigma(s).map_err(err)?, Operator::Stokes).map_err(err)?;
        let mut sup = 0.0f64;
        for &r in &radii {
            sup = sup.max((f.eval(r).map_err(err)? - ball.eval(r).map_err(err)?).abs());
        }
        sups.push(sup);
    }
    if !(sups[1] < sups[0] && sups[2] < sups[1]) {
        return Err(format!("Stokes profile sup distances {sups:?} not decreasing"));
    }
    let worst_last = last_gap.iter().cloned().fold(0.0, f64::max);
    Ok(format!(
        "20 pairs decreasing (max at sigma=1e-3: {worst_last:.1e}); profile sup distances {:.1e}, {:.1e}, {:.1e}",
        sups[0], sups[1], sups[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact Laplace constant", c1_laplace_constant),
        ("ball Stokes constant 0.2225481584", c2_ball_stokes_constant),
        ("small-gap Stokes limit", c3_small_gap_limit),
        ("finite-difference oracle equivalence", c4_oracle_equivalence),
        ("Green's function norm estimate", c5_greens_validation),
        ("bound chain on table rows", c6_bound_chain),
        ("identity suite", c7_identities),
        ("eigenfunction residuals", c8_eigenfunctions),
        ("sigma -> 0 convergence", c9_sigma_convergence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
