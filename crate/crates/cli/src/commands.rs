//! The six subcommands. Each returns the rendered output; validation
//! failures that still carry a report come back as [`Outcome::failed`].

use poincare_shell::eigenfun::{laplace_profile, stokes_profile};
use poincare_shell::greens::{inverse_norm_estimate, GreensParams};
use poincare_shell::oracle::{radial_eigenvalue, RadialProblem};
use poincare_shell::spectra::{self, check_table_row, table_row, TableRow};
use poincare_shell::{EigenResult, Frame, Method, Operator, ShellGeometry};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, OutputFormat, RunConfig, DEFAULT_GREENS_SIGMA, DEFAULT_ORACLE_A};
use crate::error::CliError;
use crate::format::{round12, sig12, sig12_opt};

/// Rendered output plus an optional validation failure.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, failure: None }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Eig => eig(cfg).map(Outcome::ok),
        Command::Table => table(cfg).map(Outcome::ok),
        Command::Bounds => bounds(cfg).map(Outcome::ok),
        Command::Profile => profile(cfg).map(Outcome::ok),
        Command::GreensValidate => greens_validate(cfg),
        Command::OracleCheck => oracle_check(cfg),
    }
}

fn core<T>(r: poincare_shell::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::from_core)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.into())
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn geometries(cfg: &RunConfig) -> Result<Vec<ShellGeometry>, CliError> {
    let mut out = Vec::with_capacity(cfg.a.len() + cfg.sigma.len());
    for &a in &cfg.a {
        out.push(core(ShellGeometry::from_a(a))?);
    }
    for &s in &cfg.sigma {
        out.push(core(ShellGeometry::from_sigma(s))?);
    }
    Ok(out)
}

fn frame_name(f: Frame) -> &'static str {
    match f {
        Frame::A => "A",
        Frame::Sigma => "sigma",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed-form",
        Method::RootFind => "root-find",
        Method::Oracle => "oracle",
    }
}

#[derive(Serialize)]
struct EigJson {
    kappa: f64,
    lambda: f64,
    multiplicity: u32,
    poincare: f64,
    method: &'static str,
}

impl From<&EigenResult> for EigJson {
    fn from(r: &EigenResult) -> Self {
        EigJson {
            kappa: round12(r.kappa),
            lambda: round12(r.lambda),
            multiplicity: r.multiplicity,
            poincare: round12(r.poincare),
            method: method_name(r.method),
        }
    }
}

#[derive(Serialize)]
struct EigRecord {
    frame: &'static str,
    #[serde(rename = "A")]
    a: f64,
    sigma: f64,
    c_p: f64,
    #[serde(rename = "c_pS")]
    c_ps: f64,
    laplace: EigJson,
    stokes: EigJson,
}

fn eig(cfg: &RunConfig) -> Result<String, CliError> {
    let geoms = geometries(cfg)?;
    if geoms.is_empty() {
        return Err(CliError::Usage("eig needs --a or --sigma".into()));
    }
    let results = geoms
        .iter()
        .map(|g| Ok((g, spectra::laplace_first(g), core(spectra::stokes_first(g))?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    match cfg.format {
        OutputFormat::Csv => csv_string(
            &["frame", "A", "sigma", "kappa_L", "lambda_L", "c_p", "kappa_S", "lambda_S", "c_pS", "mult_L", "mult_S"],
            results.iter().map(|(g, l, s)| {
                vec![
                    frame_name(g.frame()).to_string(),
                    sig12(g.a()),
                    sig12(g.sigma()),
                    sig12(l.kappa),
                    sig12(l.lambda),
                    sig12(l.poincare),
                    sig12(s.kappa),
                    sig12(s.lambda),
                    sig12(s.poincare),
                    l.multiplicity.to_string(),
                    s.multiplicity.to_string(),
                ]
            }),
        ),
        OutputFormat::Json => {
            let records: Vec<EigRecord> = results
                .iter()
                .map(|(g, l, s)| EigRecord {
                    frame: frame_name(g.frame()),
                    a: round12(g.a()),
                    sigma: round12(g.sigma()),
                    c_p: round12(l.poincare),
                    c_ps: round12(s.poincare),
                    laplace: l.into(),
                    stokes: s.into(),
                })
                .collect();
            Ok(json_string(&records))
        }
    }
}

fn grid_points(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    if cfg.a.is_empty() {
        core(cfg.grid.table_values())
    } else {
        Ok(cfg.a.clone())
    }
}

fn table_rows(cfg: &RunConfig) -> Result<Vec<TableRow>, CliError> {
    let slack = cfg.tol("invariant_slack");
    let rows: Vec<Result<TableRow, CliError>> = grid_points(cfg)?
        .par_iter()
        .map(|&a| {
            let row = core(table_row(a))?;
            check_table_row(&row, slack).map_err(|v| {
                CliError::Validation(format!("table row A = {}: {}", sig12(a), poincare_shell::Error::from(v)))
            })?;
            Ok(row)
        })
        .collect();
    rows.into_iter().collect()
}

#[derive(Serialize)]
struct TableJson {
    #[serde(rename = "A")]
    a: f64,
    sigma: f64,
    #[serde(rename = "kappa_L")]
    kappa_l: f64,
    #[serde(rename = "lambda_L")]
    lambda_l: f64,
    c_p: f64,
    #[serde(rename = "kappa_S")]
    kappa_s: f64,
    #[serde(rename = "lambda_S")]
    lambda_s: f64,
    #[serde(rename = "c_pS")]
    c_ps: f64,
}

fn table(cfg: &RunConfig) -> Result<String, CliError> {
    let rows = table_rows(cfg)?;
    match cfg.format {
        OutputFormat::Csv => csv_string(
            &["A", "sigma", "kappa_L", "lambda_L", "c_p", "kappa_S", "lambda_S", "c_pS"],
            rows.iter().map(|r| {
                [r.a, r.sigma, r.kappa_l, r.lambda_l, r.c_p, r.kappa_s, r.lambda_s, r.c_ps]
                    .into_iter()
                    .map(sig12)
                    .collect()
            }),
        ),
        OutputFormat::Json => Ok(json_string(
            &rows
                .iter()
                .map(|r| TableJson {
                    a: round12(r.a),
                    sigma: round12(r.sigma),
                    kappa_l: round12(r.kappa_l),
                    lambda_l: round12(r.lambda_l),
                    c_p: round12(r.c_p),
                    kappa_s: round12(r.kappa_s),
                    lambda_s: round12(r.lambda_s),
                    c_ps: round12(r.c_ps),
                })
                .collect::<Vec<_>>(),
        )),
    }
}

#[derive(Serialize)]
struct BoundsJson {
    #[serde(rename = "A")]
    a: f64,
    diam_half: f64,
    diam_pi_sqrt2: f64,
    nazarov: Option<f64>,
    best: f64,
    c_p: f64,
}

fn bounds(cfg: &RunConfig) -> Result<String, CliError> {
    let slack = cfg.tol("invariant_slack");
    let rows = grid_points(cfg)?
        .par_iter()
        .map(|&a| {
            let g = core(ShellGeometry::from_a(a))?;
            let b = spectra::bounds_for(&g);
            let c_p = spectra::laplace_first(&g).poincare;
            if c_p > b.best + slack {
                return Err(CliError::Validation(format!("A = {}: c_p exceeds the best bound", sig12(a))));
            }
            Ok((b, c_p))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, CliError>>()?;
    match cfg.format {
        OutputFormat::Csv => csv_string(
            &["A", "diam_half", "diam_pi_sqrt2", "nazarov", "best", "c_p"],
            rows.iter().map(|(b, c_p)| {
                vec![
                    sig12(b.a),
                    sig12(b.diam_half),
                    sig12(b.diam_over_pi_sqrt2),
                    sig12_opt(b.nazarov),
                    sig12(b.best),
                    sig12(*c_p),
                ]
            }),
        ),
        OutputFormat::Json => Ok(json_string(
            &rows
                .iter()
                .map(|(b, c_p)| BoundsJson {
                    a: round12(b.a),
                    diam_half: round12(b.diam_half),
                    diam_pi_sqrt2: round12(b.diam_over_pi_sqrt2),
                    nazarov: b.nazarov.map(round12),
                    best: round12(b.best),
                    c_p: round12(*c_p),
                })
                .collect::<Vec<_>>(),
        )),
    }
}

#[derive(Serialize)]
struct ProfileJson {
    r: f64,
    value: f64,
}

fn profile(cfg: &RunConfig) -> Result<String, CliError> {
    let geoms = geometries(cfg)?;
    let [geom] = geoms.as_slice() else {
        return Err(CliError::Usage("profile needs exactly one --a or --sigma value".into()));
    };
    let p = match cfg.operator {
        Operator::Laplace => core(laplace_profile(geom, cfg.samples))?,
        Operator::Stokes => core(stokes_profile(geom, cfg.samples))?,
    };
    match cfg.format {
        OutputFormat::Csv => csv_string(&["r", "value"], p.samples.iter().map(|&(r, v)| vec![sig12(r), sig12(v)])),
        OutputFormat::Json => Ok(json_string(
            &p.samples
                .iter()
                .map(|&(r, v)| ProfileJson { r: round12(r), value: round12(v) })
                .collect::<Vec<_>>(),
        )),
    }
}

#[derive(Serialize)]
struct GreensRecord {
    sigma: f64,
    estimate: f64,
    exact: f64,
    rel_error: f64,
}

fn greens_validate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sigmas = if cfg.sigma.is_empty() { DEFAULT_GREENS_SIGMA.to_vec() } else { cfg.sigma.clone() };
    let tol = cfg.tol("greens_rel");
    let records = sigmas
        .par_iter()
        .map(|&s| {
            let params = core(GreensParams::new(s))?.with_radial_nodes(cfg.nodes);
            let est = core(inverse_norm_estimate(&params))?.estimate;
            let exact = (1.0 - s) * (1.0 - s) / (std::f64::consts::PI * std::f64::consts::PI);
            Ok(GreensRecord { sigma: s, estimate: est, exact, rel_error: (est - exact).abs() / exact })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, CliError>>()?;
    let failure = records
        .iter()
        .find(|r| r.rel_error > tol)
        .map(|r| format!("sigma = {}: rel_error {} exceeds {}", sig12(r.sigma), sig12(r.rel_error), sig12(tol)));
    let body = match cfg.format {
        OutputFormat::Csv => csv_string(
            &["sigma", "estimate", "exact", "rel_error"],
            records
                .iter()
                .map(|r| vec![sig12(r.sigma), sig12(r.estimate), sig12(r.exact), sig12(r.rel_error)]),
        )?,
        OutputFormat::Json => json_string(
            &records
                .iter()
                .map(|r| GreensRecord {
                    sigma: round12(r.sigma),
                    estimate: round12(r.estimate),
                    exact: round12(r.exact),
                    rel_error: round12(r.rel_error),
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome { body, failure })
}

#[derive(Serialize)]
struct OracleRecord {
    #[serde(rename = "A")]
    a: f64,
    kappa_rootfind: f64,
    kappa_oracle: f64,
    rel_diff: f64,
}

fn oracle_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a_values = if cfg.a.is_empty() { DEFAULT_ORACLE_A.to_vec() } else { cfg.a.clone() };
    let tol = cfg.tol("oracle_rel");
    let records = a_values
        .par_iter()
        .map(|&a| {
            let geom = core(ShellGeometry::from_a(a))?;
            let root = core(spectra::stokes_first(&geom))?.kappa;
            let problem = core(RadialProblem::new(geom, 1, cfg.n_grid))?;
            let oracle = core(radial_eigenvalue(&problem))?.sqrt();
            Ok(OracleRecord { a, kappa_rootfind: root, kappa_oracle: oracle, rel_diff: (oracle - root).abs() / root })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, CliError>>()?;
    let failure = records
        .iter()
        .find(|r| r.rel_diff > tol)
        .map(|r| format!("A = {}: rel_diff {} exceeds {}", sig12(r.a), sig12(r.rel_diff), sig12(tol)));
    let body = match cfg.format {
        OutputFormat::Csv => csv_string(
            &["A", "kappa_rootfind", "kappa_oracle", "rel_diff"],
            records
                .iter()
                .map(|r| vec![sig12(r.a), sig12(r.kappa_rootfind), sig12(r.kappa_oracle), sig12(r.rel_diff)]),
        )?,
        OutputFormat::Json => json_string(
            &records
                .iter()
                .map(|r| OracleRecord {
                    a: round12(r.a),
                    kappa_rootfind: round12(r.kappa_rootfind),
                    kappa_oracle: round12(r.kappa_oracle),
                    rel_diff: round12(r.rel_diff),
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome { body, failure })
}
