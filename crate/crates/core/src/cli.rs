//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 domain error, 4 inequality
//! violation, 5 monotonicity failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use num_complex::Complex;
use rand::Rng;

use crate::boundary::{coefficients_at_radius, coefficients_from_boundary, harmonic_projection, poisson_extend};
use crate::circle::{
    operator_norm, parseval_sum, random_contraction, random_polynomial, von_neumann_check, ComplexMatrix,
    ComplexPolynomial, ContractionOperator,
};
use crate::error::Error;
use crate::io::{self, fmt17, FormatError};
use crate::means::{holomorphic_subconvex_scan, mean_scan, sup_scan, MeanTable, DEFAULT_GRID};
use crate::normal::{extract_subsequence, function_bound_from_coefficients, FunctionFamily, NormalityCertificate};
use crate::random::{seeded, unit_box};
use crate::scalar::{compensated_sum, root_of_unity};
use crate::series::DiskPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    /// Poisson extension of boundary samples to interior points.
    Extend,
    /// Coefficients from boundary samples.
    Coeffs,
    /// Harmonic projection of a mixed polynomial.
    Project,
    /// Convex integral means over radii.
    Means,
    /// Sup-means over radii.
    Supmeans,
    /// Randomized von Neumann inequality sweep.
    VnSweep,
    /// Parseval identity at each radius.
    Parseval,
    /// Normal-family witnesses for a family file.
    Normality,
    /// Clustered subsequence of a family file.
    Extract,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Parser)]
#[command(name = "unitdisk", version, about = "Harmonic and holomorphic functions on the unit disk")]
pub struct RunConfig {
    pub command: CommandKind,
    /// Circle grid size.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Coefficient truncation.
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Largest matrix dimension in sweeps.
    #[arg(long, default_value_t = 6)]
    pub dim: usize,
    /// Largest polynomial degree in sweeps.
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
    /// `power:<p>`, `exp:<lambda>` or `file:<path>`.
    #[arg(long)]
    pub gauge: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Radius of the sampled circle for `coeffs`.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Clustering tolerance for `extract`.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Interior points CSV (`re,im`) for `extend`.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Replace each sweep operator by an unchecked matrix of this norm and
    /// use p(z) = z.
    #[arg(long, hide = true)]
    pub corrupt_norm: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InputError = 2,
    DomainError = 3,
    Violation = 4,
    NotMonotone = 5,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Outcome of a command: status plus a message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub status: ExitStatus,
    pub message: Option<String>,
}

impl Report {
    fn ok() -> Self {
        Self { status: ExitStatus::Success, message: None }
    }

    fn with(status: ExitStatus, message: impl Into<String>) -> Self {
        Self { status, message: Some(message.into()) }
    }
}

type CmdResult = Result<Report, Report>;

fn input_err(e: impl ToString) -> Report {
    Report::with(ExitStatus::InputError, e.to_string())
}

fn format_err(e: FormatError) -> Report {
    input_err(e)
}

fn core_err(e: Error) -> Report {
    match e {
        Error::OutsideDisk { .. } | Error::NoConvergence(_) | Error::NotContraction(_) => {
            Report::with(ExitStatus::DomainError, e.to_string())
        }
        _ => input_err(e),
    }
}

const DEFAULT_RADII: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

impl RunConfig {
    fn input(&self) -> Result<&Path, Report> {
        self.input.as_deref().ok_or_else(|| input_err("missing --in"))
    }

    fn read_input(&self) -> Result<(String, String), Report> {
        let path = self.input()?;
        let text = io::read_text(path).map_err(format_err)?;
        Ok((text, path.display().to_string()))
    }

    fn radii(&self) -> Vec<f64> {
        self.radii.clone().unwrap_or_else(|| DEFAULT_RADII.to_vec())
    }

    fn emit(&self, text: &str) -> Result<(), Report> {
        match &self.out {
            Some(path) => io::write_text(path, text).map_err(format_err),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Runs one command.
pub fn execute(config: &RunConfig) -> Report {
    let result = match config.command {
        CommandKind::Extend => cmd_extend(config),
        CommandKind::Coeffs => cmd_coeffs(config),
        CommandKind::Project => cmd_project(config),
        CommandKind::Means => cmd_means(config),
        CommandKind::Supmeans => cmd_supmeans(config),
        CommandKind::VnSweep => cmd_vn_sweep(config),
        CommandKind::Parseval => cmd_parseval(config),
        CommandKind::Normality => cmd_normality(config),
        CommandKind::Extract => cmd_extract(config),
    };
    result.unwrap_or_else(|r| r)
}

pub fn cmd_extend(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let samples = io::boundary_from_csv::<f64>(&text, &origin).map_err(format_err)?;
    let points_path = config.points.as_deref().ok_or_else(|| input_err("missing --points"))?;
    let points_text = io::read_text(points_path).map_err(format_err)?;
    let points = io::points_from_csv::<f64>(&points_text, &points_path.display().to_string()).map_err(format_err)?;

    let mut out = String::from("re,im,h_re,h_im,resolution_flag\n");
    for (i, z) in points.iter().enumerate() {
        let zeta = DiskPoint::new(*z).map_err(|e| {
            Report::with(ExitStatus::DomainError, format!("{}: row {}: {e}", points_path.display(), i + 1))
        })?;
        let ext = poisson_extend(&samples, zeta);
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt17(z.re),
            fmt17(z.im),
            fmt17(ext.value.re),
            fmt17(ext.value.im),
            ext.under_resolved
        );
    }
    config.emit(&out)?;
    Ok(Report::ok())
}

pub fn cmd_coeffs(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let samples = io::boundary_from_csv::<f64>(&text, &origin).map_err(format_err)?;
    let n_max = config.nmax.unwrap_or((samples.m() - 1) / 2);
    let (coeffs, message) = match config.radius {
        None => (coefficients_from_boundary(&samples, n_max).map_err(core_err)?, None),
        Some(r) => {
            let out = coefficients_at_radius(&samples, r, n_max).map_err(core_err)?;
            let warn = out
                .ill_conditioned
                .then(|| format!("warning: r^n_max = {:e} < 1e-12, recovered coefficients are ill-conditioned", r.powi(n_max as i32)));
            (out.coefficients, warn)
        }
    };
    config.emit(&io::coefficients_to_json(&coeffs))?;
    Ok(Report { status: ExitStatus::Success, message })
}

pub fn cmd_project(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let p = io::mixed_polynomial_from_json::<f64>(&text, &origin).map_err(format_err)?;
    config.emit(&io::coefficients_to_json(&harmonic_projection(&p)))?;
    Ok(Report::ok())
}

fn emit_table(config: &RunConfig, table: &MeanTable<f64>) -> CmdResult {
    let monotone = table.is_monotone();
    let mut out = io::mean_table_to_csv(table);
    let _ = writeln!(out, "monotone: {monotone}");
    config.emit(&out)?;
    if monotone {
        Ok(Report::ok())
    } else {
        Err(Report::with(ExitStatus::NotMonotone, "mean table is not nondecreasing within tolerance"))
    }
}

pub fn cmd_means(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let c = io::coefficients_from_json::<f64>(&text, &origin).map_err(format_err)?;
    let spec = config.gauge.as_deref().ok_or_else(|| input_err("missing --gauge"))?;
    let gauge = io::parse_gauge_spec::<f64>(spec).map_err(format_err)?;
    let m = config.grid.unwrap_or(DEFAULT_GRID);
    let radii = config.radii();
    let table = if gauge.is_holomorphic_only() {
        if !c.is_holomorphic() {
            return Err(input_err(format!(
                "gauge {spec} is not convex and requires holomorphic mode, but {origin} has negative-index coefficients"
            )));
        }
        let crate::means::ConvexGauge::Power(p) = gauge else { unreachable!() };
        holomorphic_subconvex_scan(&c, p, &radii, m)
    } else {
        mean_scan(&c, &gauge, &radii, m)
    }
    .map_err(core_err)?;
    emit_table(config, &table)
}

pub fn cmd_supmeans(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let c = io::coefficients_from_json::<f64>(&text, &origin).map_err(format_err)?;
    let m = config.grid.unwrap_or(DEFAULT_GRID);
    let table = sup_scan(&c, &config.radii(), m).map_err(core_err)?;
    emit_table(config, &table)
}

fn failure_dump_path(config: &RunConfig) -> PathBuf {
    match &config.out {
        Some(p) => {
            let mut s = p.clone().into_os_string();
            s.push(".failure.json");
            PathBuf::from(s)
        }
        None => PathBuf::from("vn-sweep.failure.json"),
    }
}

pub fn cmd_vn_sweep(config: &RunConfig) -> CmdResult {
    if config.dim == 0 {
        return Err(input_err("--dim must be at least 1"));
    }
    let mut rng = seeded(config.seed);
    let mut out = String::from("trial,lhs,rhs,margin,holds\n");
    let mut first_failure: Option<(usize, ComplexMatrix<f64>, ComplexPolynomial<f64>)> = None;
    for trial in 0..config.trials {
        let dim = rng.random_range(1..=config.dim);
        let degree = rng.random_range(0..=config.degree);
        let (t, p) = match config.corrupt_norm {
            None => (random_contraction::<f64, _>(&mut rng, dim).map_err(core_err)?, random_polynomial(&mut rng, degree)),
            Some(scale) => {
                let raw: Vec<Complex<f64>> = (0..dim * dim).map(|_| unit_box(&mut rng)).collect();
                let raw = ComplexMatrix::from_row_major(dim, raw).map_err(core_err)?;
                let norm = operator_norm(&raw).map_err(core_err)?;
                (ContractionOperator::new_unchecked(raw.scale(scale / norm)), ComplexPolynomial::monomial(1))
            }
        };
        let report = von_neumann_check(&p, &t).map_err(core_err)?;
        let _ = writeln!(
            out,
            "{trial},{},{},{},{}",
            fmt17(report.lhs),
            fmt17(report.rhs),
            fmt17(report.margin()),
            report.holds
        );
        if !report.holds && first_failure.is_none() {
            first_failure = Some((trial, t.matrix().clone(), p));
        }
    }
    config.emit(&out)?;
    match first_failure {
        None => Ok(Report::ok()),
        Some((trial, matrix, poly)) => {
            let dump = serde_json::json!({
                "trial": trial,
                "matrix": io::MatrixFile::from(&matrix),
                "polynomial": io::PolynomialFile::from(&poly),
            });
            let path = failure_dump_path(config);
            io::write_text(&path, &serde_json::to_string_pretty(&dump).expect("plain data serializes"))
                .map_err(format_err)?;
            Err(Report::with(
                ExitStatus::Violation,
                format!("inequality violated in trial {trial}; operator and polynomial written to {}", path.display()),
            ))
        }
    }
}

pub fn cmd_parseval(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let c = io::coefficients_from_json::<f64>(&text, &origin).map_err(format_err)?;
    let m = config.grid.unwrap_or(DEFAULT_GRID);
    // |h|^2 has bandwidth 2N; the trapezoid mean is exact for m > 2N.
    if m <= 2 * c.bandwidth() {
        return Err(core_err(Error::Aliasing { m, n_max: c.bandwidth() }));
    }
    let mut radii = config.radii();
    if config.radii.is_none() {
        radii.push(1.0);
    }
    let mut out = String::from("r,quadrature,coefficient_sum,abs_diff\n");
    for r in radii {
        let sum = parseval_sum(&c, r).map_err(core_err)?;
        let quad = compensated_sum((0..m).map(|k| c.eval_raw(root_of_unity::<f64>(k, m) * r).norm_sqr())) / m as f64;
        let _ = writeln!(out, "{},{},{},{}", fmt17(r), fmt17(quad), fmt17(sum), fmt17((quad - sum).abs()));
    }
    config.emit(&out)?;
    Ok(Report::ok())
}

pub fn cmd_normality(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let members = io::family_from_json::<f64>(&text, &origin).map_err(format_err)?;
    let family = FunctionFamily::new(members, origin).map_err(core_err)?;
    let m = config.grid.unwrap_or(DEFAULT_GRID);
    let radii = config.radii();
    let cert = NormalityCertificate::certify(&family, &radii, m).map_err(core_err)?;
    let mut out = String::from("r,m_bound,c_bound,coefficient_domination\n");
    for ((r, mb), cb) in radii.iter().zip(&cert.m_bounds).zip(&cert.c_bounds) {
        let s = 0.5 * (1.0 + r);
        let dom = function_bound_from_coefficients(&family, *r, s).map_err(core_err)?;
        let _ = writeln!(out, "{},{},{},{}", fmt17(*r), fmt17(*mb), fmt17(*cb), fmt17(dom));
    }
    config.emit(&out)?;
    Ok(Report::ok())
}

pub fn cmd_extract(config: &RunConfig) -> CmdResult {
    let (text, origin) = config.read_input()?;
    let members = io::family_from_json::<f64>(&text, &origin).map_err(format_err)?;
    let tol = config.tol.ok_or_else(|| input_err("missing --tol"))?;
    let sub = extract_subsequence(&members, tol).map_err(core_err)?;
    config.emit(&io::extraction_to_json(&sub))?;
    Ok(Report::ok())
}
