//! On-disk formats: JSON for coefficients, polynomials, matrices, families
//! and gauges; CSV for boundary samples, points and tables.
//!
//! Floats in CSV output are written with 17 significant digits, which
//! round-trips every `f64` bit-exactly. JSON floats use the shortest
//! representation that parses back to the same `f64`.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{BoundarySamples, MixedPolynomial};
use crate::circle::{ComplexMatrix, ComplexPolynomial};
use crate::error::Error;
use crate::means::{ConvexGauge, MeanTable};
use crate::normal::Subsequence;
use crate::scalar::Real;
use crate::series::LaurentCoefficients;

/// Errors reading or writing the file formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("{path}: row {row}: {msg}")]
    Row { path: String, row: usize, msg: String },
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: Error,
    },
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

/// `x` with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn read_text(path: &Path) -> FormatResult<String> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> FormatResult<()> {
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

fn parse_err(origin: &str, msg: impl ToString) -> FormatError {
    FormatError::Parse { path: origin.to_string(), msg: msg.to_string() }
}

fn invalid(origin: &str) -> impl FnOnce(Error) -> FormatError + '_ {
    move |source| FormatError::Invalid { path: origin.to_string(), source }
}

fn to_pair<T: Real>(z: Complex<T>) -> [f64; 2] {
    [z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)]
}

fn from_pair<T: Real>(p: [f64; 2]) -> Complex<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}

/// `{"n_min": int, "n_max": int, "coeffs": [[re, im], ...]}`, ascending `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFile {
    pub n_min: i64,
    pub n_max: i64,
    pub coeffs: Vec<[f64; 2]>,
}

impl<T: Real> From<&LaurentCoefficients<T>> for CoefficientFile {
    fn from(c: &LaurentCoefficients<T>) -> Self {
        Self { n_min: c.n_min(), n_max: c.n_max(), coeffs: c.coeffs().iter().map(|&z| to_pair(z)).collect() }
    }
}

impl CoefficientFile {
    pub fn to_series<T: Real>(&self) -> crate::Result<LaurentCoefficients<T>> {
        LaurentCoefficients::with_window(self.n_min, self.n_max, self.coeffs.iter().map(|&p| from_pair(p)).collect())
    }
}

pub fn coefficients_to_json<T: Real>(c: &LaurentCoefficients<T>) -> String {
    serde_json::to_string_pretty(&CoefficientFile::from(c)).expect("plain data serializes")
}

pub fn coefficients_from_json<T: Real>(text: &str, origin: &str) -> FormatResult<LaurentCoefficients<T>> {
    let file: CoefficientFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    file.to_series().map_err(invalid(origin))
}

/// Family file: a JSON array of coefficient objects.
pub fn family_to_json<T: Real>(members: &[LaurentCoefficients<T>]) -> String {
    let files: Vec<CoefficientFile> = members.iter().map(CoefficientFile::from).collect();
    serde_json::to_string_pretty(&files).expect("plain data serializes")
}

pub fn family_from_json<T: Real>(text: &str, origin: &str) -> FormatResult<Vec<LaurentCoefficients<T>>> {
    let files: Vec<CoefficientFile> = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    files.iter().map(|f| f.to_series().map_err(invalid(origin))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct TermRecord {
    j: u32,
    k: u32,
    re: f64,
    im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MixedPolynomialFile {
    terms: Vec<TermRecord>,
}

/// `{"terms": [{"j": int, "k": int, "re": float, "im": float}, ...]}`.
pub fn mixed_polynomial_to_json<T: Real>(p: &MixedPolynomial<T>) -> String {
    let terms = p
        .terms()
        .map(|((j, k), c)| {
            let [re, im] = to_pair(c);
            TermRecord { j, k, re, im }
        })
        .collect();
    serde_json::to_string_pretty(&MixedPolynomialFile { terms }).expect("plain data serializes")
}

pub fn mixed_polynomial_from_json<T: Real>(text: &str, origin: &str) -> FormatResult<MixedPolynomial<T>> {
    let file: MixedPolynomialFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    MixedPolynomial::from_terms(file.terms.into_iter().map(|t| (t.j, t.k, from_pair([t.re, t.im]))))
        .map_err(invalid(origin))
}

/// `{"dim": int, "entries": [[re, im], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl<T: Real> From<&ComplexMatrix<T>> for MatrixFile {
    fn from(m: &ComplexMatrix<T>) -> Self {
        Self { dim: m.dim(), entries: m.entries().iter().map(|&z| to_pair(z)).collect() }
    }
}

pub fn matrix_to_json<T: Real>(m: &ComplexMatrix<T>) -> String {
    serde_json::to_string_pretty(&MatrixFile::from(m)).expect("plain data serializes")
}

pub fn matrix_from_json<T: Real>(text: &str, origin: &str) -> FormatResult<ComplexMatrix<T>> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    ComplexMatrix::from_row_major(file.dim, file.entries.into_iter().map(from_pair).collect()).map_err(invalid(origin))
}

/// `{"coeffs": [[re, im], ...]}`, ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub coeffs: Vec<[f64; 2]>,
}

impl<T: Real> From<&ComplexPolynomial<T>> for PolynomialFile {
    fn from(p: &ComplexPolynomial<T>) -> Self {
        Self { coeffs: p.coeffs().iter().map(|&z| to_pair(z)).collect() }
    }
}

pub fn polynomial_to_json<T: Real>(p: &ComplexPolynomial<T>) -> String {
    serde_json::to_string_pretty(&PolynomialFile::from(p)).expect("plain data serializes")
}

pub fn polynomial_from_json<T: Real>(text: &str, origin: &str) -> FormatResult<ComplexPolynomial<T>> {
    let file: PolynomialFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    ComplexPolynomial::new(file.coeffs.into_iter().map(from_pair).collect()).map_err(invalid(origin))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct GaugeFile {
    knots: Vec<f64>,
    values: Vec<f64>,
}

/// Tabulated gauge: `{"knots": [...], "values": [...]}`.
pub fn gauge_from_json<T: Real>(text: &str, origin: &str) -> FormatResult<ConvexGauge<T>> {
    let file: GaugeFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    ConvexGauge::tabulated(
        file.knots.into_iter().map(T::lit).collect(),
        file.values.into_iter().map(T::lit).collect(),
    )
    .map_err(invalid(origin))
}

/// Parses `power:<p>`, `exp:<lambda>` or `file:<path>`.
pub fn parse_gauge_spec<T: Real>(spec: &str) -> FormatResult<ConvexGauge<T>> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| parse_err("--gauge", format!("expected kind:value, got {spec:?}")))?;
    let number = || -> FormatResult<T> {
        arg.trim()
            .parse::<f64>()
            .map(T::lit)
            .map_err(|e| parse_err("--gauge", format!("{arg:?}: {e}")))
    };
    match kind {
        "power" => ConvexGauge::power(number()?).map_err(invalid("--gauge")),
        "exp" => ConvexGauge::exp_scaled(number()?).map_err(invalid("--gauge")),
        "file" => {
            let path = Path::new(arg);
            gauge_from_json(&read_text(path)?, &path.display().to_string())
        }
        other => Err(parse_err("--gauge", format!("unknown gauge kind {other:?}"))),
    }
}

/// `{"indices": [...], "degenerate": bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionFile {
    pub indices: Vec<usize>,
    pub degenerate: bool,
}

pub fn extraction_to_json(s: &Subsequence) -> String {
    let file = ExtractionFile { indices: s.indices.clone(), degenerate: s.degenerate };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes())
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, expected: &[&str], origin: &str) -> FormatResult<()> {
    let header = rdr.headers().map_err(|e| parse_err(origin, e))?;
    if header.iter().collect::<Vec<_>>() != expected {
        return Err(parse_err(origin, format!("expected header {:?}, got {:?}", expected.join(","), header)));
    }
    Ok(())
}

fn field<F: std::str::FromStr>(rec: &csv::StringRecord, i: usize, row: usize, origin: &str) -> FormatResult<F>
where
    F::Err: std::fmt::Display,
{
    let raw = rec.get(i).ok_or_else(|| FormatError::Row {
        path: origin.to_string(),
        row,
        msg: format!("missing column {}", i + 1),
    })?;
    raw.parse().map_err(|e: F::Err| FormatError::Row { path: origin.to_string(), row, msg: format!("{raw:?}: {e}") })
}

/// Boundary samples as CSV: `k,theta,re,im`, `theta = 2 pi k / m`.
pub fn boundary_to_csv<T: Real>(s: &BoundarySamples<T>) -> String {
    let m = s.m();
    let mut out = String::from("k,theta,re,im\n");
    for (k, v) in s.values().iter().enumerate() {
        let theta = std::f64::consts::TAU * k as f64 / m as f64;
        let [re, im] = to_pair(*v);
        out.push_str(&format!("{k},{},{},{}\n", fmt17(theta), fmt17(re), fmt17(im)));
    }
    out
}

pub fn boundary_from_csv<T: Real>(text: &str, origin: &str) -> FormatResult<BoundarySamples<T>> {
    let mut rdr = csv_reader(text);
    check_header(&mut rdr, &["k", "theta", "re", "im"], origin)?;
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| FormatError::Row { path: origin.to_string(), row, msg: e.to_string() })?;
        let k: usize = field(&rec, 0, row, origin)?;
        if k != i {
            return Err(FormatError::Row {
                path: origin.to_string(),
                row,
                msg: format!("expected k = {i}, got {k}"),
            });
        }
        let re: f64 = field(&rec, 2, row, origin)?;
        let im: f64 = field(&rec, 3, row, origin)?;
        values.push(from_pair([re, im]));
    }
    BoundarySamples::new(values).map_err(invalid(origin))
}

/// Points file: CSV `re,im`, returned unchecked as complex numbers.
pub fn points_from_csv<T: Real>(text: &str, origin: &str) -> FormatResult<Vec<Complex<T>>> {
    let mut rdr = csv_reader(text);
    check_header(&mut rdr, &["re", "im"], origin)?;
    rdr.records()
        .enumerate()
        .map(|(i, rec)| {
            let row = i + 1;
            let rec = rec.map_err(|e| FormatError::Row { path: origin.to_string(), row, msg: e.to_string() })?;
            let re: f64 = field(&rec, 0, row, origin)?;
            let im: f64 = field(&rec, 1, row, origin)?;
            Ok(from_pair([re, im]))
        })
        .collect()
}

/// Mean table as CSV: `r,mean`.
pub fn mean_table_to_csv<T: Real>(t: &MeanTable<T>) -> String {
    let mut out = String::from("r,mean\n");
    for (r, v) in t.radii.iter().zip(&t.means) {
        out.push_str(&format!(
            "{},{}\n",
            fmt17(r.to_f64().unwrap_or(f64::NAN)),
            fmt17(v.to_f64().unwrap_or(f64::NAN))
        ));
    }
    out
}

/// Reads a mean table back (ignores a trailing `monotone:` line).
pub fn mean_table_values_from_csv(text: &str, origin: &str) -> FormatResult<Vec<(f64, f64)>> {
    let body: String = text.lines().filter(|l| !l.starts_with("monotone:")).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv_reader(&body);
    check_header(&mut rdr, &["r", "mean"], origin)?;
    rdr.records()
        .enumerate()
        .map(|(i, rec)| {
            let row = i + 1;
            let rec = rec.map_err(|e| FormatError::Row { path: origin.to_string(), row, msg: e.to_string() })?;
            Ok((field(&rec, 0, row, origin)?, field(&rec, 1, row, origin)?))
        })
        .collect()
}
