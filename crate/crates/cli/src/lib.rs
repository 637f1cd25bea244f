//! Job specification, dispatch and rendering for the `gcliff` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use gcliff::classify::{
    base_locus_conics, census, classify_all, diff_against_golden, segre_symbol, solve_kf, Census, ClassificationRecord,
    KfSolution,
};
use gcliff::clifford::{normalize_seq, square_coefficients, CliffordAlgebra, EquivalenceWitness, SymMatrixSeq};
use gcliff::geometry::{
    char_variety, fiber_check, multilinearize, quotient_geometry, sample_curve_points, Count, FiberReport, ProjPoint,
    QuotientGeometry,
};
use gcliff::io::{seq_from_wire, seq_to_wire, PresentationWire};
use gcliff::matrix::Matrix;
use gcliff::quadratic::{
    build_sf, hilbert_truncated, is_regular_sequence, iterate_dual_of_quotient, quadratic_dual, CentralQuadric,
    QuadraticPresentation, RegularityVerdict,
};
use gcliff::scalar::{int, Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Dual,
    Normalize,
    Center,
    Hilbert,
    Regular,
    Pointvariety,
    Charvariety,
    Quotient,
    Kf,
    Segre,
    Classify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Rational,
    Ext,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSpec {
    pub linear: Vec<Rat>,
}

/// The JSON input document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub n: Option<usize>,
    #[serde(rename = "F")]
    pub f: Option<Vec<Vec<Vec<Rat>>>>,
    #[serde(default)]
    pub quotient: Vec<QuotientSpec>,
    #[serde(rename = "D")]
    pub d: Option<usize>,
    pub mode: Option<Mode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Inline(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<Source>,
    pub format: Format,
    /// Overrides `D` from the input.
    pub degree: Option<usize>,
    /// Overrides `mode` from the input.
    pub mode: Option<Mode>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("{0}")]
    Math(#[from] gcliff::Error),
    #[error("golden table mismatch:\n{}", .0.join("\n"))]
    Golden(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Math(_) => 3,
            CliError::Golden(_) => 4,
        }
    }

    fn schema(location: &str, message: impl Into<String>) -> Self {
        CliError::Schema { location: location.into(), message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaRow {
    pub p: ProjPoint,
    pub sigma: ProjPoint,
    pub phi: ProjPoint,
    pub fixed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinorIdeal {
    pub s: usize,
    pub generators: Vec<String>,
}

/// Everything a command can emit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "lowercase")]
pub enum Report {
    Dual { presentation: PresentationWire, relation_count: usize },
    Normalize { normalized: Vec<Vec<Vec<Rat>>>, witness: EquivalenceWitness },
    Center { degree2: Vec<String>, g: String, c: Rat, det: String },
    Hilbert { coeffs: Vec<u64> },
    Regular(RegularityVerdict),
    Pointvariety { curve: String, samples: Vec<SigmaRow>, omitted: usize },
    Charvariety { ideals: Vec<MinorIdeal> },
    Quotient { geometry: QuotientGeometry, fiber: Option<FiberReport> },
    Kf(KfSolution),
    Segre { symbol: String, dual_locus: String },
    Classify { records: Vec<ClassificationRecord>, census: Census },
}

const DEFAULT_DEGREE: usize = 6;
const SIGMA_SAMPLES: usize = 8;

fn read_input(src: &Option<Source>) -> Result<Input, CliError> {
    let text = match src {
        None => return Ok(Input::default()),
        Some(Source::Inline(s)) => s.clone(),
        Some(Source::File(p)) => std::fs::read_to_string(p).map_err(|e| CliError::schema(&p.display().to_string(), e.to_string()))?,
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::schema(&format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

struct Job {
    input: Input,
    degree: usize,
    mode: Mode,
}

impl Job {
    fn seq(&self) -> Result<SymMatrixSeq, CliError> {
        let Some(w) = self.input.f.clone() else {
            return Err(CliError::schema("F", "missing matrix sequence"));
        };
        let f = seq_from_wire(w).map_err(|e| CliError::schema("F", e.to_string()))?;
        if let Some(n) = self.input.n {
            if n != f.n() {
                return Err(CliError::schema("n", format!("n = {n} but the matrices are {}x{}", f.n(), f.n())));
            }
        }
        Ok(f)
    }

    fn forms(&self, n: usize) -> Result<Vec<Vec<Scalar>>, CliError> {
        self.input
            .quotient
            .iter()
            .enumerate()
            .map(|(i, q)| {
                if q.linear.len() != n {
                    return Err(CliError::schema(&format!("quotient[{i}].linear"), format!("expected {n} coefficients")));
                }
                Ok(q.linear.iter().map(|x| x.0.clone()).collect())
            })
            .collect()
    }

    /// `S^F` and the central quadrics `g²` of the quotient, as coefficient matrices.
    fn ambient_and_squares(&self) -> Result<(SymMatrixSeq, QuadraticPresentation, Vec<Matrix<Scalar>>), CliError> {
        let f = self.seq()?;
        let p = build_sf(&f)?;
        let forms = self.forms(f.n())?;
        if !forms.is_empty() && !f.is_normalized()? {
            return Err(gcliff::Error::NotNormalized.into());
        }
        let squares = forms
            .iter()
            .map(|g| {
                let a = square_coefficients(&f, g);
                Matrix::from_fn(a.len(), a.len(), |i, j| if i == j { a[i].clone() } else { int(0) })
            })
            .collect();
        Ok((f, p, squares))
    }

    fn keep(&self, p: &ProjPoint) -> bool {
        self.mode == Mode::Ext || p.is_rational()
    }
}

/// Commutative quadrics of `(S^F/(g₁², …))^!`.
fn dual_conics(p: &QuadraticPresentation, squares: &[Matrix<Scalar>]) -> Result<Vec<Matrix<Scalar>>, CliError> {
    let steps = iterate_dual_of_quotient(p, squares)?;
    Ok(steps.last().map_or_else(|| quadratic_dual(p).quadrics(), |s| s.dual.quadrics()))
}

fn first_rational_point(pv: &gcliff::geometry::PointVariety) -> Result<Option<ProjPoint>, CliError> {
    let n = pv.n();
    let side = 7i64;
    for code in 0..side.pow(n as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = c % side - side / 2;
                c /= side;
                d
            })
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let p = ProjPoint::from_ints(&v)?;
        if pv.contains(&p)? && pv.sigma(&p).is_ok() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn execute(command: Command, job: &Job) -> Result<Report, CliError> {
    Ok(match command {
        Command::Dual => {
            let (_, p, squares) = job.ambient_and_squares()?;
            let d = quadratic_dual(&p.quotient(&squares)?);
            Report::Dual { relation_count: d.relation_count(), presentation: PresentationWire::from(&d) }
        }
        Command::Normalize => {
            let (g, witness) = normalize_seq(&job.seq()?)?;
            Report::Normalize { normalized: seq_to_wire(&g), witness }
        }
        Command::Center => {
            let alg = CliffordAlgebra::new(&job.seq()?)?;
            let degree2 = alg.center_degree2()?.iter().map(ToString::to_string).collect();
            let ce = alg.center_element()?;
            let names: Vec<String> = ce.det.default_names("y");
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Report::Center { degree2, g: ce.g.to_string(), c: Rat(ce.c), det: ce.det.fmt_with(&refs) }
        }
        Command::Hilbert => {
            let (_, p, squares) = job.ambient_and_squares()?;
            Report::Hilbert { coeffs: hilbert_truncated(&p, &squares, job.degree)?.coeffs }
        }
        Command::Regular => {
            let (_, p, squares) = job.ambient_and_squares()?;
            if squares.is_empty() {
                return Err(CliError::schema("quotient", "at least one linear form is required"));
            }
            let fs = squares.into_iter().map(|m| CentralQuadric::new(&p, m)).collect::<gcliff::Result<Vec<_>>>()?;
            Report::Regular(is_regular_sequence(&p, &fs, job.degree)?)
        }
        Command::Pointvariety => {
            let pv = multilinearize(&build_sf(&job.seq()?)?)?;
            let names = ["x", "y", "z", "w"];
            let curve = pv.curve().fmt_with(&names[..pv.n().min(4)]);
            let mut samples = vec![];
            let mut omitted = 0;
            if let Some(base) = first_rational_point(&pv)? {
                for p in sample_curve_points(&pv, &base, SIGMA_SAMPLES)? {
                    let Ok(sigma) = pv.sigma(&p) else { continue };
                    if !job.keep(&p) {
                        omitted += 1;
                        continue;
                    }
                    let phi = pv.phi(&p)?;
                    samples.push(SigmaRow { fixed: sigma == p, p, sigma, phi });
                }
            }
            Report::Pointvariety { curve, samples, omitted }
        }
        Command::Charvariety => {
            let f = job.seq()?;
            let names = ["y1", "y2", "y3", "y4", "y5", "y6"];
            let ideals = (1..=f.n())
                .map(|s| {
                    let ideal = char_variety(&f, s)?;
                    let k = ideal.nvars.min(names.len());
                    Ok(MinorIdeal { s, generators: ideal.distinct().iter().map(|g| g.fmt_with(&names[..k])).collect() })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Report::Charvariety { ideals }
        }
        Command::Quotient => {
            let f = job.seq()?;
            let forms = job.forms(f.n())?;
            let mut geometry = quotient_geometry(&f, &forms)?;
            let finite = geometry.e.count != Count::Infinite && geometry.e.points.is_some();
            let fiber = if finite { Some(fiber_check(&f, &geometry)?) } else { None };
            if job.mode == Mode::Rational {
                for set in [&mut geometry.e, &mut geometry.fixed, &mut geometry.x3, &mut geometry.x2] {
                    if let Some(pts) = set.points.as_mut() {
                        pts.retain(|p| p.is_rational());
                    }
                }
            }
            Report::Quotient { geometry, fiber }
        }
        Command::Kf => {
            let (f, _, squares) = job.ambient_and_squares()?;
            let [a] = squares.as_slice() else {
                return Err(CliError::schema("quotient", "exactly one linear form is required"));
            };
            let diag: Vec<Scalar> = (0..f.n()).map(|i| a.get(i, i).clone()).collect();
            let mut sol = solve_kf(&f, &diag)?;
            if job.mode == Mode::Rational {
                if let Some(pts) = sol.points.as_mut() {
                    pts.retain(|u| u.iter().all(|c| c.is_rational()));
                }
            }
            Report::Kf(sol)
        }
        Command::Segre => {
            let (_, p, squares) = job.ambient_and_squares()?;
            if squares.len() != 1 {
                return Err(CliError::schema("quotient", "exactly one linear form is required"));
            }
            let conics = dual_conics(&p, &squares)?;
            let [g1, g2] = conics.as_slice() else {
                return Err(gcliff::Error::Inconsistent(format!("dual has {} quadrics, expected 2", conics.len())).into());
            };
            let (locus, _) = base_locus_conics(&conics)?;
            Report::Segre { symbol: segre_symbol(g1, g2)?.to_string(), dual_locus: locus.to_string() }
        }
        Command::Classify => {
            let records = classify_all()?;
            let diff = diff_against_golden(&records);
            if !diff.is_empty() {
                return Err(CliError::Golden(diff));
            }
            Report::Classify { census: census(&records), records }
        }
    })
}

/// Outcome of a run: process exit status and the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(spec: &JobSpec) -> Outcome {
    match run_report(spec) {
        Ok(report) => {
            let stdout = match spec.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                Format::Table => render_table(&report),
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn run_report(spec: &JobSpec) -> Result<Report, CliError> {
    let input = read_input(&spec.input)?;
    let degree = spec.degree.or(input.d).unwrap_or(DEFAULT_DEGREE);
    let mode = spec.mode.or(input.mode).unwrap_or_default();
    execute(spec.command, &Job { input, degree, mode })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            items.iter().map(cell).collect::<Vec<_>>().join(", ")
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn object_table(items: &[Value]) -> String {
    let Some(Value::Object(first)) = items.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for it in items {
        rows.push(keys.iter().map(|k| it.get(k.as_str()).map_or_else(String::new, cell)).collect());
    }
    aligned(&rows)
}

/// Aligned text: arrays of objects become column tables, everything else `key  value` lines.
pub fn render_table(report: &Report) -> String {
    let v = serde_json::to_value(report).expect("serializable");
    let command = v["command"].as_str().unwrap_or_default().to_string();
    let mut out = String::new();
    let mut pairs = vec![];
    let mut tables = vec![];
    match &v["result"] {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Array(items) if items.first().is_some_and(Value::is_object) => tables.push((k.clone(), items.clone())),
                    Value::Object(inner) => {
                        for (k2, v2) in inner {
                            pairs.push(vec![format!("{k}.{k2}"), cell(v2)]);
                        }
                    }
                    other => pairs.push(vec![k.clone(), cell(other)]),
                }
            }
        }
        other => pairs.push(vec![command.clone(), cell(other)]),
    }
    let _ = writeln!(out, "{command}");
    out.push_str(&aligned(&pairs));
    for (name, items) in tables {
        let _ = writeln!(out, "\n{name}");
        out.push_str(&object_table(&items));
    }
    out
}
