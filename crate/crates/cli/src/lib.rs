//! Front end for the umbilic analysis library: spec files, commands and
//! reports.
//!
//! Exit codes: 0 on success, 1 when an output file cannot be written, 2 on
//! a usage or parse error (including unreadable inputs), 3 when an analysis
//! fails.

pub mod report;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use umbilic_core::deform::{default_radius, split_member, summarize, Family};
use umbilic_core::interval::RealValue;
use umbilic_core::jet::{to_f64, FloatPoly};
use umbilic_core::portrait::{contour, emit_svg, portrait, BoundingBox, PortraitOptions, SvgStyle};
use umbilic_core::strata::{plane_curves, stratify, Plane};
use umbilic_core::umbilic::{analyze_parametrisation, umbilic_multiplicity_with, Options};
use umbilic_core::versality::equivalence_panel;
use umbilic_core::{q, qi, Error, Scalar};

use report::{AnalysisRecord, DeformRecord, StratumRecord};
use spec::{ParseError, SurfaceSpec};

/// Overrides the directory searched for named models.
pub const MODELS_ENV: &str = "UMBILIC_MODELS_DIR";

pub fn models_dir() -> PathBuf {
    match std::env::var_os(MODELS_ENV) {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models"),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{name}: {source}")]
    Analysis { name: String, source: Error },
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Output(_) => 1,
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Analysis { .. } => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Records,
}

#[derive(Debug, Parser)]
#[command(name = "umbilic", version, about = "Multiplicity and local geometry of umbilic points")]
pub struct Cli {
    /// Starting truncation order for the exact computations.
    #[arg(long, global = true, value_name = "N")]
    pub order: Option<u32>,
    /// Search radius (deform, exact rational) or half-width of the box
    /// (portrait, decimal allowed).
    #[arg(long, global = true)]
    pub radius: Option<String>,
    /// Write the report or SVG here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicities, singularity classes, configuration and the
    /// equivalence panel of each spec.
    Analyze {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Locate grid points of a parameter plane in its stratification.
    Stratify {
        /// beta, timelike_i, timelike_iii_plus or timelike_iii_minus.
        plane: String,
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        s_range: String,
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        t_range: String,
        /// Grid points per axis.
        #[arg(long, default_value_t = 9)]
        steps: usize,
    },
    /// SVG of the lines of principal curvature around the umbilic.
    Portrait {
        file: String,
        #[arg(long, default_value_t = 0.004)]
        step: f64,
        /// Seeds per side of the seed grid.
        #[arg(long, default_value_t = 7)]
        seeds: usize,
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
    /// Count and locate the umbilics of perturbed patches.
    Deform { file: String },
    /// Bundled example patches.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelsAction {
    List,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze { files } => analyze_cmd(cli, files, out, err),
        Command::Stratify { plane, s_range, t_range, steps } => stratify_cmd(cli, plane, s_range, t_range, *steps, out),
        Command::Portrait { file, step, seeds, size } => portrait_cmd(cli, file, *step, *seeds, *size, out),
        Command::Deform { file } => deform_cmd(cli, file, out),
        Command::Models { action: ModelsAction::List } => models_list(cli, out),
    }
}

/// Reads `arg` as a path, or failing that as a model name in the models
/// directory.
pub fn load_spec(arg: &str) -> Result<(String, SurfaceSpec), CliError> {
    let direct = PathBuf::from(arg);
    let path = if direct.is_file() {
        direct
    } else {
        let dir = models_dir();
        [dir.join(format!("{}.surf", arg)), dir.join(arg)]
            .into_iter()
            .find(|p| p.is_file())
            .ok_or_else(|| CliError::Usage(format!("no such spec file or model: {}", arg)))?
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e)))?;
    let spec = spec::parse(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    let name = spec.name.clone().unwrap_or_else(|| {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| arg.to_string())
    });
    Ok((name, spec))
}

fn options(cli: &Cli, spec: &SurfaceSpec) -> Options {
    Options::at_order(cli.order.unwrap_or(spec.order))
}

/// Analysis of one spec: the report and, for graphs, the equivalence panel.
pub fn analyze_spec(name: &str, spec: &SurfaceSpec, opts: Options) -> Result<AnalysisRecord, Error> {
    let report = analyze_parametrisation(&spec.parametrisation(), opts)?;
    let panel = match spec.patch() {
        Some(p) => Some(equivalence_panel(&p, opts)?),
        None => None,
    };
    Ok(AnalysisRecord::new(name.to_string(), &report, panel))
}

/// Writes to `--out` when given, else to `out`.
fn emit(cli: &Cli, out: &mut dyn Write, body: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Output(format!("{}: {}", path.display(), e))),
        None => out.write_all(body.as_bytes()).map_err(|e| CliError::Output(e.to_string())),
    }
}

fn record_line<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string(r).expect("records serialize");
    s.push('\n');
    s
}

fn analyze_cmd(cli: &Cli, files: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let specs = files.iter().map(|f| load_spec(f)).collect::<Result<Vec<_>, _>>()?;
    let results: Vec<_> =
        specs.par_iter().map(|(name, spec)| analyze_spec(name, spec, options(cli, spec))).collect();
    let mut body = String::new();
    let mut first_failure = None;
    for ((name, _), r) in specs.iter().zip(results) {
        match r {
            Ok(rec) => body.push_str(&match cli.format {
                Format::Text => rec.text(),
                Format::Records => record_line(&rec),
            }),
            Err(source) => {
                // the first failure is reported by the caller
                let e = CliError::Analysis { name: name.clone(), source };
                match first_failure {
                    None => first_failure = Some(e),
                    Some(_) => {
                        let _ = writeln!(err, "error: {}", e);
                    }
                }
            }
        }
    }
    emit(cli, out, &body)?;
    match first_failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// An exact rational `p/q`, or a decimal read exactly.
pub fn exact_number(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
        let int = int.trim_start_matches(['-', '+']);
        if !digits(int) || !digits(frac) || (int.is_empty() && frac.is_empty()) {
            return None;
        }
        let num: Scalar = format!("{}{}{}", if neg { "-" } else { "" }, if int.is_empty() { "0" } else { int }, frac)
            .parse()
            .ok()?;
        let den: Scalar = format!("1{}", "0".repeat(frac.len())).parse().ok()?;
        return Some(num / den);
    }
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.split('/').any(|d| d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    if body.split_once('/').is_some_and(|(_, d)| d.bytes().all(|b| b == b'0')) {
        return None;
    }
    s.parse().ok()
}

fn range(s: &str) -> Result<(Scalar, Scalar), CliError> {
    let bad = || CliError::Usage(format!("bad range '{}': expected LO:HI", s));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (exact_number(lo).ok_or_else(bad)?, exact_number(hi).ok_or_else(bad)?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn grid(lo: &Scalar, hi: &Scalar, steps: usize) -> Vec<Scalar> {
    if steps == 1 || lo == hi {
        return vec![lo.clone()];
    }
    let d = (hi - lo) / qi(steps as i64 - 1);
    (0..steps).map(|k| lo + &d * qi(k as i64)).collect()
}

fn stratify_cmd(
    cli: &Cli,
    plane: &str,
    s_range: &str,
    t_range: &str,
    steps: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let plane: Plane = plane.parse().map_err(|_| {
        CliError::Usage(format!("unknown plane '{}': expected beta, timelike_i, timelike_iii_plus or timelike_iii_minus", plane))
    })?;
    if steps == 0 {
        return Err(CliError::Usage(String::from("--steps must be positive")));
    }
    let (s0, s1) = range(s_range)?;
    let (t0, t1) = range(t_range)?;
    let points: Vec<(Scalar, Scalar)> =
        grid(&t0, &t1, steps).into_iter().flat_map(|t| grid(&s0, &s1, steps).into_iter().map(move |s| (s, t.clone()))).collect();
    let labels: Vec<_> = points
        .par_iter()
        .map(|(s, t)| {
            let l = stratify(plane, &RealValue::Exact(s.clone()), &RealValue::Exact(t.clone()))
                .map_err(|source| CliError::Analysis { name: format!("{} ({}, {})", plane, s, t), source })?;
            Ok(StratumRecord::new(s.to_string(), t.to_string(), &l))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut body = String::new();
    for r in &labels {
        match cli.format {
            Format::Text => {
                body.push_str(&r.text());
                body.push('\n');
            }
            Format::Records => body.push_str(&record_line(r)),
        }
    }
    match &cli.out {
        Some(path) => {
            let b = BoundingBox { umin: to_f64(&s0), umax: to_f64(&s1), vmin: to_f64(&t0), vmax: to_f64(&t1) };
            let svg = strata_svg(plane, &b);
            std::fs::write(path, svg).map_err(|e| CliError::Output(format!("{}: {}", path.display(), e)))?;
            out.write_all(body.as_bytes()).map_err(|e| CliError::Output(e.to_string()))
        }
        None => out.write_all(body.as_bytes()).map_err(|e| CliError::Output(e.to_string())),
    }
}

const CURVE_COLOURS: [&str; 4] = ["#c0392b", "#2471a3", "#1e8449", "#7d3c98"];

/// SVG of the exceptional curves of `plane` over `b`.
pub fn strata_svg(plane: Plane, b: &BoundingBox) -> String {
    let size = 600.0;
    let margin = 20.0;
    let (w, h) = ((b.umax - b.umin).max(1e-12), (b.vmax - b.vmin).max(1e-12));
    let scale = (size - 2.0 * margin) / w.max(h);
    let px = |(s, t): (f64, f64)| (margin + (s - b.umin) * scale, size - margin - (t - b.vmin) * scale);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        size as u32
    ));
    svg.push_str(&format!("<title>{}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n", plane));
    for (k, (curve, polys)) in plane_curves(plane).into_iter().enumerate() {
        let colour = CURVE_COLOURS[k % CURVE_COLOURS.len()];
        svg.push_str(&format!("<g class=\"{}\" stroke=\"{}\" stroke-width=\"1.5\" fill=\"none\">\n", curve.name(), colour));
        for p in polys.iter().filter(|p| !p.is_zero()) {
            let f = FloatPoly::from(p);
            for [a, c] in contour(&|s, t| f.eval(s, t), b, 300) {
                let (a, c) = (px(a), px(c));
                svg.push_str(&format!("<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\"/>\n", a.0, a.1, c.0, c.1));
            }
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}

fn graph_only(name: &str, spec: &SurfaceSpec) -> Result<umbilic_core::surface::MongePatch, CliError> {
    spec.patch().ok_or_else(|| CliError::Analysis { name: name.to_string(), source: Error::NotAdapted("a graph patch is required") })
}

fn portrait_cmd(cli: &Cli, file: &str, step: f64, seeds: usize, size: u32, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, spec) = load_spec(file)?;
    let p = graph_only(&name, &spec)?;
    let mut opts = PortraitOptions { step, seeds, ..PortraitOptions::default() };
    if let Some(r) = &cli.radius {
        let r: f64 = r.parse().ok().or_else(|| exact_number(r).map(|r| to_f64(&r))).filter(|r: &f64| *r > 0.0).ok_or_else(
            || CliError::Usage(format!("bad --radius '{}'", r)),
        )?;
        opts.radius = r;
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(String::from("--step must be positive")));
    }
    if let Some(n) = cli.order {
        opts.order = n;
    }
    let pp = portrait(&p, &opts).map_err(|source| CliError::Analysis { name: name.clone(), source })?;
    emit(cli, out, &emit_svg(&pp, &SvgStyle { size, title: Some(name) }))
}

/// Perturbations of the quadratic and cubic mixed terms.
pub fn default_family() -> Family {
    let mags = vec![q(-1, 64), q(-1, 256), qi(0), q(1, 256), q(1, 64)];
    Family { directions: vec![((1, 1), mags.clone()), ((1, 2), mags)] }
}

fn deform_cmd(cli: &Cli, file: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, spec) = load_spec(file)?;
    let p = graph_only(&name, &spec)?;
    let radius = match &cli.radius {
        Some(r) => exact_number(r)
            .filter(|x| *x > qi(0) && !r.contains('.'))
            .ok_or_else(|| CliError::Usage(format!("--radius must be a positive rational p/q, found '{}'", r)))?,
        None => spec.radius.clone().unwrap_or_else(default_radius),
    };
    let tol = spec.tolerance.as_ref().map(to_f64).unwrap_or(1e-12);
    let family = spec.family().unwrap_or_else(default_family);
    let analysis = |source| CliError::Analysis { name: name.clone(), source };
    let m_u = umbilic_multiplicity_with(&p, options(cli, &spec))
        .map_err(analysis)?
        .finite()
        .ok_or(Error::NonIsolatedUmbilics)
        .map_err(analysis)?;
    let members = family
        .members()
        .par_iter()
        .map(|d| split_member(&p, d, &radius, tol))
        .collect::<Result<Vec<_>, _>>()
        .map_err(analysis)?;
    let rec = DeformRecord::new(name.clone(), &summarize(m_u, members));
    let body = match cli.format {
        Format::Text => rec.text(),
        Format::Records => record_line(&rec),
    };
    emit(cli, out, &body)
}

#[derive(Serialize)]
struct ModelEntry {
    name: String,
    file: String,
    ambient: &'static str,
    surface: String,
}

fn models_list(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let dir = models_dir();
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| CliError::Usage(format!("{}: {}", dir.display(), e)))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "surf"))
        .collect();
    files.sort();
    let mut body = String::new();
    for f in files {
        let (name, spec) = load_spec(&f.to_string_lossy())?;
        let surface = match &spec.surface {
            spec::SurfaceKind::Graph { axis, .. } => format!("{}-graph", axis.name()),
            spec::SurfaceKind::Parametrised(_) => String::from("parametrised"),
        };
        let entry = ModelEntry {
            name,
            file: f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
            ambient: spec.ambient.name(),
            surface,
        };
        match cli.format {
            Format::Text => body.push_str(&format!("{:<16} {:<10} {:<12} {}\n", entry.name, entry.ambient, entry.surface, entry.file)),
            Format::Records => body.push_str(&record_line(&entry)),
        }
    }
    emit(cli, out, &body)
}
