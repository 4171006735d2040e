//! Command-line front end for the `apolarity` binary.
//!
//! Every command produces a text report and a JSON document; `--emit-json`
//! writes the latter. Exit codes: 0 success, 1 a checked property failed,
//! 2 bad input, 3 node budget exhausted.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::apolar::{annihilator_degree, describe_piece, DualElement, DualSubspace};
use crate::certifier::{self, Certificate, CertifyOptions, Verdict};
use crate::exactla::{Field, FieldSpec, PrimeField, Rationals};
use crate::monideal::{format_monomial, MonomialIdeal};
use crate::points::{self, field_of_json, trial_rng, Point, PointConfiguration};
use crate::ring::{DegreeWindow, MultiDegree, Space};

pub const JSON_SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "apolarity",
    version,
    about = "Apolar ideals, Hilbert functions of points and border-rank lower bounds on products of projective spaces"
)]
pub struct Cli {
    /// `Q` or `p=PRIME` [default: p=2147483647, or the field named in a points file]
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; 1 runs everything serially with identical output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub emit_json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis of Ann(E) in one degree.
    Ann(AnnArgs),
    /// Hilbert function of a monomial ideal or a point configuration.
    Hilbert(HilbertArgs),
    /// Saturate a monomial ideal by the irrelevant ideal.
    Saturate(SaturateArgs),
    /// Search for a monomial ideal with generic Hilbert function inside Ann(E).
    Certify(CertifyArgs),
    /// Run the certifier for r = 1..r-max and report the lower bound.
    Scan(ScanArgs),
    /// Compare Hilbert functions of random points with min(r, dim S_D).
    GenericHf(GenericHfArgs),
    /// Check that adding a general point raises h by one until saturation.
    AddPoint(AddPointArgs),
    /// Bound h(D) of a longer scheme containing a given configuration.
    DefectBound(DefectBoundArgs),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowArg {
    Auto,
    Box(MultiDegree),
}

impl FromStr for WindowArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().eq_ignore_ascii_case("auto") {
            Ok(WindowArg::Auto)
        } else {
            s.parse().map(WindowArg::Box).map_err(|e| e.to_string())
        }
    }
}

#[derive(Debug, Args)]
pub struct WindowOpts {
    /// `d1,..,dk` for every degree below that box, or `auto` for the target degree.
    #[arg(long)]
    pub window_box: Option<WindowArg>,
    /// Every degree of total degree at most this.
    #[arg(long, conflicts_with = "window_box")]
    pub window_total: Option<u32>,
}

impl WindowOpts {
    fn resolve(&self, space: &Space, auto: Option<&MultiDegree>) -> Result<DegreeWindow, CliError> {
        match (&self.window_box, self.window_total) {
            (Some(WindowArg::Box(b)), _) => {
                space.check_degree(b).map_err(CliError::input)?;
                DegreeWindow::boxed(b).map_err(CliError::input)
            }
            (Some(WindowArg::Auto), _) | (None, None) => match auto {
                Some(l) => DegreeWindow::boxed(l).map_err(CliError::input),
                None => Err(CliError::Input(
                    "this command needs --window-box d1,..,dk or --window-total t".into(),
                )),
            },
            (None, Some(t)) => {
                DegreeWindow::total_degree(space.num_factors(), t).map_err(CliError::input)
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct AnnArgs {
    #[arg(long)]
    pub space: Space,
    /// Dual elements such as `x0^2 - 3*x0 x1`; `;` separates spanning elements.
    #[arg(long, conflicts_with = "target_file")]
    pub target: Option<String>,
    /// JSON dual element (or array of them), or one text element per line.
    #[arg(long)]
    pub target_file: Option<PathBuf>,
    #[arg(long)]
    pub degree: MultiDegree,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(long)]
    pub space: Space,
    #[arg(long, conflicts_with = "points")]
    pub ideal: Option<PathBuf>,
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[command(flatten)]
    pub window: WindowOpts,
}

#[derive(Debug, Args)]
pub struct SaturateArgs {
    #[arg(long)]
    pub space: Space,
    #[arg(long)]
    pub ideal: PathBuf,
    /// Write the saturated ideal (text format) here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TargetOpts {
    #[arg(long)]
    pub space: Space,
    /// Monomials such as `x0 x1 x2^2`; `;` separates spanning monomials.
    #[arg(long)]
    pub target: String,
    #[command(flatten)]
    pub window: WindowOpts,
    #[arg(long)]
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub target: TargetOpts,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub target: TargetOpts,
    #[arg(long)]
    pub r_max: usize,
}

#[derive(Debug, Args)]
pub struct GenericHfArgs {
    #[arg(long)]
    pub space: Space,
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub window: WindowOpts,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct AddPointArgs {
    #[arg(long)]
    pub space: Space,
    /// Configurations have between 0 and max-points - 1 points before the addition.
    #[arg(long, default_value_t = 8)]
    pub max_points: usize,
    #[command(flatten)]
    pub window: WindowOpts,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct DefectBoundArgs {
    #[arg(long)]
    pub space: Space,
    #[arg(long, conflicts_with = "random_points")]
    pub points: Option<PathBuf>,
    /// Use this many random points instead of a file.
    #[arg(long)]
    pub random_points: Option<usize>,
    /// Multiplicity of the random points.
    #[arg(long, default_value_t = 1)]
    pub mult: u32,
    /// Length of the scheme the configuration sits in.
    #[arg(long)]
    pub full_length: usize,
    #[arg(long)]
    pub degree: MultiDegree,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn new(text: String, json: Value, code: i32) -> Self {
        Report { text, json, code }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the text report to `out`, diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.emit_json {
                let mut doc = serde_json::to_string_pretty(&report.json).expect("json value");
                doc.push('\n');
                if let Err(e) = std::fs::write(path, doc) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            }
            let _ = out.write_all(report.text.as_bytes());
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Runs the parsed command, inside a dedicated thread pool when `--threads`
/// is given.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Input("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(CliError::input)?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}


/// Binds `$f` to the concrete field named by `$spec` and evaluates `$body`
/// once per arm, so the body is monomorphized for each field type.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                let $f = &Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = &PrimeField::new(p).map_err(CliError::input)?;
                $body
            }
        }
    };
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Ann(a) => with_field!(resolve_field(cli, None), |f| cmd_ann(f, a)),
        Command::Hilbert(a) => {
            let file_field = a.points.as_deref().map(points_field).transpose()?;
            with_field!(resolve_field(cli, file_field), |f| cmd_hilbert(f, a))
        }
        Command::Saturate(a) => cmd_saturate(a),
        Command::Certify(a) => {
            with_field!(resolve_field(cli, None), |f| cmd_certify(f, a))
        }
        Command::Scan(a) => with_field!(resolve_field(cli, None), |f| cmd_scan(f, a)),
        Command::GenericHf(a) => {
            let seed = need_seed(cli)?;
            with_field!(resolve_field(cli, None), |f| cmd_generic_hf(f, a, seed))
        }
        Command::AddPoint(a) => {
            let seed = need_seed(cli)?;
            with_field!(resolve_field(cli, None), |f| cmd_add_point(f, a, seed))
        }
        Command::DefectBound(a) => {
            let file_field = a.points.as_deref().map(points_field).transpose()?;
            let seed = match a.points {
                Some(_) => None,
                None => Some(need_seed(cli)?),
            };
            with_field!(resolve_field(cli, file_field), |f| cmd_defect_bound(f, a, seed))
        }
    }
}

fn need_seed(cli: &Cli) -> Result<u64, CliError> {
    cli.seed
        .ok_or_else(|| CliError::Input("randomized command: --seed is required".into()))
}

fn resolve_field(cli: &Cli, from_file: Option<FieldSpec>) -> FieldSpec {
    cli.field.or(from_file).unwrap_or_default()
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn points_field(path: &Path) -> Result<FieldSpec, CliError> {
    field_of_json(&read_json(path)?).map_err(CliError::input)
}

fn header(command: &str, space: &Space) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(JSON_SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("space".into(), json!(space));
    m
}

fn parse_dual_text<F: Field>(
    field: &F,
    space: &Space,
    text: &str,
) -> Result<Vec<DualElement<F>>, CliError> {
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|t| !t.is_empty() && !t.starts_with('#'))
        .map(|t| DualElement::parse_text(field, space, t).map_err(CliError::input))
        .collect()
}

fn load_target<F: Field>(
    field: &F,
    space: &Space,
    text: Option<&str>,
    file: Option<&Path>,
) -> Result<DualSubspace<F>, CliError> {
    let elements = match (text, file) {
        (Some(t), _) => parse_dual_text(field, space, t)?,
        (None, Some(path)) => {
            let body = read_file(path)?;
            match body.trim_start().chars().next() {
                Some('{') => {
                    let v: Value = serde_json::from_str(&body).map_err(CliError::input)?;
                    vec![DualElement::from_json(field, space, &v).map_err(CliError::input)?]
                }
                Some('[') => {
                    let v: Vec<Value> = serde_json::from_str(&body).map_err(CliError::input)?;
                    v.iter()
                        .map(|e| DualElement::from_json(field, space, e).map_err(CliError::input))
                        .collect::<Result<_, _>>()?
                }
                _ => parse_dual_text(field, space, &body)?,
            }
        }
        (None, None) => {
            return Err(CliError::Input("give --target or --target-file".into()));
        }
    };
    DualSubspace::new(field, space, &elements).map_err(CliError::input)
}

fn cmd_ann<F: Field>(field: &F, a: &AnnArgs) -> Result<Report, CliError> {
    let space = &a.space;
    space.check_degree(&a.degree).map_err(CliError::input)?;
    let e = load_target(field, space, a.target.as_deref(), a.target_file.as_deref())?;
    let piece = annihilator_degree(field, space, &e, &a.degree);
    let desc = describe_piece(field, space, &piece);
    let mut text = format!(
        "Ann(E) in degree {} on {} over {}: dim {}, codim {} (dim S_D = {})\n",
        a.degree,
        space,
        field.label(),
        desc.dim,
        desc.codim,
        space.dim_degree(&a.degree)
    );
    for b in &desc.basis {
        let _ = writeln!(text, "  {b}");
    }
    let mut j = header("ann", space);
    j.insert("field".into(), json!(field.label()));
    j.insert(
        "target".into(),
        json!(e.basis().iter().map(|f| f.to_json(field)).collect::<Vec<_>>()),
    );
    j.insert("annihilator".into(), json!(desc));
    Ok(Report::new(text, Value::Object(j), EXIT_OK))
}

fn hilbert_text(space: &Space, window: &DegreeWindow, values: &[usize]) -> String {
    let mut text = String::from("degree\tdim\th\n");
    for (d, h) in window.iter().zip(values) {
        let _ = writeln!(text, "{}\t{}\t{}", d, space.dim_degree(d), h);
    }
    text
}

fn hilbert_json(space: &Space, window: &DegreeWindow, values: &[usize]) -> Value {
    Value::Array(
        window
            .iter()
            .zip(values)
            .map(|(d, h)| json!({"degree": d, "dim": space.dim_degree(d), "h": h}))
            .collect(),
    )
}

fn cmd_hilbert<F: Field>(field: &F, a: &HilbertArgs) -> Result<Report, CliError> {
    let space = &a.space;
    let window = a.window.resolve(space, None)?;
    let mut j = header("hilbert", space);
    let (source, values) = match (&a.ideal, &a.points) {
        (Some(path), _) => {
            let ideal = MonomialIdeal::parse_any(space, &read_file(path)?).map_err(CliError::input)?;
            if ideal.nvars() != space.num_vars() {
                return Err(CliError::Input(format!(
                    "ideal has {} variables, {} has {}",
                    ideal.nvars(),
                    space,
                    space.num_vars()
                )));
            }
            j.insert("ideal".into(), json!(ideal));
            let values: Vec<usize> = window.iter().map(|d| ideal.hilbert_function(space, d)).collect();
            ("monomial ideal", values)
        }
        (None, Some(path)) => {
            let z = PointConfiguration::from_json(field, space, &read_json(path)?)
                .map_err(CliError::input)?;
            j.insert("field".into(), json!(field.label()));
            j.insert("points".into(), z.to_json(field));
            j.insert("length".into(), json!(z.length(space)));
            let values = points::hilbert_table(field, space, &z, &window).map_err(CliError::input)?;
            ("points", values)
        }
        (None, None) => return Err(CliError::Input("give --ideal or --points".into())),
    };
    let text = format!(
        "Hilbert function of {source} on {space}\n{}",
        hilbert_text(space, &window, &values)
    );
    j.insert("window".into(), json!(window));
    j.insert("hilbert".into(), hilbert_json(space, &window, &values));
    Ok(Report::new(text, Value::Object(j), EXIT_OK))
}

fn cmd_saturate(a: &SaturateArgs) -> Result<Report, CliError> {
    let space = &a.space;
    let ideal = MonomialIdeal::parse_any(space, &read_file(&a.ideal)?).map_err(CliError::input)?;
    if ideal.nvars() != space.num_vars() && !ideal.is_zero() {
        return Err(CliError::Input(format!(
            "ideal has {} variables, {} has {}",
            ideal.nvars(),
            space,
            space.num_vars()
        )));
    }
    let sat = ideal.saturate(space);
    let body = sat.to_text(space);
    if let Some(out) = &a.output {
        std::fs::write(out, &body).map_err(|source| CliError::Io {
            path: out.clone(),
            source,
        })?;
    }
    let mut j = header("saturate", space);
    j.insert("ideal".into(), json!(ideal));
    j.insert("saturated".into(), json!(sat));
    j.insert("was_saturated".into(), json!(sat == ideal));
    Ok(Report::new(body, Value::Object(j), EXIT_OK))
}

fn load_monomial_target<F: Field>(
    field: &F,
    t: &TargetOpts,
) -> Result<(Vec<crate::ring::Exponent>, DegreeWindow), CliError> {
    let e = load_target(field, &t.space, Some(&t.target), None)?;
    let mons = e.monomials().ok_or_else(|| {
        CliError::input(certifier::CertifyError::NotTorusFixed)
    })?;
    let window = t.window.resolve(&t.space, Some(e.degree()))?;
    Ok((mons, window))
}

fn certificate_text(space: &Space, c: &Certificate) -> String {
    let mut text = c.summary(space);
    text.push('\n');
    text.push_str("degree\tdim\trequired\tadmissible\n");
    for p in &c.requirements {
        let _ = writeln!(text, "{}\t{}\t{}\t{}", p.degree, p.dim, p.required, p.admissible);
    }
    if let Some(flag) = &c.flag {
        text.push_str("flag:\n");
        for d in flag.window().iter() {
            let mons: Vec<String> = flag
                .piece(d)
                .unwrap_or(&[])
                .iter()
                .map(|u| format_monomial(space, u))
                .collect();
            let _ = writeln!(text, "  {d}: {{{}}}", mons.join(", "));
        }
    }
    let _ = writeln!(text, "trace {}", c.trace_hash);
    text
}

fn certificate_code(c: &Certificate) -> i32 {
    match (c.verdict, c.revalidated) {
        (Verdict::Undecided, _) => EXIT_BUDGET,
        (_, Some(false)) => EXIT_VIOLATION,
        _ => EXIT_OK,
    }
}

fn cmd_certify<F: Field>(field: &F, a: &CertifyArgs) -> Result<Report, CliError> {
    let t = &a.target;
    let (mons, window) = load_monomial_target(field, t)?;
    let opts = CertifyOptions {
        max_nodes: t.max_nodes,
    };
    let c = certifier::certify_monomials(&t.space, &mons, a.r, &window, opts)
        .map_err(CliError::input)?;
    let mut j = header("certify", &t.space);
    j.insert("certificate".into(), json!(c));
    Ok(Report::new(certificate_text(&t.space, &c), Value::Object(j), certificate_code(&c)))
}

fn cmd_scan<F: Field>(field: &F, a: &ScanArgs) -> Result<Report, CliError> {
    let t = &a.target;
    let (mons, window) = load_monomial_target(field, t)?;
    let opts = CertifyOptions {
        max_nodes: t.max_nodes,
    };
    let scan = certifier::lower_bound_scan(&t.space, &mons, a.r_max, &window, opts)
        .map_err(CliError::input)?;
    let target: Vec<String> = mons.iter().map(|m| format_monomial(&t.space, m)).collect();
    let mut text = format!(
        "E = <{}> on {}, window {} degrees\nr\tverdict\tnodes\n",
        target.join("; "),
        t.space,
        window.len()
    );
    for row in &scan.rows {
        let word = match row.verdict {
            Verdict::Nonexistent => "NONEXISTENT (necessary condition fails)",
            Verdict::Candidate => "CANDIDATE (necessary condition passes)",
            Verdict::Undecided => "UNDECIDED (budget exhausted)",
        };
        let _ = writeln!(text, "{}\t{}\t{}", row.r, word, row.nodes_explored);
    }
    let _ = writeln!(text, "lower bound: border rank >= {}", scan.lower_bound);
    let mut code = if scan.any_undecided { EXIT_BUDGET } else { EXIT_OK };
    if scan.certificates.iter().any(|c| c.revalidated == Some(false)) {
        code = EXIT_VIOLATION;
    }
    let mut j = header("scan", &t.space);
    j.insert("scan".into(), json!(scan));
    j.insert("certificates".into(), json!(scan.certificates));
    Ok(Report::new(text, Value::Object(j), code))
}

fn cmd_generic_hf<F: Field>(field: &F, a: &GenericHfArgs, seed: u64) -> Result<Report, CliError> {
    let space = &a.space;
    let window = a.window.resolve(space, None)?;
    let report = points::check_generic_hf(field, space, a.r, &window, a.trials, seed)
        .map_err(CliError::input)?;
    let mut text = format!(
        "{} general points on {} over {}: {}/{} trials match min(r, dim S_D) on {} degrees\n",
        a.r,
        space,
        field.label(),
        report.passes,
        report.trials,
        window.len()
    );
    text.push_str("degree\tdim\tgeneric\tmatching\tmin\tmax\n");
    for row in &report.degrees {
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.degree, row.dim, row.generic, row.matching_trials, row.min_observed, row.max_observed
        );
    }
    let code = if report.all_pass() { EXIT_OK } else { EXIT_VIOLATION };
    let mut j = header("generic-hf", space);
    j.insert("report".into(), json!(report));
    Ok(Report::new(text, Value::Object(j), code))
}

fn cmd_add_point<F: Field>(field: &F, a: &AddPointArgs, seed: u64) -> Result<Report, CliError> {
    let space = &a.space;
    let window = a.window.resolve(space, None)?;
    let report = points::add_point_trials(field, space, a.max_points, &window, a.trials, seed)
        .map_err(CliError::input)?;
    let text = format!(
        "adding a general point on {} over {}: h rises by one (capped at dim S_D) in {}/{} trials on {} degrees\n",
        space,
        field.label(),
        report.holding,
        report.trials,
        window.len()
    );
    let code = if report.holding == report.trials { EXIT_OK } else { EXIT_VIOLATION };
    let mut j = header("add-point", space);
    j.insert("report".into(), json!(report));
    Ok(Report::new(text, Value::Object(j), code))
}

fn cmd_defect_bound<F: Field>(
    field: &F,
    a: &DefectBoundArgs,
    seed: Option<u64>,
) -> Result<Report, CliError> {
    let space = &a.space;
    let z = match (&a.points, a.random_points, seed) {
        (Some(path), _, _) => PointConfiguration::from_json(field, space, &read_json(path)?)
            .map_err(CliError::input)?,
        (None, Some(k), Some(seed)) => {
            if a.mult == 0 {
                return Err(CliError::input(points::PointsError::ZeroMultiplicity));
            }
            let mut rng = trial_rng(seed, 0);
            PointConfiguration::new(
                (0..k)
                    .map(|_| Point::random(field, space, &mut rng, a.mult))
                    .collect(),
            )
        }
        _ => return Err(CliError::Input("give --points or --random-points".into())),
    };
    let report =
        points::defect_bound(field, space, &z, a.full_length, &a.degree).map_err(CliError::input)?;
    let relation = if report.below_generic { "<" } else { ">=" };
    let text = format!(
        "configuration of length {} on {} over {}: h{} = {}\nany length-{} scheme containing it has h{} <= {} + {} = {} {} {} = min({}, dim S_D)\n",
        report.sub_length,
        space,
        field.label(),
        report.degree,
        report.sub_hf,
        report.full_length,
        report.degree,
        report.sub_hf,
        report.full_length - report.sub_length,
        report.bound,
        relation,
        report.generic,
        report.full_length
    );
    let mut j = header("defect-bound", space);
    j.insert("points".into(), z.to_json(field));
    j.insert("report".into(), json!(report));
    Ok(Report::new(text, Value::Object(j), EXIT_OK))
}
