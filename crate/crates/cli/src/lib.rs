//! Command-line front end: argument definitions, command runners and exit codes.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use plateau_core::boolfun::{parse_tt_file, BoolFunError};
use plateau_core::config::{ConfigError, MAX_DENSE_LIMIT};
use plateau_core::regularity::Characterization;
use plateau_core::sweep::SweepError;
use plateau_core::{
    fourier, full_characterization, parse_anf, run_sweep, AnalysisConfig, BooleanFunction, CayleyError, CayleyGraph,
    Generator, RegularityError, SweepMode, SweepReport, VertexLabels,
};
use serde::Serialize;
use thiserror::Error;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_CERTIFICATE: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] BoolFunError),
    #[error("{0}")]
    Usage(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Certificate(_) => EXIT_CERTIFICATE,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

impl From<RegularityError> for CliError {
    fn from(e: RegularityError) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e.to_string())
        } else {
            CliError::Certificate(e.to_string())
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        RegularityError::from(e).into()
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::BoolFun(e) => CliError::Parse(e),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "plateau",
    version,
    about = "Exact spectra, Cayley graphs and walk-regularity certificates of Boolean functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one function.
    Analyze(AnalyzeArgs),
    /// Exhaustive or sampled sweep with every applicable certificate checked.
    Enumerate(EnumerateArgs),
    /// Analyse every function listed in a file.
    Verify(VerifyArgs),
    /// Export the Cayley graph or its spectrum.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Args)]
#[group(id = "function", required = true, multiple = false)]
pub struct FunctionInput {
    /// Truth table as a bit string, index 0 first (x1 is the most significant bit).
    #[arg(long, group = "function")]
    pub tt: Option<String>,
    /// Truth table in hex, first nibble first.
    #[arg(long, group = "function")]
    pub hex: Option<String>,
    /// Algebraic normal form such as "x1*x2 + x3"; needs --n.
    #[arg(long, group = "function")]
    pub anf: Option<String>,
    /// File with one function per line (tt:, hex: or anf:<n>: prefixes).
    #[arg(long, group = "function")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct AnalysisFlags {
    /// Largest n for which dense 2^n x 2^n matrices are built.
    #[arg(long, env = "PLATEAU_DENSE_LIMIT", default_value_t = 8)]
    pub dense_limit: u32,
    /// Largest odd walk length to certify.
    #[arg(long, default_value_t = 7)]
    pub ell_max: u32,
    /// Number of characters checked above the dense limit.
    #[arg(long, default_value_t = 64)]
    pub character_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputFlags {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub function: FunctionInput,
    /// Number of variables (required with --anf, checked otherwise).
    #[arg(long)]
    pub n: Option<u32>,
    /// Seed for sampled character checks above the dense limit.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub analysis: AnalysisFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Mixed,
    Uniform,
    Quadratic,
}

impl From<GeneratorArg> for Generator {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::Mixed => Generator::Mixed,
            GeneratorArg::Uniform => Generator::Uniform,
            GeneratorArg::Quadratic => Generator::Quadratic,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(id = "mode", required = true, multiple = false)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u32,
    /// Every function on n <= 4 variables.
    #[arg(long, group = "mode")]
    pub exhaustive: bool,
    /// Number of sampled functions (n <= 8).
    #[arg(long, group = "mode")]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = GeneratorArg::Mixed)]
    pub generator: GeneratorArg,
    #[command(flatten)]
    pub analysis: AnalysisFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// File with one function per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub analysis: AnalysisFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Dot,
    Adjacency,
    Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelArg {
    Binary,
    Integer,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub function: FunctionInput,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_enum)]
    pub kind: ExportKind,
    #[arg(long, value_enum, default_value_t = LabelArg::Binary)]
    pub labels: LabelArg,
    #[arg(long, env = "PLATEAU_DENSE_LIMIT", default_value_t = 8)]
    pub dense_limit: u32,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl AnalysisFlags {
    pub fn to_config(self, seed: u64) -> Result<AnalysisConfig, CliError> {
        let cfg = AnalysisConfig {
            dense_limit: self.dense_limit,
            ell_max: self.ell_max,
            seed,
            character_samples: self.character_samples,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Reads the single function named by the input flags.
pub fn load_function(input: &FunctionInput, n: Option<u32>) -> Result<BooleanFunction, CliError> {
    let f = if let Some(tt) = &input.tt {
        BooleanFunction::from_bit_string(tt)?
    } else if let Some(hex) = &input.hex {
        BooleanFunction::from_hex(hex)?
    } else if let Some(anf) = &input.anf {
        let n = n.ok_or_else(|| CliError::Usage("--anf needs --n".into()))?;
        parse_anf(anf, n)?.to_function()
    } else if let Some(path) = &input.input {
        let mut all = parse_tt_file(&read_file(path)?)?;
        if all.len() != 1 {
            return Err(CliError::Precondition(format!(
                "{} holds {} functions; analyze takes exactly one (use verify)",
                path.display(),
                all.len()
            )));
        }
        all.remove(0)
    } else {
        return Err(CliError::Usage("no function given".into()));
    };
    if let Some(n) = n {
        if n != f.n() {
            return Err(BoolFunError::VariableCountMismatch(n, f.n()).into());
        }
    }
    Ok(f)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let config = args.analysis.to_config(args.seed)?;
    let f = load_function(&args.function, args.n)?;
    let report = full_characterization(&f, &config)?;
    Ok(match args.output.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => analyze_csv(&report),
        OutputFormat::Text => analyze_text(&report),
    })
}

fn analyze_csv(c: &Characterization) -> String {
    let mut out = String::from("w_index,walsh_hadamard,fourier\n");
    for (i, (w, f)) in c.walsh_hadamard.iter().zip(&c.fourier).enumerate() {
        let _ = writeln!(out, "{i},{w},{f}");
    }
    out
}

fn analyze_text(c: &Characterization) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}  wt = {}  deg = {}", c.n, c.weight, c.degree);
    let _ = writeln!(out, "anf: {}", c.anf);
    let p = &c.plateau;
    match p.s {
        Some(s) if !c.degenerate => {
            let kind = if p.bent {
                "bent"
            } else if p.semibent {
                "semibent"
            } else {
                "plateaued"
            };
            let _ = writeln!(out, "{kind}: s = {s}, k = {}", p.k.unwrap_or(0));
        }
        _ if c.degenerate => {
            let _ = writeln!(out, "constant");
        }
        _ => {
            let _ = writeln!(out, "not plateaued");
        }
    }
    let g = &c.graph;
    let _ = writeln!(
        out,
        "graph: {} vertices, degree {}, {} component(s)",
        g.order, g.degree, g.components
    );
    let eig: Vec<String> = c.spectrum.eigenvalues.iter().map(|(l, m)| format!("{l}^{m}")).collect();
    let _ = writeln!(out, "spectrum: {}", eig.join(" "));
    let _ = writeln!(out, "verdict: {:?}", c.verdict);
    if let Some(srg) = &c.srg {
        let _ = writeln!(out, "srg ({}, {}, {}, {})", srg.v, srg.r, srg.e, srg.d);
    }
    for w in &c.walk_regular {
        let _ = writeln!(out, "walk-regular l = {}: ({}, {}, {})", w.ell, w.sigma, w.mu, w.nu);
    }
    for w in &c.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// Runs a sweep. Certificate failures are reported after the output is written.
pub fn enumerate(args: &EnumerateArgs) -> Result<(String, SweepReport), CliError> {
    let config = args.analysis.to_config(args.seed)?;
    let mode = match (args.exhaustive, args.sample) {
        (true, None) => SweepMode::Exhaustive,
        (false, Some(count)) => SweepMode::Sampled {
            count,
            seed: args.seed,
            generator: args.generator.into(),
        },
        _ => return Err(CliError::Usage("give exactly one of --exhaustive and --sample".into())),
    };
    let report = run_sweep(args.n, mode, &config)?;
    let text = match args.output.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv | OutputFormat::Text => sweep_table(&report, args.output.format),
    };
    Ok((text, report))
}

fn sweep_table(report: &SweepReport, format: OutputFormat) -> String {
    let value = serde_json::to_value(&report.summary).expect("summary serializes");
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut out = String::new();
    if format == OutputFormat::Csv {
        out.push_str("key,value\n");
    }
    for (k, v) in rows {
        let _ = match format {
            OutputFormat::Csv => writeln!(out, "{k},{v}"),
            _ => writeln!(out, "{k:<40} {v}"),
        };
    }
    out
}

fn flatten(prefix: &str, v: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        serde_json::Value::Array(items) => rows.push((prefix.to_owned(), items.len().to_string())),
        other => rows.push((prefix.to_owned(), other.to_string())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyEntry {
    pub line: usize,
    pub truth_table: String,
    pub ok: bool,
    pub exit_code: u8,
    pub error: Option<String>,
    pub report: Option<Characterization>,
}

/// Analyses every function in the file; the worst per-function exit code wins.
pub fn verify(args: &VerifyArgs) -> Result<(String, u8), CliError> {
    let config = args.analysis.to_config(args.seed)?;
    let functions = parse_tt_file(&read_file(&args.input)?)?;
    let mut entries = Vec::with_capacity(functions.len());
    let mut worst = 0;
    for (i, f) in functions.iter().enumerate() {
        let (report, error) = match full_characterization(f, &config) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(CliError::from(e))),
        };
        let code = error.as_ref().map_or(0, CliError::exit_code);
        worst = worst.max(code);
        entries.push(VerifyEntry {
            line: i + 1,
            truth_table: f.to_bit_string(),
            ok: error.is_none(),
            exit_code: code,
            error: error.map(|e| e.to_string()),
            report,
        });
    }
    let text = match args.output.format {
        OutputFormat::Json => to_json(&entries),
        _ => {
            let mut out = String::new();
            if args.output.format == OutputFormat::Csv {
                out.push_str("index,truth_table,ok,verdict\n");
            }
            for e in &entries {
                let verdict = e
                    .report
                    .as_ref()
                    .map_or("error".to_owned(), |r| format!("{:?}", r.verdict));
                let sep = if args.output.format == OutputFormat::Csv {
                    ","
                } else {
                    "  "
                };
                let _ = writeln!(out, "{}{sep}{}{sep}{}{sep}{verdict}", e.line, e.truth_table, e.ok);
            }
            out
        }
    };
    Ok((text, worst))
}

pub fn export(args: &ExportArgs) -> Result<String, CliError> {
    if args.dense_limit > MAX_DENSE_LIMIT {
        return Err(ConfigError::DenseLimit(args.dense_limit).into());
    }
    let f = load_function(&args.function, args.n)?;
    Ok(match args.kind {
        ExportKind::Spectrum => fourier(&f).to_json() + "\n",
        ExportKind::Dot => {
            let labels = match args.labels {
                LabelArg::Binary => VertexLabels::Binary,
                LabelArg::Integer => VertexLabels::Integer,
            };
            CayleyGraph::build(&f)?.export_dot(labels)?
        }
        ExportKind::Adjacency => CayleyGraph::build(&f)?.adjacency_csv(args.dense_limit)?,
    })
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Analyze(a) => {
            let text = analyze(a)?;
            emit(a.output.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Enumerate(a) => {
            let (text, report) = enumerate(a)?;
            emit(a.output.out.as_deref(), &text)?;
            let failures = &report.summary.failures;
            for f in failures {
                eprintln!("certificate failure for {}: {}", f.truth_table, f.error);
            }
            Ok(if failures.is_empty() { 0 } else { EXIT_CERTIFICATE })
        }
        Command::Verify(a) => {
            let (text, code) = verify(a)?;
            emit(a.output.out.as_deref(), &text)?;
            Ok(code)
        }
        Command::Export(a) => {
            let text = export(a)?;
            emit(a.out.as_deref(), &text)?;
            Ok(0)
        }
    }
}
