//! Command-line front end.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{
    certify, fit_decay, geometric_ladder, measure_convergence, tables, CertifyOptions, GridExperiment, TableId,
};
use crate::error::{Error, Result};
use crate::quasilagrange::{FourierProfile, QuasiLagrange, Route};
use crate::schemes::{SchemeId, SchemeParams, DEFAULT_PROFILE_A};
use crate::specfun::selftest;
use crate::symbols::{SymbolDocument, SymbolSource, TrigPolynomialRecord};

#[derive(Parser, Debug)]
#[command(name = "quasilag", version, about = "Quasi-Lagrange functions for 1-D radial basis quasi-interpolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a scheme and write its coefficients and psi / psi^ samples.
    Build(BuildArgs),
    /// Certify a scheme and print a JSON report.
    Certify(CertifyArgs),
    /// Run an h-refinement ladder and print `h,sup_error` CSV.
    Converge(ConvergeArgs),
    /// Fit the decay exponent of psi.
    Decay(DecayArgs),
    /// Regenerate the summary tables.
    Tables(TablesArgs),
    /// Special-function checks.
    Specfun {
        #[command(subcommand)]
        command: SpecfunCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpecfunCommand {
    /// Closed-form and quadrature oracles.
    Selftest,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SchemeArgs {
    /// Key/value TOML file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scheme: Option<String>,
    /// Multiquadric shape parameter.
    #[arg(long)]
    pub c: Option<f64>,
    /// Quartic coefficient of the Fourier profile.
    #[arg(long)]
    pub a: Option<f64>,
    /// Truncation of infinite coefficient sequences.
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub xi_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Skip the h-refinement ladder.
    #[arg(long)]
    pub no_convergence: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunction {
    Sin,
    Gauss,
    X,
    X2,
    X3,
}

impl TestFunction {
    fn eval(self) -> fn(f64) -> f64 {
        match self {
            TestFunction::Sin => f64::sin,
            TestFunction::Gauss => |x: f64| (-x * x).exp(),
            TestFunction::X => |x| x,
            TestFunction::X2 => |x| x * x,
            TestFunction::X3 => |x| x * x * x,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TestFunction::Sin => "sin",
            TestFunction::Gauss => "gauss",
            TestFunction::X => "x",
            TestFunction::X2 => "x2",
            TestFunction::X3 => "x3",
        }
    }
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long, value_enum)]
    pub function: Option<TestFunction>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub h0: Option<f64>,
    #[arg(long)]
    pub ratio: Option<f64>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecayArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Comma-separated subset of `tps`, `mq`, `fourier`.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: TableFormat,
    #[arg(long)]
    pub no_convergence: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Keys accepted in a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub scheme: Option<String>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub j: Option<usize>,
    pub out: Option<PathBuf>,
    pub x_max: Option<f64>,
    pub xi_max: Option<f64>,
    pub samples: Option<usize>,
    pub function: Option<TestFunction>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub h0: Option<f64>,
    pub ratio: Option<f64>,
    pub levels: Option<usize>,
    pub window: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

fn file_config(args: &SchemeArgs) -> Result<FileConfig> {
    match &args.config {
        Some(p) => FileConfig::load(p),
        None => Ok(FileConfig::default()),
    }
}

/// Scheme parameters from flags over the config file; no implicit `c`.
pub fn resolve_params(args: &SchemeArgs, file: &FileConfig) -> Result<SchemeParams> {
    let name = args
        .scheme
        .clone()
        .or_else(|| file.scheme.clone())
        .ok_or_else(|| Error::Config("no scheme given".into()))?;
    let id: SchemeId = name.parse()?;
    let c = args.c.or(file.c);
    if id.needs_c() && c.is_none() {
        return Err(Error::Config(format!("scheme {id} requires --c")));
    }
    let a = args.a.or(file.a).unwrap_or(DEFAULT_PROFILE_A);
    if !(a > 0.0) {
        return Err(Error::Config(format!("a = {a} must be positive")));
    }
    let j = args.j.or(file.j).unwrap_or(64);
    if j < 8 {
        return Err(Error::Config(format!("truncation J = {j} below 8")));
    }
    let p = SchemeParams { id, c: if id.needs_c() { c } else { None }, a, j };
    if let Some(c) = p.c {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Config(format!("c = {c} must be positive")));
        }
    }
    Ok(p)
}

/// Written by `build`; `load_scheme` rebuilds the identical function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeDocument {
    pub params: SchemeParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    pub normalization: f64,
    /// Normalized weights `mu_{-N} .. mu_N` of a finite combination.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// Trigonometric polynomial `P`, for finite and `P |sin|` symbols.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<TrigPolynomialRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<FourierProfile>,
}

impl SchemeDocument {
    pub fn new(params: &SchemeParams, q: &QuasiLagrange) -> Self {
        let mut doc = SchemeDocument {
            params: params.clone(),
            kernel: None,
            normalization: q.normalization,
            weights: None,
            polynomial: None,
            symbol: None,
            profile: None,
        };
        match &q.route {
            Route::RealSpace { kernel, symbol, .. } => {
                doc.kernel = Some(kernel.name().into());
                let log_c = kernel.c.ln();
                match &symbol.source {
                    SymbolSource::ClosedForm(p) => {
                        doc.weights = Some(p.coeffs.iter().map(|w| w * q.normalization).collect());
                        doc.polynomial = Some(p.to_record(log_c));
                    }
                    SymbolSource::SineProduct(p) => doc.polynomial = Some(p.to_record(log_c)),
                    _ => {}
                }
                doc.symbol = Some(symbol.to_document());
            }
            Route::FourierProfile(p) => doc.profile = Some(p.clone()),
        }
        doc
    }
}

pub fn load_scheme(path: &Path) -> Result<(SchemeDocument, QuasiLagrange)> {
    let text = fs::read_to_string(path)?;
    let doc: SchemeDocument =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let q = doc.params.build()?;
    Ok((doc, q))
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_build(a: &BuildArgs, stdout: &mut dyn Write) -> Result<()> {
    let file = file_config(&a.scheme)?;
    let params = resolve_params(&a.scheme, &file)?;
    let dir = a.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("."));
    let x_max = a.x_max.or(file.x_max).unwrap_or(10.0);
    let xi_max = a.xi_max.or(file.xi_max).unwrap_or(4.0 * PI);
    let samples = a.samples.or(file.samples).unwrap_or(401);
    if samples < 2 || !(x_max > 0.0) || !(xi_max > 0.0) {
        return Err(Error::Config("sample range must be positive with at least 2 samples".into()));
    }
    let q = params.build()?;
    fs::create_dir_all(&dir)?;
    let stem = params.id.as_str();
    let doc_path = dir.join(format!("{stem}.json"));
    fs::write(&doc_path, json(&SchemeDocument::new(&params, &q))?)?;
    let psi_path = dir.join(format!("{stem}_psi.csv"));
    fs::write(&psi_path, q.psi_csv(&linspace(-x_max, x_max, samples))?)?;
    let hat_path = dir.join(format!("{stem}_psi_hat.csv"));
    fs::write(&hat_path, q.psi_hat_csv(&linspace(-xi_max, xi_max, samples), 0)?)?;
    for p in [doc_path, psi_path, hat_path] {
        writeln!(stdout, "{}", p.display())?;
    }
    Ok(())
}

fn cmd_certify(a: &CertifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let params = resolve_params(&a.scheme, &file_config(&a.scheme)?)?;
    let opts = CertifyOptions { convergence: !a.no_convergence, ..Default::default() };
    let report = certify(&params, &opts)?;
    emit(&a.out, &(json(&report)? + "\n"), stdout)
}

fn cmd_converge(a: &ConvergeArgs, stdout: &mut dyn Write) -> Result<()> {
    let file = file_config(&a.scheme)?;
    let params = resolve_params(&a.scheme, &file)?;
    let f = a.function.or(file.function).unwrap_or(TestFunction::Sin);
    let lo = a.lo.or(file.lo).unwrap_or(-1.0);
    let hi = a.hi.or(file.hi).unwrap_or(1.0);
    let h0 = a.h0.or(file.h0).unwrap_or(0.125);
    let ratio = a.ratio.or(file.ratio).unwrap_or(2.0);
    let levels = a.levels.or(file.levels).unwrap_or(4);
    if !(h0 > 0.0 && ratio > 1.0) {
        return Err(Error::Config("h-ladder needs h0 > 0 and ratio > 1".into()));
    }
    let mut exp = GridExperiment::new(f.name(), f.eval(), lo, hi, geometric_ladder(h0, ratio, levels));
    exp.window = a.window.or(file.window).unwrap_or(exp.window);
    exp.validate()?;
    let q = params.build()?;
    let r = measure_convergence(&q, &exp)?;
    emit(&a.out, &r.to_csv(), stdout)?;
    match r.slope {
        Some(s) => eprintln!("slope {s:.3} +- {:.3}", r.half_width),
        None => eprintln!("exact on {}", exp.name),
    }
    Ok(())
}

fn cmd_decay(a: &DecayArgs, stdout: &mut dyn Write) -> Result<()> {
    let file = file_config(&a.scheme)?;
    let params = resolve_params(&a.scheme, &file)?;
    let lo = a.lo.or(file.lo).unwrap_or(20.0);
    let hi = a.hi.or(file.hi).unwrap_or(200.0);
    let samples = a.samples.or(file.samples).unwrap_or(1801);
    if !(lo > 0.0 && hi >= 8.0 * lo) {
        return Err(Error::Config(format!("decay range [{lo}, {hi}] needs 0 < lo and hi >= 8 lo")));
    }
    let q = params.build()?;
    emit(&a.out, &(json(&fit_decay(&q, lo, hi, samples)?)? + "\n"), stdout)
}

fn cmd_tables(a: &TablesArgs, stdout: &mut dyn Write) -> Result<()> {
    let only = match &a.only {
        Some(s) => Some(
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::parse)
                .collect::<Result<Vec<TableId>>>()?,
        ),
        None => None,
    };
    let opts = CertifyOptions { convergence: !a.no_convergence, ..Default::default() };
    let ts = tables(only.as_deref(), &opts)?;
    let text = match a.format {
        TableFormat::Markdown => ts.iter().map(|t| t.to_markdown()).collect::<Vec<_>>().join("\n"),
        TableFormat::Csv => ts.iter().map(|t| t.to_csv()).collect::<Vec<_>>().join(""),
        TableFormat::Json => json(&ts)? + "\n",
    };
    emit(&a.out, &text, stdout)
}

fn cmd_selftest(stdout: &mut dyn Write) -> Result<()> {
    let cases = selftest()?;
    for c in &cases {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(stdout, "{tag} {} (error {:.3e}, tolerance {:e})", c.name, c.max_error, c.tolerance)?;
    }
    match cases.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::ToleranceNotMet(c.name.clone())),
        None => Ok(()),
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Build(a) => cmd_build(a, stdout),
        Command::Certify(a) => cmd_certify(a, stdout),
        Command::Converge(a) => cmd_converge(a, stdout),
        Command::Decay(a) => cmd_decay(a, stdout),
        Command::Tables(a) => cmd_tables(a, stdout),
        Command::Specfun { command: SpecfunCommand::Selftest } => cmd_selftest(stdout),
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
