//! Batch front end behind the `szasz` binary.
//!
//! Subcommands: `bound`, `verify`, `convert`, `generate`, `lemmas`,
//! `compare`. Options may also come from a JSON config file (`--config`);
//! flags win over the file and the merged [`RunConfig`] is echoed into every
//! report.
//!
//! Exit codes: 0 success, 1 violations found, 2 usage or parse error,
//! 3 a hypothesis of the requested computation does not hold.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundDomain, ExpBound, Theorem};
use crate::detrep::{convert_bidisk, BidiskRep};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::stability;
use crate::verify::{self, fmt_f64, LemmaSuite, Region, ReportRow, VerifyReport};
use crate::C64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "szasz", version, about = "Growth bounds for stable polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a certificate for the polynomial in `-i`.
    Bound(Options),
    /// Sample a region and check a certificate against the polynomial.
    Verify(Options),
    /// Convert a bidisk representation to a half-plane one.
    Convert(Options),
    /// Write a corpus of generated stable polynomials.
    Generate(Options),
    /// Run the randomized lemma suites.
    Lemmas(Options),
    /// Evaluate several certificates at the same sample points.
    Compare(Options),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bound(_) => "bound",
            Command::Verify(_) => "verify",
            Command::Convert(_) => "convert",
            Command::Generate(_) => "generate",
            Command::Lemmas(_) => "lemmas",
            Command::Compare(_) => "compare",
        }
    }

    fn options(&self) -> &Options {
        match self {
            Command::Bound(o)
            | Command::Verify(o)
            | Command::Convert(o)
            | Command::Generate(o)
            | Command::Lemmas(o)
            | Command::Compare(o) => o,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    /// Products of affine forms with nonnegative coefficients.
    Product,
    /// Products times `--order` homogeneous linear forms.
    Vanishing,
    /// Expanded determinantal representations.
    Detrep,
    /// Determinantal representations with an `--order`-dimensional kernel.
    VanishingDetrep,
}

/// Flags shared by every subcommand; each uses the ones it needs.
#[derive(Args, Debug, Default)]
pub struct Options {
    /// JSON file with defaults for any of the options below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(short = 'i', long)]
    pub input: Option<PathBuf>,
    /// Output file (bound, convert), report stem (verify, lemmas, compare)
    /// or directory (generate).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Theorem; `compare` accepts it repeatedly.
    #[arg(long, value_enum)]
    pub thm: Vec<Theorem>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub real_only: bool,
    #[arg(long)]
    pub upper_half: bool,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub suite: Option<LemmaSuite>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub dim_max: Option<usize>,
    #[arg(long, value_enum)]
    pub kind: Option<CorpusKind>,
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Factors per product, or matrix size for determinantal corpora.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub order: Option<u32>,
    /// Replace the first squares trial with one outside the hypothesis.
    #[arg(long, hide = true)]
    pub inject_bad: bool,
}

/// Fully resolved configuration of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub subcommand: String,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub thm: Vec<Theorem>,
    pub radius: f64,
    pub real_only: bool,
    pub upper_half: bool,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub suite: Option<LemmaSuite>,
    pub trials: usize,
    pub dim_max: usize,
    pub kind: CorpusKind,
    pub nvars: usize,
    pub count: usize,
    pub size: usize,
    pub order: u32,
    pub inject_bad: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            subcommand: String::new(),
            input: None,
            output: None,
            thm: Vec::new(),
            radius: 2.0,
            real_only: false,
            upper_half: false,
            samples: 1000,
            seed: 0,
            tol: verify::VIOLATION_TOL,
            suite: None,
            trials: 10_000,
            dim_max: 8,
            kind: CorpusKind::Product,
            nvars: 2,
            count: 10,
            size: 3,
            order: 1,
            inject_bad: false,
        }
    }
}

impl RunConfig {
    /// Config file (if any) overlaid with the flags that were given.
    pub fn resolve(subcommand: &str, o: &Options) -> Result<Self> {
        let mut c = match &o.config {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        c.subcommand = subcommand.to_string();
        fn set<T: Clone>(slot: &mut T, flag: &Option<T>) {
            if let Some(v) = flag {
                *slot = v.clone();
            }
        }
        if o.input.is_some() {
            c.input = o.input.clone();
        }
        if o.output.is_some() {
            c.output = o.output.clone();
        }
        if !o.thm.is_empty() {
            c.thm = o.thm.clone();
        }
        if o.suite.is_some() {
            c.suite = o.suite;
        }
        set(&mut c.radius, &o.radius);
        set(&mut c.samples, &o.samples);
        set(&mut c.seed, &o.seed);
        set(&mut c.tol, &o.tol);
        set(&mut c.trials, &o.trials);
        set(&mut c.dim_max, &o.dim_max);
        set(&mut c.kind, &o.kind);
        set(&mut c.nvars, &o.nvars);
        set(&mut c.count, &o.count);
        set(&mut c.size, &o.size);
        set(&mut c.order, &o.order);
        c.real_only |= o.real_only;
        c.upper_half |= o.upper_half;
        c.inject_bad |= o.inject_bad;
        Ok(c)
    }

    fn input(&self) -> Result<&Path> {
        self.input
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("missing input file (-i)".into()))
    }

    fn theorem(&self) -> Result<Theorem> {
        match self.thm.as_slice() {
            [t] => Ok(*t),
            [] => Err(Error::InvalidParameter("missing --thm".into())),
            _ => Err(Error::InvalidParameter("give exactly one --thm".into())),
        }
    }

    fn region(&self) -> Region {
        Region { radius: self.radius, upper_half: self.upper_half, real_only: self.real_only }
    }
}

/// Why a run stopped early.
enum Failure {
    Usage(String),
    Hypothesis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            e if e.is_hypothesis_failure() => Failure::Hypothesis(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (program name first) and runs the subcommand, writing
/// human-readable output to `out`. Returns the process exit code.
pub fn run_with<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::resolve(cli.command.name(), cli.command.options())
        .map_err(Failure::from)
        .and_then(|config| match cli.command {
            Command::Bound(_) => cmd_bound(&config, out),
            Command::Verify(_) => cmd_verify(&config, out),
            Command::Convert(_) => cmd_convert(&config, out),
            Command::Generate(_) => cmd_generate(&config, out),
            Command::Lemmas(_) => cmd_lemmas(&config, out),
            Command::Compare(_) => cmd_compare(&config, out),
        });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("hypothesis not satisfied: {msg}");
            EXIT_HYPOTHESIS
        }
    }
}

/// [`run_with`] on standard output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock())
}

fn read_poly(path: &Path) -> Result<MultiPoly> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::from(Error::Io(e))
}

/// `c0=… kappa=… lambda=… …` with seventeen significant digits.
pub fn describe(b: &ExpBound) -> String {
    let c: Vec<String> = b
        .linear_complex
        .iter()
        .map(|v| format!("({},{})", fmt_f64(v.re), fmt_f64(v.im)))
        .collect();
    format!(
        "r={} c0={} c=[{}] kappa={} lambda={} norm={} domain={}",
        b.lead_degree,
        fmt_f64(b.log_prefactor),
        c.join(","),
        fmt_f64(b.linear_abs),
        fmt_f64(b.quad),
        serde_json::to_value(b.norm).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default(),
        serde_json::to_value(b.domain).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default(),
    )
}

fn cmd_bound<W: Write>(config: &RunConfig, out: &mut W) -> CmdResult {
    let thm = config.theorem()?;
    let p = read_poly(config.input()?)?;
    let b = thm.certificate(&p)?;
    if let Some(path) = &config.output {
        write_json(path, &b)?;
    }
    writeln!(out, "thm={thm} {} seed={}", describe(&b), config.seed).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn report_line(row: &ReportRow) -> String {
    format!(
        "{} thm={} n={} trials={} violations={} worst_margin={} seed={}",
        row.case_id,
        row.theorem,
        row.n,
        row.trials,
        row.violations,
        fmt_f64(row.worst_margin),
        row.seed
    )
}

fn finish_report<W: Write>(config: &RunConfig, rows: &[ReportRow], out: &mut W) -> CmdResult {
    for row in rows {
        writeln!(out, "{}", report_line(row)).map_err(io_err)?;
    }
    if let Some(stem) = &config.output {
        verify::write_reports(stem, config, rows)?;
    }
    Ok(if rows.iter().all(|r| r.violations == 0) { EXIT_OK } else { EXIT_VIOLATIONS })
}

fn case_id(config: &RunConfig) -> String {
    config
        .input
        .as_deref()
        .and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| config.subcommand.clone())
}

fn cmd_verify<W: Write>(config: &RunConfig, out: &mut W) -> CmdResult {
    let thm = config.theorem()?;
    let p = read_poly(config.input()?)?;
    let b = thm.certificate(&p)?;
    let mut region = config.region();
    region.real_only |= b.domain == BoundDomain::RealPointsOnly;
    let report = verify::verify_bound(&p, &b, &region, config.samples, config.seed, config.tol)?;
    let row = ReportRow::from_report(&case_id(config), thm.name(), p.nvars(), &report);
    if let Some(w) = &report.witness {
        writeln!(out, "witness log|p|={} log bound={}", fmt_f64(w.value), fmt_f64(w.bound)).map_err(io_err)?;
    }
    finish_report(config, &[row], out)
}

fn cmd_convert<W: Write>(config: &RunConfig, out: &mut W) -> CmdResult {
    let brep: BidiskRep = serde_json::from_str(&fs::read_to_string(config.input()?).map_err(Error::Io)?)
        .map_err(Error::Json)?;
    let tol = config.tol.max(1e-12);
    let conv = convert_bidisk(&brep, tol)?;
    let identity = conv.imag_identity_residual()?;

    // round trip against the transferred bidisk polynomial
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let region = Region::upper(config.radius);
    let mut worst = 0.0f64;
    for _ in 0..config.samples.min(1000) {
        let z = region.sample(&mut rng, 2);
        let want = brep.eval_transferred(&z)?;
        let got = conv.rep.eval(&z)?;
        worst = worst.max((got - want).norm() / want.norm().max(1e-300));
    }
    if let Some(path) = &config.output {
        write_json(path, &conv.rep)?;
    }
    writeln!(
        out,
        "size={} fixed_dim={} check={} imag_a_min_eig={} identity_residual={} round_trip_rel_err={} seed={}",
        conv.rep.size(),
        conv.split.fixed_dim,
        if conv.check.pass { "pass" } else { "fail" },
        fmt_f64(conv.check.imag_a_min_eig),
        fmt_f64(identity),
        fmt_f64(worst),
        config.seed
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

#[derive(Serialize, Deserialize)]
struct ManifestEntry {
    file: String,
    seed: u64,
    nvars: usize,
    order: u32,
    detrep: Option<String>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    config: &'a RunConfig,
    entries: Vec<ManifestEntry>,
}

fn cmd_generate<W: Write>(config: &RunConfig, out: &mut W) -> CmdResult {
    let dir = config
        .output
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("missing output directory (-o)".into()))?;
    fs::create_dir_all(dir).map_err(io_err)?;
    let mut entries = Vec::with_capacity(config.count);
    for k in 0..config.count {
        let seed = config.seed.wrapping_add(k as u64);
        let file = format!("poly_{k:04}.json");
        let (p, rep) = match config.kind {
            CorpusKind::Product => (stability::generate_stable_product(config.nvars, config.size, seed), None),
            CorpusKind::Vanishing => (
                stability::generate_vanishing_product(config.nvars, config.size, config.order, seed),
                None,
            ),
            CorpusKind::Detrep => {
                let (rep, p) = stability::generate_stable_detrep(config.nvars, config.size, seed)?;
                (p, Some(rep))
            }
            CorpusKind::VanishingDetrep => {
                let (rep, p) =
                    stability::generate_vanishing_detrep(config.nvars, config.size, config.order as usize, seed)?;
                (p, Some(rep))
            }
        };
        write_json(&dir.join(&file), &p)?;
        let detrep = match rep {
            Some(rep) => {
                let name = format!("detrep_{k:04}.json");
                write_json(&dir.join(&name), &rep)?;
                Some(name)
            }
            None => None,
        };
        let order = p.homogeneous_parts(crate::poly::ORDER_TOL)?.vanishing_order();
        entries.push(ManifestEntry { file, seed, nvars: config.nvars, order, detrep });
    }
    let n = entries.len();
    write_json(&dir.join("manifest.json"), &Manifest { config, entries })?;
    writeln!(out, "wrote {n} polynomials to {} seed={}", dir.display(), config.seed).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_lemmas<W: Write>(config: &RunConfig, out: &mut W) -> CmdResult {
    let suites: Vec<LemmaSuite> = match config.suite {
        Some(s) => vec![s],
        None => LemmaSuite::ALL.to_vec(),
    };
    let mut rows = Vec::with_capacity(suites.len());
    for suite in suites {
        let report: VerifyReport =
            verify::lemma_trials_with(suite, config.trials, config.seed, config.dim_max, config.inject_bad)?;
        rows.push(ReportRow::from_report(suite.name(), suite.name(), config.dim_max, &report));
    }
    finish_report(config, &rows, out)
}

#[derive(Serialize)]
struct CompareOutput<'a> {
    config: &'a RunConfig,
    theorems: Vec<&'static str>,
    bounds: &'a [ExpBound],
    table: &'a verify::CompareTable,
}

fn cmd_compare<W: Write>(config: &RunConfig, out: &mut W) -> CmdResult {
    let p = read_poly(config.input()?)?;
    let region = config.region();
    let requested = if config.thm.is_empty() { Theorem::ALL.to_vec() } else { config.thm.clone() };
    let mut theorems = Vec::new();
    let mut bounds = Vec::new();
    for thm in requested {
        match thm.certificate(&p) {
            Ok(b) if b.domain == BoundDomain::RealPointsOnly && !region.real_only => {
                writeln!(out, "skip {thm}: certificate holds at real points only").map_err(io_err)?
            }
            Ok(b) => {
                theorems.push(thm.name());
                bounds.push(b);
            }
            Err(e) if !config.thm.is_empty() => return Err(e.into()),
            Err(e) => writeln!(out, "skip {thm}: {e}").map_err(io_err)?,
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let samples: Vec<Vec<C64>> = (0..config.samples).map(|_| region.sample(&mut rng, p.nvars())).collect();
    let table = verify::compare_bounds(&p, &bounds, &samples)?;
    for (name, count) in theorems.iter().zip(&table.tightest) {
        writeln!(out, "{name} tightest={count}/{} seed={}", samples.len(), config.seed).map_err(io_err)?;
    }
    if let Some(path) = &config.output {
        let body = CompareOutput { config, theorems, bounds: &bounds, table: &table };
        write_json(&path.with_extension("json"), &body)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run_with(std::iter::once("szasz").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn unknown_theorem_is_usage_error() {
        assert_eq!(run_capture(&["bound", "--thm", "nonsense", "-i", "x.json"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn missing_input_is_usage_error() {
        assert_eq!(run_capture(&["bound", "--thm", "improved"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["bound", "--thm", "improved", "-i", "/nonexistent/p.json"]).0, EXIT_USAGE);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("cfg.json");
        fs::write(&cfg, r#"{"seed": 5, "samples": 17, "radius": 4.0}"#).unwrap();
        let opts = Options { config: Some(cfg), seed: Some(9), ..Options::default() };
        let c = RunConfig::resolve("verify", &opts).unwrap();
        assert_eq!((c.seed, c.samples, c.radius), (9, 17, 4.0));
        assert_eq!(c.subcommand, "verify");
    }

    #[test]
    fn single_lemma_suite() {
        let (code, text) = run_capture(&["lemmas", "--suite", "log", "--trials", "200", "--seed", "3"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(text.lines().count(), 1);
        assert!(text.contains("violations=0") && text.contains("seed=3"));
    }

    #[test]
    fn injected_lemma_failure_exits_one() {
        let args = ["lemmas", "--suite", "squares", "--trials", "20", "--inject-bad"];
        assert_eq!(run_capture(&args).0, EXIT_VIOLATIONS);
    }
}
