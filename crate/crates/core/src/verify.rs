//! Seeded Monte Carlo verification: bound sweeps, sharpness tables, lemma
//! oracles and side-by-side comparison of certificates.
//!
//! Every report is a pure function of its inputs and seed. Wall-clock time
//! is recorded but never serialized, so report bytes are reproducible.

use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundDomain, ExpBound};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::poly::MultiPoly;
use crate::stability::{random_psd_imag_matrix, random_psd_partition};
use crate::C64;

/// Log-scale margin below which a sample counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Sampling region: the polydisk `|z_j| ≤ radius`, optionally restricted to
/// `Im z_j ≥ 0` or to real points.
///
/// Real and imaginary parts are drawn independently and uniformly, and
/// coordinates falling outside the disk are redrawn, so each coordinate is
/// uniform on its (half) disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub radius: f64,
    pub upper_half: bool,
    pub real_only: bool,
}

impl Region {
    pub fn complex(radius: f64) -> Self {
        Region { radius, upper_half: false, real_only: false }
    }

    pub fn upper(radius: f64) -> Self {
        Region { radius, upper_half: true, real_only: false }
    }

    pub fn real(radius: f64) -> Self {
        Region { radius, upper_half: false, real_only: true }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, nvars: usize) -> Vec<C64> {
        let r = self.radius;
        (0..nvars).map(|_| self.sample_coordinate(rng, r)).collect()
    }

    fn sample_coordinate<R: Rng + ?Sized>(&self, rng: &mut R, r: f64) -> C64 {
        if r <= 0.0 {
            return C64::new(0.0, 0.0);
        }
        loop {
            let re = rng.random_range(-r..=r);
            let im = if self.real_only {
                0.0
            } else if self.upper_half {
                rng.random_range(0.0..=r)
            } else {
                rng.random_range(-r..=r)
            };
            if re * re + im * im <= r * r {
                return C64::new(re, im);
            }
        }
    }
}

/// The sample with the smallest margin among the violating ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub z: Vec<[f64; 2]>,
    pub value: f64,
    pub bound: f64,
}

impl Witness {
    fn new(z: &[C64], value: f64, bound: f64) -> Self {
        Witness { z: z.iter().map(|c| [c.re, c.im]).collect(), value, bound }
    }

    pub fn point(&self) -> Vec<C64> {
        self.z.iter().map(|&[re, im]| C64::new(re, im)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub violations: usize,
    /// Minimum of `bound − value` over all trials (log scale for bound
    /// sweeps); `+∞` serializes as `null`.
    pub worst_log_margin: f64,
    pub witness: Option<Witness>,
    pub seed: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

/// Accumulates margins; keeps the worst violating sample as witness.
struct Tally {
    trials: usize,
    violations: usize,
    worst: f64,
    worst_violation: f64,
    witness: Option<Witness>,
}

impl Tally {
    fn new() -> Self {
        Tally { trials: 0, violations: 0, worst: f64::INFINITY, worst_violation: f64::INFINITY, witness: None }
    }

    fn record(&mut self, margin: f64, violated: bool, witness: impl FnOnce() -> Witness) {
        self.trials += 1;
        if margin < self.worst {
            self.worst = margin;
        }
        if violated {
            self.violations += 1;
            if self.witness.is_none() || margin < self.worst_violation {
                self.worst_violation = margin;
                self.witness = Some(witness());
            }
        }
    }

    fn finish(self, seed: u64, start: Instant) -> VerifyReport {
        VerifyReport {
            trials: self.trials,
            violations: self.violations,
            worst_log_margin: self.worst,
            witness: self.witness,
            seed,
            elapsed: start.elapsed(),
        }
    }
}

/// `evaluate_log(b, z) − log|p(z)|`; `+∞` at zeros of `p`.
pub fn log_margin(p: &MultiPoly, b: &ExpBound, z: &[C64]) -> Result<(f64, f64, f64)> {
    let value = p.evaluate(z)?.norm().ln();
    let bound = b.evaluate_log(z)?;
    let margin = if value == f64::NEG_INFINITY { f64::INFINITY } else { bound - value };
    Ok((margin, value, bound))
}

/// Samples `region` uniformly and compares `log|p|` with the certificate.
pub fn verify_bound(
    p: &MultiPoly,
    b: &ExpBound,
    region: &Region,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerifyReport> {
    if p.nvars() != b.nvars() {
        return Err(Error::DimensionMismatch { expected: b.nvars(), got: p.nvars() });
    }
    if b.domain == BoundDomain::RealPointsOnly && !region.real_only {
        return Err(Error::DomainViolation("certificate holds at real points only; use a real region".into()));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..samples {
        let z = region.sample(&mut rng, p.nvars());
        let (margin, value, bound) = log_margin(p, b, &z)?;
        tally.record(margin, margin < -tol, || Witness::new(&z, value, bound));
    }
    Ok(tally.finish(seed, start))
}

/// `γ = (c₁² − 2c₂)/2` and `d_n = γ − c₁²/(2n)`.
fn sharpness_params(c1: f64, c2: f64, n: u32) -> Result<(f64, f64)> {
    let gamma = (c1 * c1 - 2.0 * c2) / 2.0;
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("need c1^2 - 2 c2 > 0, got gamma = {gamma}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let d = gamma - c1 * c1 / (2.0 * n as f64);
    if d < 0.0 {
        return Err(Error::InvalidParameter(format!("d_n = {d} < 0 at n = {n}")));
    }
    Ok((gamma, d))
}

/// `p_n(z) = (1 + c₁z/n)ⁿ (1 − d_n z²/n)ⁿ`, expanded.
pub fn sharpness_poly(c1: f64, c2: f64, n: u32) -> Result<MultiPoly> {
    let (_, d) = sharpness_params(c1, c2, n)?;
    let nf = n as f64;
    let lin = MultiPoly::from_coeffs_1d(&[C64::new(1.0, 0.0), C64::new(c1 / nf, 0.0)]);
    let quad = MultiPoly::from_coeffs_1d(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(-d / nf, 0.0)]);
    Ok(&lin.pow(n) * &quad.pow(n))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub n: u32,
    pub y: f64,
    pub abs_p: f64,
    pub target: f64,
    pub ratio: f64,
}

/// `|p_n(iy)|` against `exp(γy²)`, evaluated in factored form.
pub fn sharpness_run(c1: f64, c2: f64, n_list: &[u32], y_grid: &[f64]) -> Result<Vec<SharpnessRow>> {
    let mut rows = Vec::with_capacity(n_list.len() * y_grid.len());
    for &n in n_list {
        let (gamma, d) = sharpness_params(c1, c2, n)?;
        let nf = n as f64;
        for &y in y_grid {
            let z = C64::new(0.0, y);
            let lin = (C64::new(1.0, 0.0) + z * (c1 / nf)).powi(n as i32);
            let quad = (C64::new(1.0, 0.0) - z * z * (d / nf)).powi(n as i32);
            let abs_p = (lin * quad).norm();
            let target = (gamma * y * y).exp();
            rows.push(SharpnessRow { n, y, abs_p, target, ratio: abs_p / target });
        }
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LemmaSuite {
    /// `Σ|α_j|² ≤ |Σα_j|² − 2 Re Σ_{j<k} α_jα_k` for `Im α_j ≤ 0`.
    Squares,
    /// `log|1 + z| ≤ Re z + ½|z|²`.
    Log,
    /// `|tr(MP)| ≤ ‖M‖ tr P` for `P ⪰ 0`.
    TracePm,
    /// `‖Σ z_j B_j‖ ≤ ‖z‖∞` for a PSD partition of the identity.
    SumB,
    /// `tr M*M ≤ |tr M|² − Re((tr M)² − tr M²)` for `Im M ⪰ 0`.
    ImTrace,
    /// `|p₁|² − 2 Re p₂ ≤ 3|p₁|² + 2|p₂|` for the elementary symmetric
    /// functions of `α` with `Im α_j ≤ 0`.
    Bbsz,
}

impl LemmaSuite {
    pub const ALL: [LemmaSuite; 6] = [
        LemmaSuite::Squares,
        LemmaSuite::Log,
        LemmaSuite::TracePm,
        LemmaSuite::SumB,
        LemmaSuite::ImTrace,
        LemmaSuite::Bbsz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaSuite::Squares => "squares",
            LemmaSuite::Log => "log",
            LemmaSuite::TracePm => "trace-pm",
            LemmaSuite::SumB => "sum-b",
            LemmaSuite::ImTrace => "im-trace",
            LemmaSuite::Bbsz => "bbsz",
        }
    }
}

/// Both sides of the squares inequality.
pub fn squares_sides(alpha: &[C64]) -> (f64, f64) {
    let lhs = alpha.iter().map(|a| a.norm_sqr()).sum();
    let total: C64 = alpha.iter().sum();
    let pairs = pair_sum(alpha);
    (lhs, total.norm_sqr() - 2.0 * pairs.re)
}

/// `Σ_{j<k} α_jα_k`.
fn pair_sum(alpha: &[C64]) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    let mut prefix = C64::new(0.0, 0.0);
    for a in alpha {
        acc += prefix * a;
        prefix += a;
    }
    acc
}

/// Both sides of the trace inequality for `M` with `Im M ⪰ 0`.
pub fn im_trace_sides(m: &CMatrix) -> (f64, f64) {
    let lhs = (m.adjoint() * m).trace().re;
    let tr = m.trace();
    let tr_sq = (m * m).trace();
    (lhs, tr.norm_sqr() - (tr * tr - tr_sq).re)
}

fn random_alpha(rng: &mut ChaCha8Rng, d: usize) -> Vec<C64> {
    (0..d)
        .map(|_| C64::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=0.0)))
        .collect()
}

/// Runs `trials` random instances of one lemma. Margins are `RHS − LHS`,
/// a violation is a margin below `−1e-9·max(1, |RHS|)`.
pub fn lemma_trials(which: LemmaSuite, trials: usize, seed: u64, dim_max: usize) -> Result<VerifyReport> {
    lemma_trials_with(which, trials, seed, dim_max, false)
}

/// As [`lemma_trials`]; with `inject_bad`, the first squares trial uses
/// `α = (i, −i)`, outside the hypothesis, and must be flagged.
pub fn lemma_trials_with(
    which: LemmaSuite,
    trials: usize,
    seed: u64,
    dim_max: usize,
    inject_bad: bool,
) -> Result<VerifyReport> {
    if trials == 0 || dim_max == 0 {
        return Err(Error::InvalidParameter("trials and dim_max must be positive".into()));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    let tol = VIOLATION_TOL;
    for t in 0..trials {
        let d = rng.random_range(1..=dim_max);
        let (lhs, rhs, point, extra_violation) = match which {
            LemmaSuite::Squares => {
                let alpha = if inject_bad && t == 0 {
                    vec![C64::new(0.0, 1.0), C64::new(0.0, -1.0)]
                } else {
                    random_alpha(&mut rng, d)
                };
                let (lhs, rhs) = squares_sides(&alpha);
                // equality forces d = 1 or real α
                let equal = (rhs - lhs).abs() <= tol;
                let max_im = alpha.iter().map(|a| a.im.abs()).fold(0.0, f64::max);
                let bad_equality = equal && alpha.len() > 1 && max_im > 1e-7;
                (lhs, rhs, alpha, bad_equality)
            }
            LemmaSuite::Log => {
                let z = loop {
                    let z = C64::new(rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0));
                    if (z + 1.0).norm() > 0.0 {
                        break z;
                    }
                };
                ((z + 1.0).norm().ln(), z.re + 0.5 * z.norm_sqr(), vec![z], false)
            }
            LemmaSuite::TracePm => {
                let scale = rng.random_range(0.1..=3.0);
                let m = linalg::random_matrix(&mut rng, d, d) * C64::new(scale, 0.0);
                let k = rng.random_range(1..=d);
                let v = linalg::random_matrix(&mut rng, d, k);
                let p = &v * v.adjoint();
                ((&m * &p).trace().norm(), linalg::op_norm(&m) * p.trace().re, Vec::new(), false)
            }
            LemmaSuite::SumB => {
                let n = rng.random_range(1..=4);
                let b = random_psd_partition(&mut rng, n, d)?;
                let z = Region::complex(3.0).sample(&mut rng, n);
                let sum = b
                    .iter()
                    .zip(&z)
                    .fold(CMatrix::zeros(d, d), |acc, (bj, zj)| acc + bj * *zj);
                let sup = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
                (linalg::op_norm(&sum), sup, z, false)
            }
            LemmaSuite::ImTrace => {
                let m = random_psd_imag_matrix(&mut rng, d);
                let (lhs, rhs) = im_trace_sides(&m);
                (lhs, rhs, Vec::new(), false)
            }
            LemmaSuite::Bbsz => {
                let alpha = random_alpha(&mut rng, d);
                let p1: C64 = alpha.iter().sum();
                let p2 = pair_sum(&alpha);
                let (_, lemma_rhs) = squares_sides(&alpha);
                (lemma_rhs, 3.0 * p1.norm_sqr() + 2.0 * p2.norm(), alpha, false)
            }
        };
        let margin = rhs - lhs;
        let violated = margin < -tol * rhs.abs().max(1.0) || extra_violation;
        tally.record(margin, violated, || Witness::new(&point, lhs, rhs));
    }
    Ok(tally.finish(seed, start))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub z: Vec<[f64; 2]>,
    pub log_abs_p: f64,
    pub exponents: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareTable {
    pub rows: Vec<CompareRow>,
    /// For each bound, the number of samples where it is tightest (ties
    /// within `1e-12` count for every tied bound).
    pub tightest: Vec<usize>,
}

/// Evaluates every certificate at every sample.
pub fn compare_bounds(p: &MultiPoly, bounds: &[ExpBound], z_samples: &[Vec<C64>]) -> Result<CompareTable> {
    let mut rows = Vec::with_capacity(z_samples.len());
    let mut tightest = vec![0; bounds.len()];
    for z in z_samples {
        let log_abs_p = p.evaluate(z)?.norm().ln();
        let exponents = bounds.iter().map(|b| b.evaluate_log(z)).collect::<Result<Vec<_>>>()?;
        let best = exponents.iter().copied().fold(f64::INFINITY, f64::min);
        for (count, e) in tightest.iter_mut().zip(&exponents) {
            if *e <= best + 1e-12 {
                *count += 1;
            }
        }
        rows.push(CompareRow { z: z.iter().map(|c| [c.re, c.im]).collect(), log_abs_p, exponents });
    }
    Ok(CompareTable { rows, tightest })
}

/// One line of a CSV/JSON report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub case_id: String,
    pub theorem: String,
    pub n: usize,
    pub trials: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub witness_z: Option<Vec<[f64; 2]>>,
    pub seed: u64,
}

impl ReportRow {
    pub fn from_report(case_id: &str, theorem: &str, n: usize, report: &VerifyReport) -> Self {
        ReportRow {
            case_id: case_id.to_string(),
            theorem: theorem.to_string(),
            n,
            trials: report.trials,
            violations: report.violations,
            worst_margin: report.worst_log_margin,
            witness_z: report.witness.as_ref().map(|w| w.z.clone()),
            seed: report.seed,
        }
    }
}

/// Seventeen significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn fmt_point(z: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (k, [re, im]) in z.iter().enumerate() {
        if k > 0 {
            s.push(';');
        }
        let sign = if im.is_sign_negative() { "" } else { "+" };
        let _ = write!(s, "{}{sign}{}i", fmt_f64(*re), fmt_f64(*im));
    }
    s
}

/// CSV report, preceded by a `#`-comment line holding `header` (the run
/// configuration as JSON).
pub fn report_csv(header: &str, rows: &[ReportRow]) -> Result<String> {
    let mut out = String::new();
    if !header.is_empty() {
        let _ = writeln!(out, "# {header}");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["case_id", "theorem", "n", "trials", "violations", "worst_margin", "witness_z", "seed"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.case_id.clone(),
            r.theorem.clone(),
            r.n.to_string(),
            r.trials.to_string(),
            r.violations.to_string(),
            fmt_f64(r.worst_margin),
            r.witness_z.as_deref().map(fmt_point).unwrap_or_default(),
            r.seed.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(out)
}

#[derive(Serialize)]
struct JsonReport<'a, C: Serialize> {
    config: &'a C,
    rows: &'a [ReportRow],
}

/// JSON mirror of [`report_csv`].
pub fn report_json<C: Serialize>(config: &C, rows: &[ReportRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&JsonReport { config, rows })?)
}

/// Writes `<stem>.csv` and `<stem>.json`.
pub fn write_reports<C: Serialize>(stem: &Path, config: &C, rows: &[ReportRow]) -> Result<()> {
    let header = serde_json::to_string(config)?;
    std::fs::write(stem.with_extension("csv"), report_csv(&header, rows)?)?;
    std::fs::write(stem.with_extension("json"), report_json(config, rows)?)?;
    Ok(())
}
