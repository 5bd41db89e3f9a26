//! Command-line front end: `construct`, `verify`, `discrepancy`, `scaling`
//! and `selftest`.
//!
//! Exit codes: 0 success, 1 parameter or precondition error, 2 capacity
//! error, 3 verification failure.

mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use config::{CommandKind, RunConfig};

use crate::acceptance;
use crate::constructions::{
    cs_matrices, davenport_symmetrized, dp_finite_pointset, dp_sequence, faure_matrices, interlace_matrices,
    niederreiter_net_matrices, niederreiter_t_bound, ContinuedFraction, CsParams, NiedParams,
};
use crate::discrepancy::{l2_exact, lq_estimate, sequence_profile, sum_of_digits, DiscrepancyReport, LqOptions};
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};
use crate::metrics::{min_dual_weight, nrt_identity_holds, t_alpha, WeightKind};
use crate::net::{
    char_property_sum, compute_t_value, digits_for_count, generate_net_points, geometric_net_check, DualSpace,
    GeneratingMatrixSet, PointSet, Provenance,
};
use crate::pointfile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

pub const FAMILIES: &[&str] = &[
    "faure",
    "chen-skriganov",
    "niederreiter",
    "dp-net",
    "dp-finite",
    "dp-sequence",
    "davenport",
    "van-der-corput",
];

#[derive(Debug, Parser)]
#[command(name = "digitnet", version, about = "Digital nets and sequences: construction, verification, discrepancy")]
pub struct Cli {
    /// TOML file with default settings; flags override it
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a point set and write it as a point file
    Construct(Flags),
    /// Run structural checks and print a pass/fail CSV
    Verify(Flags),
    /// Exact L2 (and estimated Lq for q != 2) of a point file or construction
    Discrepancy(Flags),
    /// Normalized discrepancy over a grid of sizes
    Scaling(Flags),
    /// Run the acceptance suite
    Selftest(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Smallest m of a scaling grid
    #[arg(long = "m-min")]
    pub m_min: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Claimed t-value for `verify`; overrides the construction's bound
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Largest dual space to enumerate
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Checks for `verify`: t-value, geometric, hamming, nrt, order-alpha, char
    #[arg(long = "check", value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Irrational for `davenport`: golden or sqrt2
    #[arg(long)]
    pub irrational: Option<String>,
    /// Point file to read instead of constructing
    pub input: Option<PathBuf>,
}

impl Command {
    fn split(self) -> (CommandKind, Flags) {
        match self {
            Command::Construct(f) => (CommandKind::Construct, f),
            Command::Verify(f) => (CommandKind::Verify, f),
            Command::Discrepancy(f) => (CommandKind::Discrepancy, f),
            Command::Scaling(f) => (CommandKind::Scaling, f),
            Command::Selftest(f) => (CommandKind::Selftest, f),
        }
    }
}

impl Flags {
    fn into_config(self, command: CommandKind) -> RunConfig {
        RunConfig {
            command: Some(command),
            family: self.family,
            b: self.b,
            m: self.m,
            m_min: self.m_min,
            s: self.s,
            alpha: self.alpha,
            t: self.t,
            n: self.n,
            q: self.q,
            samples: self.samples,
            seed: self.seed,
            threads: self.threads,
            cap: self.cap,
            out: self.out,
            input: self.input,
            checks: (!self.checks.is_empty()).then_some(self.checks),
            irrational: self.irrational,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Consistency(_) => EXIT_VERIFICATION,
        _ => EXIT_PARAMETER,
    }
}

/// A constructed point set together with what is known about its structure.
pub struct Built {
    pub points: PointSet,
    pub matrices: Option<GeneratingMatrixSet>,
    /// Known bound on the t-value.
    pub t_bound: Option<usize>,
    /// Hamming threshold parameter: the dual minimum should exceed it.
    pub alpha: usize,
    /// `(alpha, t of the base net, m)` for interlaced nets.
    pub order: Option<(usize, usize, usize)>,
}

impl Built {
    fn from_matrices(c: GeneratingMatrixSet, provenance: Provenance) -> Result<Self> {
        Ok(Self {
            points: generate_net_points(&c)?.with_provenance(provenance),
            matrices: Some(c),
            t_bound: None,
            alpha: 1,
            order: None,
        })
    }

    fn from_points(points: PointSet) -> Self {
        Self { points, matrices: None, t_bound: None, alpha: 1, order: None }
    }
}

fn irrational(cfg: &RunConfig) -> Result<ContinuedFraction> {
    match cfg.irrational.as_deref().unwrap_or("golden") {
        "golden" => Ok(ContinuedFraction::golden_ratio()),
        "sqrt2" => Ok(ContinuedFraction::sqrt2()),
        other => Err(Error::param(format!("unknown irrational {other:?}; expected golden or sqrt2"))),
    }
}

/// Builds the configured family.
pub fn build(cfg: &RunConfig) -> Result<Built> {
    let family = cfg.family()?;
    match family {
        "faure" => {
            let (b, m, s) = (cfg.b()?, cfg.m()?, cfg.s()?);
            let p = Provenance::new(family).with("b", b).with("m", m).with("s", s);
            let mut built = Built::from_matrices(faure_matrices(b, m, s)?, p)?;
            built.t_bound = Some(0);
            Ok(built)
        }
        "chen-skriganov" => {
            let (b, alpha, m, s) = (cfg.b()?, cfg.alpha()?, cfg.m()?, cfg.s()?);
            let c = cs_matrices(&CsParams::new(b, alpha, m, s, None)?);
            let p = Provenance::new(family).with("b", b).with("alpha", alpha).with("m", m).with("s", s);
            let mut built = Built::from_matrices(c, p)?;
            built.t_bound = Some(0);
            built.alpha = alpha;
            Ok(built)
        }
        "niederreiter" => {
            let (m, s) = (cfg.m()?, cfg.s()?);
            let params = NiedParams::new(s)?;
            let p = Provenance::new(family).with("m", m).with("s", s);
            let mut built = Built::from_matrices(niederreiter_net_matrices(&params, m), p)?;
            built.t_bound = Some(niederreiter_t_bound(&params));
            Ok(built)
        }
        "dp-net" => {
            let (alpha, m, s) = (cfg.alpha()?, cfg.m()?, cfg.s()?);
            if alpha == 0 || s == 0 {
                return Err(Error::param("alpha and s must be positive"));
            }
            let base = niederreiter_net_matrices(&NiedParams::new(alpha * s)?, m);
            let base_t = compute_t_value(&base);
            let p = Provenance::new(family).with("alpha", alpha).with("m", m).with("s", s);
            let mut built = Built::from_matrices(interlace_matrices(&base, alpha)?, p)?;
            built.order = Some((alpha, base_t, m));
            built.alpha = alpha;
            Ok(built)
        }
        "dp-finite" => Ok(Built::from_points(dp_finite_pointset(cfg.n()?, cfg.s()?)?)),
        "dp-sequence" => Ok(Built::from_points(dp_sequence(cfg.s()?, cfg.n()?)?)),
        "davenport" => {
            let n = cfg.n()?;
            if n == 0 || n % 2 != 0 {
                return Err(Error::param(format!("davenport needs an even positive N = 2M, got {n}")));
            }
            Ok(Built::from_points(davenport_symmetrized(&irrational(cfg)?, n / 2)?))
        }
        "van-der-corput" => {
            let (b, m) = (cfg.b()?, cfg.m()?);
            let c = GeneratingMatrixSet::new(vec![FieldMatrix::identity(PrimeField::new(b)?, m)])?;
            let p = Provenance::new(family).with("b", b).with("m", m);
            let mut built = Built::from_matrices(c, p)?;
            built.t_bound = Some(0);
            Ok(built)
        }
        other => Err(Error::param(format!("unknown family {other:?}; expected one of {}", FAMILIES.join(", ")))),
    }
}

fn params_of(points: &PointSet) -> (String, String) {
    match points.provenance() {
        Some(p) => {
            let kv: Vec<String> = p.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            (p.family.clone(), kv.join(" "))
        }
        None => (String::new(), String::new()),
    }
}

fn csv_safe(s: &str) -> String {
    s.replace([',', '\n'], ";")
}

fn log_matrices(c: &GeneratingMatrixSet, err: &mut dyn Write) -> Result<()> {
    for (j, mat) in c.matrices().iter().enumerate() {
        writeln!(err, "C_{} =", j + 1)?;
        for row in mat.to_rows() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(err, "  {}", cells.join(" "))?;
        }
    }
    Ok(())
}

fn cmd_construct(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let built = build(cfg)?;
    if let Some(c) = &built.matrices {
        log_matrices(c, err)?;
    }
    pointfile::write_points(&built.points, out)?;
    writeln!(err, "wrote {} points", built.points.len())?;
    Ok(true)
}

struct CheckRow {
    check: &'static str,
    passed: bool,
    value: String,
    detail: String,
}

fn need_matrices<'a>(built: &'a Built, check: &str) -> Result<&'a GeneratingMatrixSet> {
    built
        .matrices
        .as_ref()
        .ok_or_else(|| Error::param(format!("check {check:?} needs generating matrices; construct with --family")))
}

fn smallest_geometric_t(points: &PointSet) -> Result<Option<usize>> {
    let m = digits_for_count(points.len() as u64, points.base());
    if (points.base() as u64).pow(m as u32) != points.len() as u64 {
        return Err(Error::precondition(format!("{} points is not a power of {}", points.len(), points.base())));
    }
    for t in 0..=m {
        if geometric_net_check(points, t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn run_check(name: &str, built: &Built, cfg: &RunConfig) -> Result<CheckRow> {
    let weight = |w: Option<u32>| w.map_or("inf".to_string(), |v| v.to_string());
    match name {
        "t-value" => {
            let c = need_matrices(built, name)?;
            let t = compute_t_value(c);
            let bound = cfg.t.or(built.t_bound);
            Ok(CheckRow {
                check: "t-value",
                passed: bound.map_or(true, |b| t <= b),
                value: t.to_string(),
                detail: bound.map_or(String::new(), |b| format!("bound {b}")),
            })
        }
        "geometric" => {
            if let Some(c) = &built.matrices {
                let t = compute_t_value(c);
                let ok = geometric_net_check(&built.points, t)? && cfg.t.is_none_or(|b| t <= b);
                Ok(CheckRow { check: "geometric", passed: ok, value: t.to_string(), detail: "cell counts at matrix t".into() })
            } else {
                let t = smallest_geometric_t(&built.points)?;
                Ok(CheckRow {
                    check: "geometric",
                    passed: t.is_some_and(|t| cfg.t.is_none_or(|b| t <= b)),
                    value: t.map_or(String::new(), |t| t.to_string()),
                    detail: "smallest t with exact cell counts".into(),
                })
            }
        }
        "hamming" => {
            let c = need_matrices(built, name)?;
            let dual = DualSpace::new(c, cfg.cap())?;
            let w = min_dual_weight(&dual, WeightKind::Hamming, u64::MAX);
            let need = built.alpha as u32 + 1;
            Ok(CheckRow {
                check: "hamming",
                passed: w.min.map_or(true, |v| v >= need),
                value: weight(w.min),
                detail: format!("threshold {need}; dual size {}", w.dual_size),
            })
        }
        "nrt" => {
            let c = need_matrices(built, name)?;
            let (holds, t, w) = nrt_identity_holds(c, cfg.cap())?;
            Ok(CheckRow {
                check: "nrt",
                passed: holds,
                value: weight(w),
                detail: format!("m-t+1 = {}", c.m() - t + 1),
            })
        }
        "order-alpha" => {
            let c = need_matrices(built, name)?;
            let (alpha, base_t, m) =
                built.order.ok_or_else(|| Error::param("order-alpha applies to interlaced nets (dp-net)"))?;
            let dual = DualSpace::new(c, cfg.cap())?;
            let w = min_dual_weight(&dual, WeightKind::MuAlpha(alpha as u32), u64::MAX);
            let ta = t_alpha(alpha as u32, base_t as u32, c.dim() as u32);
            let target = (alpha * m) as i64 - i64::from(ta);
            Ok(CheckRow {
                check: "order-alpha",
                passed: w.min.map_or(true, |v| i64::from(v) >= target),
                value: weight(w.min),
                detail: format!("alpha*m - t_alpha = {target}"),
            })
        }
        "char" => {
            let c = need_matrices(built, name)?;
            let dual = DualSpace::new(c, cfg.cap())?;
            let points = &built.points;
            let mut worst = (char_property_sum(points, &vec![0; c.dim()])? - 1.0).norm();
            let mut failure = None;
            dual.for_each(|k| match char_property_sum(points, k) {
                Ok(v) => worst = worst.max((v - 1.0).norm()),
                Err(e) => failure = Some(e),
            });
            if let Some(e) = failure {
                return Err(e);
            }
            let limit = u64::from(c.base()).checked_pow(c.precision() as u32).unwrap_or(u64::MAX);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
            let mut drawn = 0;
            let mut attempts = 0;
            while drawn < 100 && attempts < 100_000 {
                attempts += 1;
                let k: Vec<u64> = (0..c.dim()).map(|_| rng.gen_range(0..limit)).collect();
                if !dual.contains(&k) {
                    drawn += 1;
                    worst = worst.max(char_property_sum(points, &k)?.norm());
                }
            }
            Ok(CheckRow {
                check: "char",
                passed: worst <= 1e-9,
                value: format!("{worst:e}"),
                detail: format!("{} dual + {drawn} non-dual", dual.len()),
            })
        }
        other => Err(Error::param(format!(
            "unknown check {other:?}; expected t-value, geometric, hamming, nrt, order-alpha or char"
        ))),
    }
}

fn default_checks(built: &Built) -> Vec<String> {
    let mut v: Vec<&str> = if built.matrices.is_some() { vec!["t-value", "geometric", "nrt", "char"] } else { vec!["geometric"] };
    if built.alpha > 1 && built.order.is_none() {
        v.push("hamming");
    }
    if built.order.is_some() {
        v.push("order-alpha");
    }
    v.into_iter().map(String::from).collect()
}

fn load_or_build(cfg: &RunConfig) -> Result<Built> {
    match &cfg.input {
        Some(path) => Ok(Built::from_points(pointfile::load(path)?)),
        None => build(cfg),
    }
}

fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let built = load_or_build(cfg)?;
    let checks = cfg.checks.clone().unwrap_or_else(|| default_checks(&built));
    let (family, params) = params_of(&built.points);
    let rows = checks.iter().map(|c| run_check(c, &built, cfg)).collect::<Result<Vec<_>>>()?;
    writeln!(out, "check,family,params,result,value,detail")?;
    let mut all = true;
    for r in rows {
        all &= r.passed;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.check,
            csv_safe(&family),
            csv_safe(&params),
            if r.passed { "pass" } else { "fail" },
            r.value,
            csv_safe(&r.detail)
        )?;
    }
    Ok(all)
}

fn cmd_discrepancy(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let points = load_or_build(cfg)?.points;
    writeln!(out, "{}", DiscrepancyReport::CSV_HEADER)?;
    writeln!(out, "{}", l2_exact(&points)?.csv_row())?;
    let q = cfg.q();
    if q != 2.0 {
        writeln!(out, "{}", lq_estimate(&points, q, cfg.samples(), cfg.seed())?.csv_row())?;
    }
    Ok(true)
}

const SCALING_HEADER: &str = "family,params,N,s,q,value,scaled,ratio,S_N,status";

fn norm_value(points: &PointSet, cfg: &RunConfig) -> Result<f64> {
    let q = cfg.q();
    if q == 2.0 {
        Ok(l2_exact(points)?.value)
    } else {
        Ok(lq_estimate(points, q, cfg.samples(), cfg.seed())?.value)
    }
}

fn scaling_row(points: &PointSet, q: f64, value: f64, shape: f64) -> String {
    let (family, params) = params_of(points);
    let n = points.len();
    let scaled = n as f64 * value;
    format!(
        "{},{},{},{},{},{},{},{},{},ok",
        csv_safe(&family),
        csv_safe(&params),
        n,
        points.dim(),
        q,
        value,
        scaled,
        scaled / shape,
        sum_of_digits(n as u64)
    )
}

fn failed_row(family: &str, params: String, q: f64, e: &Error) -> String {
    format!("{family},{},,,{q},,,,,{}", csv_safe(&params), csv_safe(&e.to_string()))
}

fn cmd_scaling(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let family = cfg.family()?.to_string();
    let q = cfg.q();
    writeln!(out, "{SCALING_HEADER}")?;
    match family.as_str() {
        "dp-sequence" | "niederreiter-sequence" | "van-der-corput-sequence" => {
            let fam = family.parse()?;
            let s = cfg.s.unwrap_or(1);
            let prof = sequence_profile(fam, s, cfg.n()?, q, LqOptions { samples: cfg.samples(), seed: cfg.seed() })?;
            for r in &prof.rows {
                writeln!(
                    out,
                    "{family},s={s},{},{s},{q},{},{},{},{},ok",
                    r.n,
                    r.value,
                    r.n as f64 * r.value,
                    r.ratio_digit_sum,
                    r.sum_of_digits
                )?;
            }
        }
        "davenport" => {
            let (lo, hi) = (cfg.m_min.unwrap_or(1), cfg.m()?);
            for k in lo..=hi {
                let n = 2usize << k;
                let sub = RunConfig { n: Some(n), ..cfg.clone() };
                let row = build(&sub).and_then(|b| {
                    let v = norm_value(&b.points, cfg)?;
                    Ok(scaling_row(&b.points, q, v, (n as f64).ln().sqrt()))
                });
                match row {
                    Ok(line) => writeln!(out, "{line}")?,
                    Err(e) => writeln!(out, "{}", failed_row(&family, format!("M={}", n / 2), q, &e))?,
                }
            }
        }
        "faure" | "chen-skriganov" | "niederreiter" | "dp-net" | "van-der-corput" => {
            let (lo, hi) = (cfg.m_min.unwrap_or(1), cfg.m()?);
            for m in lo..=hi {
                let sub = RunConfig { m: Some(m), ..cfg.clone() };
                let row = build(&sub).and_then(|b| {
                    let p = &b.points;
                    let v = norm_value(p, cfg)?;
                    let exponent = digits_for_count(p.len() as u64, p.base()) as f64;
                    Ok(scaling_row(p, q, v, exponent.powf((p.dim() as f64 - 1.0) / 2.0)))
                });
                match row {
                    Ok(line) => writeln!(out, "{line}")?,
                    Err(e) => writeln!(out, "{}", failed_row(&family, format!("m={m}"), q, &e))?,
                }
            }
        }
        other => return Err(Error::param(format!("family {other:?} has no scaling grid"))),
    }
    Ok(true)
}

fn cmd_selftest(out: &mut dyn Write) -> Result<bool> {
    let mut all = true;
    for c in acceptance::criteria() {
        let r = c.run();
        all &= r.passed;
        writeln!(out, "{r}")?;
        out.flush()?;
    }
    writeln!(out, "{}", if all { "all criteria passed" } else { "some criteria FAILED" })?;
    Ok(all)
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match cfg.command.unwrap_or(CommandKind::Selftest) {
        CommandKind::Construct => cmd_construct(cfg, out, err),
        CommandKind::Verify => cmd_verify(cfg, out),
        CommandKind::Discrepancy => cmd_discrepancy(cfg, out),
        CommandKind::Scaling => cmd_scaling(cfg, out),
        CommandKind::Selftest => cmd_selftest(out),
    }
}

/// Runs a fully merged configuration, writing to `--out` when set.
pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let run = || -> (Result<bool>, Vec<u8>, Vec<u8>) {
        let (mut out, mut log) = (Vec::new(), Vec::new());
        let ok = dispatch(cfg, &mut out, &mut log);
        (ok, out, log)
    };
    let (ok, out, log) = match cfg.threads {
        Some(0) => return Err(Error::param("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::param(format!("cannot start {t} worker threads: {e}")))?
            .install(run),
        None => run(),
    };
    err.write_all(&log)?;
    let ok = ok?;
    match &cfg.out {
        Some(path) => std::fs::write(path, out)?,
        None => stdout.write_all(&out)?,
    }
    Ok(ok)
}

fn resolve(cli: Cli) -> Result<RunConfig> {
    let (kind, flags) = cli.command.split();
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    Ok(file.overlay(flags.into_config(kind)))
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARAMETER } else { EXIT_OK };
        }
    };
    let result = resolve(cli).and_then(|cfg| execute(&cfg, out, err));
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(err, "verification failed");
            EXIT_VERIFICATION
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from(std::iter::once("digitnet").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_faure() {
        let (code, out, _) = run(&["construct", "--family", "faure", "--b", "5", "--m", "2", "--s", "2"]);
        assert_eq!(code, 0);
        assert_eq!(pointfile::from_str(&out).unwrap().len(), 25);
    }

    #[test]
    fn construct_cs_logs_example_matrices() {
        let (code, out, err) =
            run(&["construct", "--family", "chen-skriganov", "--b", "5", "--alpha", "2", "--m", "2", "--s", "2"]);
        assert_eq!(code, 0);
        assert_eq!(pointfile::from_str(&out).unwrap().len(), 625);
        assert!(err.contains("C_1 =\n  1 0 0 0\n  0 1 0 0\n  1 1 1 1\n  0 1 2 3\n"), "{err}");
        assert!(err.contains("C_2 =\n  1 2 4 3\n  0 1 4 2\n  1 3 4 2\n  0 1 1 2\n"), "{err}");
    }

    #[test]
    fn parameter_errors_exit_one() {
        let (code, _, err) = run(&["construct", "--family", "faure", "--b", "4", "--m", "2", "--s", "2"]);
        assert_eq!(code, EXIT_PARAMETER);
        assert!(err.contains("prime"), "{err}");
        assert_eq!(run(&["construct", "--family", "nope"]).0, EXIT_PARAMETER);
        assert_eq!(run(&["construct", "--family", "faure", "--b", "5"]).0, EXIT_PARAMETER);
        assert_eq!(run(&["bogus"]).0, EXIT_PARAMETER);
    }

    #[test]
    fn verify_rows() {
        let (code, out, _) = run(&["verify", "--family", "faure", "--b", "5", "--m", "2", "--s", "2", "--check", "t-value,char"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("\nt-value,faure,b=5 m=2 s=2,pass,0,"), "{out}");
        assert!(out.contains("\nchar,faure,b=5 m=2 s=2,pass,"), "{out}");
        let (code, out, _) = run(&[
            "verify", "--family", "chen-skriganov", "--b", "5", "--alpha", "2", "--m", "2", "--s", "2", "--check", "hamming",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("hamming,chen-skriganov,b=5 alpha=2 m=2 s=2,pass,4,"), "{out}");
    }

    #[test]
    fn capacity_exit_code() {
        let (code, _, err) =
            run(&["verify", "--family", "faure", "--b", "5", "--m", "3", "--s", "3", "--check", "nrt", "--cap", "10"]);
        assert_eq!(code, EXIT_CAPACITY, "{err}");
    }

    #[test]
    fn scaling_grid_rows() {
        let (code, out, _) = run(&["scaling", "--family", "dp-net", "--alpha", "3", "--s", "2", "--m-min", "4", "--m", "12"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().skip(1).collect();
        assert_eq!(rows.len(), 9);
        for r in rows {
            let ratio: f64 = r.split(',').nth(7).unwrap().parse().unwrap();
            assert!(ratio > 0.0);
        }
        let (_, out, _) = run(&["scaling", "--family", "van-der-corput", "--b", "2", "--m-min", "3", "--m", "3"]);
        assert_eq!(out.lines().count(), 2);
    }

    #[test]
    fn scaling_records_row_failures() {
        let (code, out, _) = run(&["scaling", "--family", "faure", "--b", "3", "--s", "5", "--m-min", "1", "--m", "2"]);
        assert_eq!(code, 0);
        assert!(out.lines().skip(1).all(|l| !l.ends_with(",ok")), "{out}");
    }

    #[test]
    fn threads_do_not_change_output() {
        let args = ["discrepancy", "--family", "dp-net", "--alpha", "2", "--m", "8", "--s", "2", "--q", "3", "--samples", "2000"];
        let one: Vec<&str> = args.iter().copied().chain(["--threads", "1"]).collect();
        let four: Vec<&str> = args.iter().copied().chain(["--threads", "4"]).collect();
        assert_eq!(run(&one).1, run(&four).1);
    }
}
