//! Flags, `key = value` config files and their validation.

use crate::error::{CliError, CliResult};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "hmfk", version, about = "Exact Hilbert modular forms, brackets, kernels and L-value grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Ring of integers, units and the narrow class number certificate.
    FieldInfo,
    /// Normalized Eisenstein series of weight --k.
    Eisenstein,
    /// Rankin-Cohen bracket [E_k1, E_k2]_nu.
    Bracket,
    /// Spanning set and echelon basis of the cusp forms of weight --k.
    CuspBasis,
    /// Normalized Hecke eigenforms of weight --k.
    Eigenforms,
    /// Critical-value grid with functional equation, rank-one and rationality checks.
    Lgrid,
    /// Run one verification suite; exits 4 on failure.
    Verify {
        #[arg(value_enum)]
        name: Suite,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lipschitz,
    CohenModularity,
    RcNumeric,
    Funceq,
    Rank1,
    Rationality,
    Hecke,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Fundamental discriminant.
    #[arg(long = "D", global = true)]
    pub d: Option<i64>,
    /// Parallel weight.
    #[arg(long, global = true)]
    pub k: Option<i64>,
    #[arg(long, global = true)]
    pub k1: Option<i64>,
    #[arg(long, global = true)]
    pub k2: Option<i64>,
    #[arg(long, global = true)]
    pub nu: Option<i64>,
    /// Trace bound of Fourier expansions (also the xi bound of `verify lipschitz`).
    #[arg(long = "N", global = true)]
    pub n: Option<i64>,
    /// Height bound of coset sums (lattice box for `verify lipschitz`).
    #[arg(long = "B", alias = "height-bound", global = true)]
    pub b: Option<f64>,
    /// Starting working precision in bits for exact zeta reconstruction.
    #[arg(long, global = true)]
    pub prec: Option<u32>,
    /// Point of H^2 as "x1,y1,x2,y2".
    #[arg(long, global = true)]
    pub z: Option<String>,
    #[arg(long, global = true)]
    pub s: Option<f64>,
    #[arg(long, global = true)]
    pub w: Option<f64>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// CSV export of c_f values (lgrid).
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Print JSON on stdout instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Validated parameters of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub d: i64,
    pub k: Option<i64>,
    pub k1: Option<i64>,
    pub k2: Option<i64>,
    pub nu: Option<i64>,
    pub n: Option<i64>,
    pub b: Option<f64>,
    pub prec: u32,
    pub z: Option<(Complex64, Complex64)>,
    pub s: Option<f64>,
    pub w: Option<f64>,
    pub cache_dir: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub json: bool,
}

pub const DEFAULT_PREC: u32 = 256;
const MAX_WEIGHT: i64 = 30;
const MAX_TRACE: i64 = 80;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config_file(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("line {}: expected key = value", no + 1)))?;
        let key = k.trim().replace('_', "-");
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(bad(format!("line {}: duplicate key {key}", no + 1)));
        }
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| bad(format!("{key}: cannot parse {v:?}")))
}

pub fn parse_point(v: &str) -> CliResult<(Complex64, Complex64)> {
    let xs: Vec<f64> = v.split(',').map(|t| parse_num("z", t.trim())).collect::<CliResult<_>>()?;
    if xs.len() != 4 {
        return Err(bad(format!("z: expected x1,y1,x2,y2, got {v:?}")));
    }
    if xs[1] <= 0.0 || xs[3] <= 0.0 {
        return Err(bad("z: imaginary parts must be positive"));
    }
    Ok((Complex64::new(xs[0], xs[1]), Complex64::new(xs[2], xs[3])))
}

impl Opts {
    /// Fills unset flags from the config file.
    fn merge_file(&mut self, file: &BTreeMap<String, String>) -> CliResult<()> {
        for (key, v) in file {
            match key.as_str() {
                "D" => self.d = self.d.or(Some(parse_num(key, v)?)),
                "k" => self.k = self.k.or(Some(parse_num(key, v)?)),
                "k1" => self.k1 = self.k1.or(Some(parse_num(key, v)?)),
                "k2" => self.k2 = self.k2.or(Some(parse_num(key, v)?)),
                "nu" => self.nu = self.nu.or(Some(parse_num(key, v)?)),
                "N" => self.n = self.n.or(Some(parse_num(key, v)?)),
                "B" | "height-bound" => self.b = self.b.or(Some(parse_num(key, v)?)),
                "prec" => self.prec = self.prec.or(Some(parse_num(key, v)?)),
                "z" => self.z = self.z.clone().or(Some(v.clone())),
                "s" => self.s = self.s.or(Some(parse_num(key, v)?)),
                "w" => self.w = self.w.or(Some(parse_num(key, v)?)),
                "cache-dir" => self.cache_dir = self.cache_dir.clone().or(Some(v.into())),
                "report" => self.report = self.report.clone().or(Some(v.into())),
                "csv" => self.csv = self.csv.clone().or(Some(v.into())),
                other => return Err(bad(format!("unknown config key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn resolve(mut self) -> CliResult<RunConfig> {
        if let Some(p) = self.config.clone() {
            self.merge_file(&parse_config_file(&p)?)?;
        }
        let d = self.d.ok_or_else(|| bad("--D is required"))?;
        for (name, v) in [("k", self.k), ("k1", self.k1), ("k2", self.k2)] {
            if let Some(v) = v {
                if v < 2 || v % 2 != 0 || v > MAX_WEIGHT {
                    return Err(bad(format!("--{name} must be even in [2, {MAX_WEIGHT}], got {v}")));
                }
            }
        }
        if let Some(nu) = self.nu {
            if !(0..=MAX_WEIGHT / 2).contains(&nu) {
                return Err(bad(format!("--nu out of range: {nu}")));
            }
        }
        if let Some(n) = self.n {
            if !(1..=MAX_TRACE).contains(&n) {
                return Err(bad(format!("--N must lie in [1, {MAX_TRACE}], got {n}")));
            }
        }
        if let Some(b) = self.b {
            if !(b.is_finite() && b > 0.0) {
                return Err(bad(format!("--B must be positive, got {b}")));
            }
        }
        let prec = self.prec.unwrap_or(DEFAULT_PREC);
        if !(64..=1 << 16).contains(&prec) {
            return Err(bad(format!("--prec must lie in [64, 65536], got {prec}")));
        }
        let z = self.z.as_deref().map(parse_point).transpose()?;
        Ok(RunConfig {
            d,
            k: self.k,
            k1: self.k1,
            k2: self.k2,
            nu: self.nu,
            n: self.n,
            b: self.b,
            prec,
            z,
            s: self.s,
            w: self.w,
            cache_dir: self.cache_dir,
            report: self.report,
            csv: self.csv,
            json: self.json,
        })
    }
}

impl RunConfig {
    pub fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
        v.ok_or_else(|| bad(format!("--{flag} is required for this command")))
    }

    pub fn weight(&self) -> CliResult<i64> {
        Self::need(self.k, "k")
    }

    pub fn trace_bound(&self, default: i64) -> i64 {
        self.n.unwrap_or(default)
    }
}
