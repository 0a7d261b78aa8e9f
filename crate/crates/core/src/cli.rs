//! Command-line front end.
//!
//! Every subcommand renders its whole output into a string first and then
//! writes it to `--output` or stdout, so identical arguments give
//! byte-identical files. Tables are CSV with trailing `#` comment lines, or
//! a single JSON document.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use crate::alpha::{construct_alpha, AlphaRatio, Catalog};
use crate::elliptic::k_of_inv_sqrt2;
use crate::error::{Error, Result};
use crate::format::sci17;
use crate::profile::{build_profile, num, ExportFormat};
use crate::scan::{
    cluster_hits, fill_omegas, fit_recurrence, i_minus, i_plus, omega_limit_report,
    omega_prediction, scan_hits_with, scan_hurwitz, ClusterReport, DiophantineHit, Parallelism,
    DEFAULT_CLUSTER_RADIUS, DEFAULT_THRESHOLD,
};
use crate::spectrum::{
    bifurcation_check, branch_solution, enumerate_solutions, is_branch_index, linear_eigenvalues,
    omega_minus, omega_plus, BranchSign, Family, GraphGeometry, Solution,
};

pub const PRECISION_ENV: &str = "DB_PRECISION_BITS";

#[derive(Parser, Debug)]
#[command(
    name = "dbridge",
    version,
    about = "Standing waves on the double-bridge graph"
)]
pub struct Cli {
    /// key=value file supplying defaults for flags not given on the command line
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Isolated frequencies and branch markers for n = 1..nmax
    Spectrum(SpectrumArgs),
    /// Indices with small |ξ̃_n|, their frequencies and cluster points
    Scan(ScanArgs),
    /// Sampled profile of one standing wave on all four edges
    Profile(ProfileArgs),
    /// Ratio whose dyadic ξ̃ subsequence converges to a target
    #[command(name = "construct-alpha")]
    ConstructAlpha(ConstructArgs),
    /// Eigenvalues of the linear problem and the small-amplitude check
    Linear(LinearArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// p/q, quad:a,b,c,m for (a+b√m)/c, a decimal, or a catalog name
    #[arg(long)]
    pub alpha: String,
    /// Total ring length L
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Fixed-point bits for irrational ratios (env DB_PRECISION_BITS)
    #[arg(long = "precision-bits")]
    pub precision_bits: Option<u32>,
    /// Extra catalog entries, one `name rational p q` or `name quad a b c m` per line
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 10)]
    pub nmax: u64,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1_000_000)]
    pub nmax: u64,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    /// Worker threads; default uses every core
    #[arg(long)]
    pub threads: Option<usize>,
    /// Digits after the point for ξ̃ (0 prints 17 significant digits)
    #[arg(long, default_value_t = 0)]
    pub digits: u32,
    #[arg(long, default_value_t = DEFAULT_CLUSTER_RADIUS)]
    pub radius: f64,
    /// Also list the n with n ξ_n < 2/√5 (JSON only)
    #[arg(long)]
    pub hurwitz: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: u64,
    /// Samples per edge
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    /// Use the continuous branch at a degenerate index
    #[arg(long)]
    pub branch: bool,
    /// Frequency on the branch
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Sign of the branch shift ±γ
    #[arg(long, value_enum, default_value_t = FamilyArg::Plus)]
    pub sign: FamilyArg,
    /// Include Kirchhoff and ODE residuals
    #[arg(long)]
    pub validate: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Plus,
    Minus,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Plus => Family::Plus,
            FamilyArg::Minus => Family::Minus,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(long)]
    pub ell: f64,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    /// Report the frequency limit implied by ℓ
    #[arg(long)]
    pub omega0: bool,
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct LinearArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 10)]
    pub nmax: u64,
    /// Compare the cnoidal amplitude at ω = λ_n - ε with √(4ε/3)
    #[arg(long)]
    pub bifurcate: bool,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub eps: f64,
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => 2,
        Error::Io(_) => 3,
        _ => 1,
    }
}

/// Parse `args` (program name first), run, and return the exit code.
/// Diagnostics go to stderr as a single line.
pub fn main_with(args: Vec<OsString>, env_precision: Option<String>) -> i32 {
    let outcome = expand_config(args, env_precision.is_some()).and_then(|args| {
        match Cli::try_parse_from(args) {
            Ok(cli) => run(&cli, env_precision.as_deref()),
            Err(e) if !e.use_stderr() => {
                let _ = e.print();
                Ok(())
            }
            Err(e) => {
                let text = e.to_string();
                let line = text
                    .lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ");
                Err(Error::Parse(line.to_string()))
            }
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("dbridge: {e}");
            exit_code(&e)
        }
    }
}

/// Inject `--key=value` from the `--config` file for every key the chosen
/// subcommand accepts and the command line does not already set.
fn expand_config(mut args: Vec<OsString>, env_has_precision: bool) -> Result<Vec<OsString>> {
    let strs: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut path = None;
    for (i, a) in strs.iter().enumerate() {
        if a == "--config" {
            path = strs.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path)?;
    let Some(sub) = strs.iter().skip(1).find(|a| {
        ["spectrum", "scan", "profile", "construct-alpha", "linear"].contains(&a.as_str())
    }) else {
        return Ok(args);
    };
    let cmd = Cli::command();
    let sub_cmd = cmd.find_subcommand(sub).expect("known subcommand");
    let all_longs: Vec<String> = cmd
        .get_subcommands()
        .flat_map(|s| {
            s.get_arguments()
                .filter_map(|a| a.get_long().map(str::to_string))
                .collect::<Vec<_>>()
        })
        .collect();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::Parse(format!("{path}:{}: expected key=value", lineno + 1)))?;
        if !all_longs.iter().any(|l| l == key) {
            return Err(Error::Parse(format!(
                "{path}:{}: unknown key '{key}'",
                lineno + 1
            )));
        }
        let Some(arg) = sub_cmd.get_arguments().find(|a| a.get_long() == Some(key)) else {
            continue;
        };
        let flag = format!("--{key}");
        if strs
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
        {
            continue;
        }
        if key == "precision-bits" && env_has_precision {
            continue;
        }
        if arg.get_action().takes_values() {
            args.push(format!("{flag}={value}").into());
        } else {
            match value {
                "true" => args.push(flag.into()),
                "false" => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "{path}:{}: '{key}' expects true or false",
                        lineno + 1
                    )))
                }
            }
        }
    }
    Ok(args)
}

pub fn run(cli: &Cli, env_precision: Option<&str>) -> Result<()> {
    let (text, output) = match &cli.command {
        Command::Spectrum(a) => (cmd_spectrum(a, env_precision)?, &a.common.output),
        Command::Scan(a) => (cmd_scan(a, env_precision)?, &a.common.output),
        Command::Profile(a) => (cmd_profile(a, env_precision)?, &a.common.output),
        Command::ConstructAlpha(a) => (cmd_construct_alpha(a)?, &a.output),
        Command::Linear(a) => (cmd_linear(a, env_precision)?, &a.common.output),
    };
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn resolve_alpha(c: &Common, env_precision: Option<&str>) -> Result<(AlphaRatio, GraphGeometry)> {
    let mut catalog = Catalog::default();
    if let Some(path) = &c.catalog {
        catalog.merge(Catalog::parse(&std::fs::read_to_string(path)?)?);
    }
    let mut alpha = catalog.resolve(&c.alpha)?;
    let bits = match (c.precision_bits, env_precision) {
        (Some(b), _) => Some(b),
        (None, Some(s)) => Some(
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("{PRECISION_ENV}='{s}' is not an integer")))?,
        ),
        (None, None) => None,
    };
    if let Some(b) = bits {
        alpha = alpha.with_precision(b)?;
    }
    let geom = GraphGeometry::from_ratio(&alpha, c.length)?;
    Ok((alpha, geom))
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn opt_text(x: Option<f64>) -> String {
    x.map(sci17).unwrap_or_default()
}

fn json_text(root: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    s.push('\n');
    s
}

fn header(alpha: &AlphaRatio, geom: &GraphGeometry) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("alpha".into(), Value::String(alpha.to_string()));
    m.insert("L".into(), num(geom.length()));
    m
}

pub fn cmd_spectrum(a: &SpectrumArgs, env_precision: Option<&str>) -> Result<String> {
    let (alpha, geom) = resolve_alpha(&a.common, env_precision)?;
    let sols = enumerate_solutions(&geom, &alpha, a.nmax)?;
    let isolated = sols
        .iter()
        .filter(|s| matches!(s, Solution::Isolated(_)))
        .count();
    let branches = |f| {
        sols.iter()
            .filter(|s| matches!(s, Solution::Branch(b) if b.family == f))
            .count()
    };
    let (bp, bm) = (branches(Family::Plus), branches(Family::Minus));
    Ok(match a.common.format {
        Format::Csv => {
            let mut out = String::from("family,n,omega,k,shift,branch\n");
            for s in &sols {
                match s {
                    Solution::Isolated(w) => {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},false",
                            w.family,
                            w.n,
                            sci17(w.omega),
                            sci17(w.k()),
                            sci17(w.shift)
                        );
                    }
                    Solution::Branch(b) => {
                        let _ = writeln!(out, "{},{},,,,true", b.family, b.n);
                    }
                }
            }
            let _ = writeln!(
                out,
                "# isolated={isolated} branch_plus={bp} branch_minus={bm}"
            );
            out
        }
        Format::Json => {
            let mut root = header(&alpha, &geom);
            root.insert("nmax".into(), Value::from(a.nmax));
            let rows = sols
                .iter()
                .map(|s| {
                    let mut m = Map::new();
                    m.insert("family".into(), Value::String(s.family().to_string()));
                    m.insert("n".into(), Value::from(s.n()));
                    match s {
                        Solution::Isolated(w) => {
                            m.insert("branch".into(), Value::Bool(false));
                            m.insert("omega".into(), num(w.omega));
                            m.insert("k".into(), num(w.k()));
                            m.insert("shift".into(), num(w.shift));
                        }
                        Solution::Branch(_) => {
                            m.insert("branch".into(), Value::Bool(true));
                        }
                    }
                    Value::Object(m)
                })
                .collect();
            root.insert("solutions".into(), Value::Array(rows));
            let mut summary = Map::new();
            summary.insert("isolated".into(), Value::from(isolated));
            summary.insert("branch_plus".into(), Value::from(bp));
            summary.insert("branch_minus".into(), Value::from(bm));
            root.insert("summary".into(), Value::Object(summary));
            json_text(root)
        }
    })
}

fn xi_text(h: &DiophantineHit, digits: u32) -> String {
    if digits == 0 {
        sci17(h.xi_tilde)
    } else {
        h.seq.xi_tilde_decimal(digits)
    }
}

fn cluster_json(rep: &ClusterReport) -> Value {
    let arr = rep
        .clusters
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("center".into(), num(c.center));
            m.insert("latest".into(), num(c.latest));
            m.insert("spread".into(), num(c.spread));
            m.insert("converged".into(), Value::Bool(c.converged));
            m.insert("members".into(), Value::from(c.members.clone()));
            m.insert(
                "recurrence".into(),
                c.recurrence
                    .map_or(Value::Null, |(a, b)| Value::from(vec![a, b])),
            );
            Value::Object(m)
        })
        .collect();
    Value::Array(arr)
}

pub fn cmd_scan(a: &ScanArgs, env_precision: Option<&str>) -> Result<String> {
    let (alpha, geom) = resolve_alpha(&a.common, env_precision)?;
    let par = a.threads.map_or(Parallelism::Global, Parallelism::Threads);
    let mut hits = scan_hits_with(&alpha, a.nmax, a.threshold, par)?;
    fill_omegas(&geom, &alpha, &mut hits)?;
    let length = geom.length();
    let (ip, im) = (i_plus(length), i_minus(length));
    let inside = |w: Option<f64>, (lo, hi): (f64, f64)| w.is_some_and(|w| (lo..=hi).contains(&w));
    let report = cluster_hits(&hits, a.radius);
    let indices: Vec<u64> = hits.iter().map(|h| h.n).collect();
    let recurrence = fit_recurrence(&indices);
    Ok(match a.common.format {
        Format::Csv => {
            let mut out = String::from("n,xi_tilde,omega_plus,omega_minus,in_I_plus,in_I_minus\n");
            for h in &hits {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    h.n,
                    xi_text(h, a.digits),
                    opt_text(h.omega_plus),
                    opt_text(h.omega_minus),
                    inside(h.omega_plus, ip),
                    inside(h.omega_minus, im)
                );
            }
            let _ = writeln!(
                out,
                "# hits={} clusters={} converged={}",
                hits.len(),
                report.clusters.len(),
                report.converged
            );
            for c in &report.clusters {
                let _ = writeln!(
                    out,
                    "# cluster center={} latest={} spread={} members={}",
                    sci17(c.center),
                    sci17(c.latest),
                    sci17(c.spread),
                    c.members.len()
                );
            }
            out
        }
        Format::Json => {
            let mut root = header(&alpha, &geom);
            root.insert("nmax".into(), Value::from(a.nmax));
            root.insert("threshold".into(), num(a.threshold));
            root.insert("precision_bits".into(), Value::from(alpha.precision_bits()));
            let rows = hits
                .iter()
                .map(|h| {
                    let mut m = Map::new();
                    m.insert("n".into(), Value::from(h.n));
                    let xi = xi_text(h, a.digits)
                        .parse::<Number>()
                        .expect("decimal text");
                    m.insert("xi_tilde".into(), Value::Number(xi));
                    m.insert("omega_plus".into(), opt_num(h.omega_plus));
                    m.insert("omega_minus".into(), opt_num(h.omega_minus));
                    m.insert("in_I_plus".into(), Value::Bool(inside(h.omega_plus, ip)));
                    m.insert("in_I_minus".into(), Value::Bool(inside(h.omega_minus, im)));
                    Value::Object(m)
                })
                .collect();
            root.insert("hits".into(), Value::Array(rows));
            root.insert("clusters".into(), cluster_json(&report));
            root.insert("converged".into(), Value::Bool(report.converged));
            root.insert("transients".into(), Value::from(report.transients.clone()));
            root.insert(
                "recurrence".into(),
                recurrence.map_or(Value::Null, |(x, y)| Value::from(vec![x, y])),
            );
            let limit = omega_limit_report(&geom, &alpha, &hits)?
                .into_iter()
                .map(|r| {
                    let mut m = Map::new();
                    m.insert("n".into(), Value::from(r.n));
                    m.insert("omega_plus".into(), num(r.omega_plus));
                    m.insert("prediction".into(), num(r.prediction));
                    m.insert("ratio".into(), num(r.ratio));
                    Value::Object(m)
                })
                .collect();
            root.insert("omega_limit".into(), Value::Array(limit));
            let mut intervals = Map::new();
            intervals.insert("I_plus".into(), Value::from(vec![num(ip.0), num(ip.1)]));
            intervals.insert("I_minus".into(), Value::from(vec![num(im.0), num(im.1)]));
            root.insert("intervals".into(), Value::Object(intervals));
            if a.hurwitz {
                let mut hz = scan_hurwitz(&alpha, a.nmax, par)?;
                fill_omegas(&geom, &alpha, &mut hz)?;
                let rows = hz
                    .iter()
                    .map(|h| {
                        let mut m = Map::new();
                        m.insert("n".into(), Value::from(h.n));
                        m.insert("n_xi".into(), num(h.n as f64 * h.seq.xi));
                        m.insert("omega_minus".into(), opt_num(h.omega_minus));
                        m.insert("in_I_minus".into(), Value::Bool(inside(h.omega_minus, im)));
                        Value::Object(m)
                    })
                    .collect();
                root.insert("hurwitz".into(), Value::Array(rows));
            }
            json_text(root)
        }
    })
}

pub fn cmd_profile(a: &ProfileArgs, env_precision: Option<&str>) -> Result<String> {
    let (alpha, geom) = resolve_alpha(&a.common, env_precision)?;
    let wave = if a.branch {
        let omega = a
            .omega
            .ok_or_else(|| Error::Parse("--branch needs --omega".into()))?;
        let family = match a.family {
            Some(f) => f.into(),
            None if is_branch_index(&alpha, Family::Plus, a.n) => Family::Plus,
            None => Family::Minus,
        };
        let sign = match a.sign {
            FamilyArg::Plus => BranchSign::Plus,
            FamilyArg::Minus => BranchSign::Minus,
        };
        branch_solution(&geom, &alpha, family, a.n, omega, sign)?
    } else {
        let family = a.family.map_or(Family::Plus, Family::from);
        let found = match family {
            Family::Plus => omega_plus(&geom, &alpha, a.n)?,
            Family::Minus => omega_minus(&geom, &alpha, a.n)?,
        };
        found.ok_or_else(|| {
            Error::Domain(format!(
                "no isolated {family}-family solution at n = {} for α = {alpha}; try --branch",
                a.n
            ))
        })?
    };
    let profile = build_profile(&wave, &geom)?;
    let validation = a.validate.then(|| profile.validate(a.grid));
    Ok(match a.common.format {
        Format::Csv => {
            let mut out = profile.export(a.grid, ExportFormat::Csv, None);
            if let Some(v) = validation {
                let _ = writeln!(
                    out,
                    "# kirchhoff_cont={} kirchhoff_deriv={} ode_residual={}",
                    sci17(v.kirchhoff_cont),
                    sci17(v.kirchhoff_deriv),
                    sci17(v.ode_residual)
                );
            }
            out
        }
        Format::Json => profile.export(a.grid, ExportFormat::Json, validation.as_ref()),
    })
}

pub fn cmd_construct_alpha(a: &ConstructArgs) -> Result<String> {
    let (alpha, starts) = construct_alpha(a.ell, a.depth)?;
    let crate::alpha::AlphaKind::Constructed(c) = alpha.kind() else {
        unreachable!("construct_alpha returns a constructed ratio")
    };
    let bits: String = (1..=64)
        .map(|i| c.bit(i).map(|b| if b { '1' } else { '0' }))
        .collect::<Result<_>>()?;
    let omega0 = omega_prediction(a.ell, a.length);
    let mut rows = Vec::with_capacity(starts.len());
    for (j, &start) in starts.iter().enumerate() {
        let j = j + 1;
        rows.push((
            j,
            start,
            c.xi_tilde_block_decimal(j, a.digits)?,
            c.xi_tilde_gap(j)?,
        ));
    }
    Ok(match a.format {
        Format::Csv => {
            let mut out = String::from("j,n_j,xi_tilde,gap\n");
            for (j, start, xi, gap) in &rows {
                let _ = writeln!(out, "{j},{start},{xi},{}", sci17(*gap));
            }
            let _ = writeln!(
                out,
                "# ell={} alpha={} bits=0.{bits}",
                sci17(a.ell),
                sci17(alpha.value())
            );
            if a.omega0 {
                let _ = writeln!(out, "# omega0={} L={}", sci17(omega0), sci17(a.length));
            }
            out
        }
        Format::Json => {
            let mut root = Map::new();
            root.insert("ell".into(), num(a.ell));
            root.insert("alpha".into(), num(alpha.value()));
            root.insert("bits".into(), Value::String(format!("0.{bits}")));
            let arr = rows
                .iter()
                .map(|(j, start, xi, gap)| {
                    let mut m = Map::new();
                    m.insert("j".into(), Value::from(*j));
                    m.insert("n_j".into(), Value::from(*start));
                    m.insert(
                        "xi_tilde".into(),
                        Value::Number(xi.parse().expect("decimal text")),
                    );
                    m.insert("gap".into(), num(*gap));
                    Value::Object(m)
                })
                .collect();
            root.insert("blocks".into(), Value::Array(arr));
            if a.omega0 {
                root.insert("L".into(), num(a.length));
                root.insert("omega0".into(), num(omega0));
                let k = k_of_inv_sqrt2();
                root.insert(
                    "in_I_plus".into(),
                    Value::Bool(omega0 >= -k.powi(4) / (a.length * a.length)),
                );
            }
            json_text(root)
        }
    })
}

pub fn cmd_linear(a: &LinearArgs, env_precision: Option<&str>) -> Result<String> {
    let (alpha, geom) = resolve_alpha(&a.common, env_precision)?;
    if a.bifurcate {
        let b = bifurcation_check(&geom, &alpha, a.n, a.eps)?;
        let ratio = b.amplitude / b.predicted;
        let k_pred = (2.0 * a.eps / (3.0 * b.lambda)).sqrt();
        return Ok(match a.common.format {
            Format::Csv => format!(
                "n,lambda,omega,amplitude,predicted,ratio,k,k_predicted,k_ratio\n{},{},{},{},{},{},{},{},{}\n",
                a.n,
                sci17(b.lambda),
                sci17(b.omega),
                sci17(b.amplitude),
                sci17(b.predicted),
                sci17(ratio),
                sci17(b.k_n),
                sci17(k_pred),
                sci17(b.k_n / k_pred)
            ),
            Format::Json => {
                let mut root = header(&alpha, &geom);
                root.insert("n".into(), Value::from(a.n));
                root.insert("eps".into(), num(a.eps));
                for (key, v) in [
                    ("lambda", b.lambda),
                    ("omega", b.omega),
                    ("amplitude", b.amplitude),
                    ("predicted", b.predicted),
                    ("ratio", ratio),
                    ("k", b.k_n),
                    ("k_predicted", k_pred),
                    ("k_ratio", b.k_n / k_pred),
                ] {
                    root.insert(key.into(), num(v));
                }
                json_text(root)
            }
        });
    }
    let eig = linear_eigenvalues(&geom, &alpha, a.nmax);
    Ok(match a.common.format {
        Format::Csv => {
            let mut out = String::from("n,q0,lambda\n");
            for e in &eig {
                let _ = writeln!(out, "{},{},{}", e.n, e.q0, sci17(e.lambda));
            }
            if eig.is_empty() {
                out.push_str("# no eigenvalues\n");
            }
            out
        }
        Format::Json => {
            let mut root = header(&alpha, &geom);
            let arr = eig
                .iter()
                .map(|e| {
                    let mut m = Map::new();
                    m.insert("n".into(), Value::from(e.n));
                    m.insert("q0".into(), Value::from(e.q0));
                    m.insert("lambda".into(), num(e.lambda));
                    Value::Object(m)
                })
                .collect();
            root.insert("eigenvalues".into(), Value::Array(arr));
            if eig.is_empty() {
                root.insert("note".into(), Value::String("no eigenvalues".into()));
            }
            json_text(root)
        }
    })
}
