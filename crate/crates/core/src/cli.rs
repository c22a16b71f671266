//! Command-line front end. [`run`] executes one [`RunConfig`] and writes exactly one
//! document; [`main_with_args`] adds argument parsing and exit-status mapping.
//!
//! Exit status: 0 success, 1 domain error (bad `n`, disconnected graph, cap
//! exceeded), 2 internal-consistency failure (two routes disagree), 64 usage error.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cayley::make_hypercube_with;
use crate::polynomial::{closed_form_f_with, closed_form_g_with, recursion_f_with};
use crate::spectrum::{
    closed_form_spectrum, compare_clusters, numeric_hypercube_clusters, DEFAULT_CLUSTER_GAP, DEFAULT_JACOBI_TOL,
};
use crate::trees::tree_report;
use crate::verify::{verify_suite_with, CLUSTER_VALUE_TOL};
use crate::walks::{
    asymptotic_ratio, eigentime_closed_form, eigentime_from_mfpt_with, eigentime_spectral, simulate_eigentime,
    slt_decomposition, WalkReport, DEFAULT_SEED,
};
use crate::{format_rational, Error, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CONSISTENCY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Default Monte Carlo trial count for `simulate`.
pub const DEFAULT_TRIALS: u64 = 100_000;

/// The `spectrum` command cross-checks against Jacobi up to this dimension.
const SPECTRUM_NUMERIC_CHECK_MAX: u32 = 8;
/// The `eigentime` command cross-checks against exact MFPT up to this dimension.
const EIGENTIME_MFPT_CHECK_MAX: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Spectrum,
    Polynomial,
    Eigentime,
    Trees,
    Simulate,
    Verify,
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Edgelist,
    Dot,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "cubespec", about = "Spectra, eigentime identities and spanning trees of hypercubes")]
pub struct Args {
    /// What to compute.
    #[arg(value_enum)]
    pub command: Command,
    /// Hypercube dimension (`verify`: largest dimension checked).
    #[arg(long)]
    pub n: u32,
    /// Output format; `export` takes edgelist or dot.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Monte Carlo seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo trial count.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Clustering gap for numeric eigenvalues.
    #[arg(long)]
    pub gap: Option<f64>,
    /// Jacobi off-diagonal tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the document to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: u32,
    pub format: Format,
    pub seed: u64,
    pub trials: Option<u64>,
    pub gap: f64,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub limits: Limits,
}

impl RunConfig {
    pub fn new(command: Command, n: u32) -> Self {
        RunConfig {
            command,
            n,
            format: if command == Command::Export { Format::Edgelist } else { Format::Text },
            seed: DEFAULT_SEED,
            trials: None,
            gap: DEFAULT_CLUSTER_GAP,
            tol: DEFAULT_JACOBI_TOL,
            out: None,
            limits: Limits::default(),
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn from_args(args: Args, limits: Limits) -> std::result::Result<Self, String> {
        let mut cfg = RunConfig::new(args.command, args.n);
        if let Some(f) = args.format {
            cfg.format = f;
        }
        let export = args.command == Command::Export;
        let graph_format = matches!(cfg.format, Format::Edgelist | Format::Dot);
        if export != graph_format {
            return Err(if export {
                "export takes --format edgelist or --format dot".into()
            } else {
                "--format edgelist/dot is only valid for export".into()
            });
        }
        cfg.seed = args.seed.unwrap_or(DEFAULT_SEED);
        cfg.trials = args.trials;
        if cfg.trials == Some(0) {
            return Err("--trials must be at least 1".into());
        }
        if let Some(g) = args.gap {
            if g.is_nan() || g <= 0.0 {
                return Err("--gap must be positive".into());
            }
            cfg.gap = g;
        }
        if let Some(t) = args.tol {
            if t.is_nan() || t <= 0.0 {
                return Err("--tol must be positive".into());
            }
            cfg.tol = t;
        }
        cfg.out = args.out;
        cfg.limits = limits;
        Ok(cfg)
    }
}

/// Parses `argv` (including the program name), runs, and returns the exit status.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let status = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if status == EXIT_OK {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return status;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let config = match RunConfig::from_args(args, limits) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match run(&config, stdout) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_status(&e)
        }
    }
}

pub fn exit_status(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_CONSISTENCY,
        _ => EXIT_DOMAIN,
    }
}

/// Executes `config`, writing one document to `sink` (or to `config.out`).
///
/// Returns the exit status for documents that report a failure as data (`verify`);
/// errors map through [`exit_status`].
pub fn run(config: &RunConfig, sink: &mut dyn Write) -> crate::Result<i32> {
    let (document, status) = render(config)?;
    let written = match &config.out {
        Some(path) => std::fs::write(path, document.as_bytes()),
        None => sink.write_all(document.as_bytes()).and_then(|()| sink.flush()),
    };
    written.map_err(|e| io_error(&e))?;
    Ok(status)
}

fn io_error(e: &io::Error) -> Error {
    Error::InvalidArgument(format!("cannot write output: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn render(config: &RunConfig) -> crate::Result<(String, i32)> {
    let n = config.n;
    let limits = &config.limits;
    match config.command {
        Command::Spectrum => {
            let table = closed_form_spectrum(n)?;
            let numeric_checked = n <= SPECTRUM_NUMERIC_CHECK_MAX.min(limits.dense_float);
            if numeric_checked {
                let clusters = numeric_hypercube_clusters(n, config.tol, config.gap, limits)?;
                compare_clusters(&clusters, &table, CLUSTER_VALUE_TOL).map_err(Error::Consistency)?;
            }
            let doc = match config.format {
                Format::Csv => table.to_csv(),
                Format::Json => to_json(&json!({
                    "n": n,
                    "spectrum": table.to_json_entries(),
                    "numeric_check": numeric_checked,
                })),
                _ => {
                    let mut s = format!("normalized Laplacian spectrum of the {n}-cube\n");
                    for (v, m) in table.entries() {
                        let _ = writeln!(s, "{:>12}  x{}", format_rational(v), m);
                    }
                    s
                }
            };
            Ok((doc, EXIT_OK))
        }
        Command::Polynomial => {
            let rec = recursion_f_with(n, limits)?;
            let closed = closed_form_f_with(n, limits)?;
            if rec != closed {
                return Err(Error::Consistency(format!("recursion and closed form differ for f_{n}")));
            }
            let g = closed_form_g_with(n, limits)?;
            let doc = match config.format {
                Format::Json => to_json(&json!({ "n": n, "f": closed, "g": g, "routes_agree": true })),
                Format::Csv => {
                    let mut s = String::from("power,f,g\n");
                    for (i, (f, gc)) in closed.coefficients().iter().zip(g.coefficients()).enumerate() {
                        let _ = writeln!(s, "{i},{},{}", format_rational(f), format_rational(gc));
                    }
                    s
                }
                _ => format!("f_{n}(λ) = {closed}\ng_{n}(λ) = {g}\n"),
            };
            Ok((doc, EXIT_OK))
        }
        Command::Eigentime => {
            let h = eigentime_closed_form(n)?;
            let spectral = eigentime_spectral(&closed_form_spectrum(n)?)?;
            if h != spectral {
                return Err(Error::Consistency(format!("closed form and spectral eigentime differ for n={n}")));
            }
            if n <= EIGENTIME_MFPT_CHECK_MAX.min(limits.mfpt) {
                let g = make_hypercube_with(n, limits)?;
                if eigentime_from_mfpt_with(&g, limits)? != h {
                    return Err(Error::Consistency(format!("MFPT eigentime differs for n={n}")));
                }
            }
            let slt = slt_decomposition(n)?;
            let ratio = asymptotic_ratio(n)?;
            let mc = match config.trials {
                Some(trials) => Some(simulate_eigentime(&make_hypercube_with(n, limits)?, trials, config.seed)?),
                None => None,
            };
            let doc = match config.format {
                Format::Json => to_json(&json!({
                    "n": n,
                    "eigentime": format_rational(&h),
                    "ratio_to_2n": format_rational(&ratio),
                    "S": format_rational(&slt.s),
                    "L": format_rational(&slt.l),
                    "T": format_rational(&slt.t),
                    "mc": mc.as_ref().map(mc_json),
                })),
                Format::Csv => {
                    let mut s = String::from("n,eigentime,ratio_to_2n,S,L,T,mc_estimate,mc_stderr,mc_trials,mc_seed\n");
                    let mc_cols = match &mc {
                        Some(r) => format!("{},{},{},{}", r.estimate, r.standard_error, r.trials, r.seed),
                        None => ",,,".into(),
                    };
                    let _ = writeln!(
                        s,
                        "{n},{},{},{},{},{},{mc_cols}",
                        format_rational(&h),
                        format_rational(&ratio),
                        format_rational(&slt.s),
                        format_rational(&slt.l),
                        format_rational(&slt.t)
                    );
                    s
                }
                _ => {
                    let mut s = format!(
                        "eigentime H = {}\nH / 2^n    = {}\nS = {}\nL = {}\nT = {}\n",
                        format_rational(&h),
                        format_rational(&ratio),
                        format_rational(&slt.s),
                        format_rational(&slt.l),
                        format_rational(&slt.t)
                    );
                    if let Some(r) = &mc {
                        let _ = writeln!(
                            s,
                            "monte carlo = {} ± {} ({} trials, seed {})",
                            r.estimate, r.standard_error, r.trials, r.seed
                        );
                    }
                    s
                }
            };
            Ok((doc, EXIT_OK))
        }
        Command::Trees => {
            let report = tree_report(n, limits)?;
            if !report.routes_agree {
                return Err(Error::Consistency(format!("spanning-tree routes disagree for n={n}")));
            }
            let doc = match config.format {
                Format::Json => to_json(&report),
                Format::Csv => format!(
                    "n,spanning_trees,digits,routes_agree\n{},{},{},{}\n",
                    report.n, report.spanning_trees, report.digits, report.routes_agree
                ),
                _ => format!("spanning trees of the {n}-cube ({} digits):\n{}\n", report.digits, report.spanning_trees),
            };
            Ok((doc, EXIT_OK))
        }
        Command::Simulate => {
            let g = make_hypercube_with(n, limits)?;
            let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
            let report = simulate_eigentime(&g, trials, config.seed)?;
            let exact = eigentime_closed_form(n)?;
            let doc = match config.format {
                Format::Json => {
                    let mut v = mc_json(&report);
                    v["n"] = json!(n);
                    v["exact"] = json!(format_rational(&exact));
                    to_json(&v)
                }
                Format::Csv => format!(
                    "n,estimate,stderr,trials,seed,exact\n{n},{},{},{},{},{}\n",
                    report.estimate,
                    report.standard_error,
                    report.trials,
                    report.seed,
                    format_rational(&exact)
                ),
                _ => format!(
                    "monte carlo eigentime of the {n}-cube: {} ± {} ({} trials, seed {}); exact {}\n",
                    report.estimate,
                    report.standard_error,
                    report.trials,
                    report.seed,
                    format_rational(&exact)
                ),
            };
            Ok((doc, EXIT_OK))
        }
        Command::Verify => {
            let report = verify_suite_with(n, limits);
            let status = if report.all_ok() { EXIT_OK } else { EXIT_CONSISTENCY };
            let doc = match config.format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from("check,from,to,ok,detail\n");
                    for c in &report.checks {
                        let (lo, hi) = c.covered.unwrap_or((0, 0));
                        let detail = c.detail.clone().unwrap_or_default().replace(',', ";");
                        let _ = writeln!(s, "\"{}\",{lo},{hi},{},{detail}", c.name, c.ok);
                    }
                    s
                }
                _ => report.to_string(),
            };
            Ok((doc, status))
        }
        Command::Export => {
            let g = make_hypercube_with(n, limits)?;
            let doc = match config.format {
                Format::Dot => g.to_dot(),
                _ => g.to_edge_list(),
            };
            Ok((doc, EXIT_OK))
        }
    }
}

fn mc_json(r: &WalkReport) -> serde_json::Value {
    json!({
        "estimate": r.estimate,
        "stderr": r.standard_error,
        "trials": r.trials,
        "seed": r.seed,
    })
}
