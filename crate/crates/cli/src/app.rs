//! Command-line parsing and dispatch.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use uncert::bounds::{self, DemeritVariant, GaussianKind, GaussianParams};
use uncert::channels::{Device, Instrument};
use uncert::gallery::{self, figures, GalleryReport, Which};
use uncert::measures;
use uncert::numerics::Tolerances;

use crate::basis_spec::parse_basis;
use crate::document::{parse_channel_document, DocumentError};
use crate::output::{
    bound_report, gallery_report, measure_report, table_csv, table_json, Meta, ResultDocument,
    SolverInfo,
};

pub const TOL_ENV: &str = "UNCERT_SDP_TOL";

#[derive(Debug, Parser)]
#[command(name = "uncert", version, about = "Error/disturbance measures for quantum devices")]
pub struct Cli {
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Omit the timestamp block from the result document.
    #[arg(long, global = true)]
    pub no_meta: bool,
    /// Load channel files without positivity and normalization checks.
    #[arg(long, global = true)]
    pub raw: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MeasureKind {
    Epsilon,
    Nu,
    Eta,
    EtaHat,
    EtaTilde,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundKind {
    Overlap,
    Demerit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Uniform,
    RowP,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "corollary1")]
    Corollary1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GaussKind {
    Measurement,
    Preparation,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Figure {
    Fig5,
    Fig7,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a channel document describes a valid device.
    Validate {
        #[arg(long)]
        channel: PathBuf,
    },
    /// Distinguishability of two devices with entangled inputs.
    Diamond {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Error or disturbance of a device relative to a basis.
    Measure {
        #[arg(long, value_enum)]
        kind: MeasureKind,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        basis: String,
    },
    /// Complementarity measures of two bases.
    Complementarity {
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
    },
    /// Closed-form complementarity bounds.
    Bound {
        #[arg(long, value_enum)]
        kind: BoundKind,
        #[arg(long, value_enum, default_value = "uniform")]
        variant: Variant,
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
    },
    /// Check an uncertainty relation on a device.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
    },
    /// Position/momentum bounds for Gaussian precisions.
    Gaussian {
        #[arg(long)]
        sigma_q: f64,
        #[arg(long)]
        sigma_p: f64,
        #[arg(long, value_enum)]
        kind: GaussKind,
    },
    /// Run the worked-example reports.
    Gallery {
        /// Run every report (the default when no name is given).
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// One of appendix_a, counterexample, englert.
        #[arg(long)]
        name: Option<String>,
    },
    /// Data series for the plots.
    FigureData {
        #[arg(long, value_enum)]
        which: Figure,
        #[arg(long, default_value_t = 61)]
        grid: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// Failure classes, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0:#}")]
    Input(anyhow::Error),
    #[error("{0:#}")]
    Solver(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let core = e.chain().find_map(|c| {
            c.downcast_ref::<uncert::Error>().or_else(|| match c.downcast_ref::<DocumentError>() {
                Some(DocumentError::Invariant(inner)) => Some(inner),
                _ => None,
            })
        });
        match core {
            Some(uncert::Error::Solver { .. }) | Some(uncert::Error::IllConditioned(_)) => {
                Failure::Solver(e)
            }
            _ => Failure::Input(e),
        }
    }
}

/// What a command produced: text for the output sink and whether a checked
/// relation failed.
pub struct Outcome {
    pub text: String,
    pub violated: bool,
}

pub fn tolerances() -> anyhow::Result<Tolerances> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(Tolerances::DEFAULT),
        Ok(s) => {
            let t: f64 = s
                .trim()
                .parse()
                .with_context(|| format!("{TOL_ENV}={s:?} is not a number"))?;
            anyhow::ensure!(t > 0.0 && t < 1.0, "{TOL_ENV} must lie in (0, 1), got {t}");
            Ok(Tolerances::DEFAULT.with_sdp_tol(t))
        }
    }
}

fn load(path: &Path, raw: bool) -> anyhow::Result<Device> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_channel_document(&text, raw).with_context(|| format!("in {}", path.display()))
}

fn load_instrument(path: &Path, raw: bool) -> anyhow::Result<Instrument> {
    Ok(load(path, raw)?.to_instrument())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn finish(mut doc: ResultDocument, no_meta: bool, violated: bool) -> Outcome {
    if !no_meta {
        doc.meta = Some(Meta::now());
    }
    Outcome { text: doc.to_json(), violated }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let tol = tolerances().map_err(Failure::Input)?;
    Ok(dispatch(cli, &tol)?)
}

fn dispatch(cli: &Cli, tol: &Tolerances) -> anyhow::Result<Outcome> {
    let raw = cli.raw;
    match &cli.command {
        Command::Validate { channel } => {
            let dev = load(channel, raw)?;
            let mut doc = ResultDocument::new("validate");
            doc.input("channel", path_str(channel)).input("raw", raw);
            doc.value("dim_in", dev.dim_in() as f64)
                .value("dim_out", dev.dim_out() as f64)
                .value("outcomes", dev.to_instrument().n_outcomes() as f64);
            Ok(finish(doc, cli.no_meta, false))
        }
        Command::Diamond { a, b } => {
            let (da, db) = (load(a, raw)?, load(b, raw)?);
            let r = measures::diamond_distance_with(&da, &db, tol)?;
            let mut doc = ResultDocument::new("diamond");
            doc.input("a", path_str(a)).input("b", path_str(b));
            doc.value("value", r.value);
            doc.reports.push(measure_report("diamond", &r));
            doc.solver = Some(SolverInfo::from_results([&r]));
            Ok(finish(doc, cli.no_meta, false))
        }
        Command::Measure { kind, channel, basis } => {
            let e = load_instrument(channel, raw)?;
            let b = parse_basis(basis)?;
            let (name, r) = match kind {
                MeasureKind::Epsilon => ("epsilon", measures::epsilon_with(&e, &b, tol)?),
                MeasureKind::Nu => ("nu", measures::nu_with(&e, &b, tol)?),
                MeasureKind::Eta => ("eta", measures::eta_with(&e, &b, tol)?),
                MeasureKind::EtaHat => ("eta-hat", measures::eta_hat_with(&e, &b, tol)?),
                MeasureKind::EtaTilde => ("eta-tilde", measures::eta_tilde_with(&e, &b, tol)?),
            };
            let mut doc = ResultDocument::new("measure");
            doc.input("kind", name).input("channel", path_str(channel)).input("basis", basis.as_str());
            doc.value("value", r.value);
            doc.reports.push(measure_report(name, &r));
            doc.solver = Some(SolverInfo::from_results([&r]));
            Ok(finish(doc, cli.no_meta, false))
        }
        Command::Complementarity { x, z } => {
            let (bx, bz) = (parse_basis(x)?, parse_basis(z)?);
            let c = measures::complementarity_with(&bx, &bz, tol)?;
            let mut doc = ResultDocument::new("complementarity");
            doc.input("x", x.as_str()).input("z", z.as_str());
            doc.value("c_m", c.c_m.value)
                .value("c_p", c.c_p.value)
                .value("c_p_hat", c.c_p_hat.value)
                .value("overlap_bound", bounds::overlap_bound(&bx, &bz)?)
                .value("demerit_bound", bounds::demerit_bound(&bx, &bz, DemeritVariant::Uniform)?);
            for (n, r) in [("c_m", &c.c_m), ("c_p", &c.c_p), ("c_p_hat", &c.c_p_hat)] {
                doc.reports.push(measure_report(n, r));
            }
            doc.solver = Some(SolverInfo::from_results([&c.c_m, &c.c_p, &c.c_p_hat]));
            Ok(finish(doc, cli.no_meta, false))
        }
        Command::Bound { kind, variant, x, z } => {
            let (bx, bz) = (parse_basis(x)?, parse_basis(z)?);
            let mut doc = ResultDocument::new("bound");
            doc.input("x", x.as_str()).input("z", z.as_str());
            let v = match kind {
                BoundKind::Overlap => {
                    doc.input("kind", "overlap");
                    bounds::overlap_bound(&bx, &bz)?
                }
                BoundKind::Demerit => {
                    let (name, v) = match variant {
                        Variant::Uniform => ("uniform", DemeritVariant::Uniform),
                        Variant::RowP => ("row-p", DemeritVariant::RowP),
                    };
                    doc.input("kind", "demerit").input("variant", name);
                    bounds::demerit_bound(&bx, &bz, v)?
                }
            };
            doc.value("value", v);
            Ok(finish(doc, cli.no_meta, false))
        }
        Command::Verify { theorem, channel, x, z } => {
            let (bx, bz) = (parse_basis(x)?, parse_basis(z)?);
            let dev = load(channel, raw)?;
            let reports = match theorem {
                Theorem::One => {
                    let (a, b) = bounds::check_theorem1_with(&dev.to_instrument(), &bx, &bz, tol)?;
                    vec![a, b]
                }
                Theorem::Two => {
                    let (a, b) = bounds::check_theorem2_with(&dev.to_instrument(), &bx, &bz, tol)?;
                    vec![a, b]
                }
                Theorem::Corollary1 => {
                    let n = dev
                        .as_channel()
                        .context("corollary1 needs a channel document without outcomes")?;
                    vec![bounds::check_corollary1_with(n, &bx, &bz, tol)?]
                }
            };
            let mut doc = ResultDocument::new("verify");
            let name = match theorem {
                Theorem::One => "1",
                Theorem::Two => "2",
                Theorem::Corollary1 => "corollary1",
            };
            doc.input("theorem", name)
                .input("channel", path_str(channel))
                .input("x", x.as_str())
                .input("z", z.as_str());
            for r in &reports {
                doc.value(&format!("{}.slack", r.name), r.slack);
                doc.reports.push(bound_report(r));
            }
            let violated = reports.iter().any(|r| !r.satisfied);
            Ok(finish(doc, cli.no_meta, violated))
        }
        Command::Gaussian { sigma_q, sigma_p, kind } => {
            let p = GaussianParams::new(*sigma_q, *sigma_p)?;
            let (name, k) = match kind {
                GaussKind::Measurement => ("measurement", GaussianKind::Measurement),
                GaussKind::Preparation => ("preparation", GaussianKind::Preparation),
            };
            let mut doc = ResultDocument::new("gaussian");
            doc.input("sigma_q", *sigma_q).input("sigma_p", *sigma_p).input("kind", name);
            doc.value("c", p.c()).value("bound", bounds::gaussian_bound(&p, k));
            if let Ok(sf) = bounds::optimal_sigma_f(&p) {
                doc.value("optimal_sigma_f", sf);
            }
            Ok(finish(doc, cli.no_meta, false))
        }
        Command::Gallery { name, .. } => {
            let reports = run_gallery(name.as_deref(), tol)?;
            let mut doc = ResultDocument::new("gallery");
            doc.input("reports", name.clone().unwrap_or_else(|| "all".into()));
            let passed = reports.iter().filter(|r| r.pass).count();
            doc.value("passed", passed as f64).value("total", reports.len() as f64);
            doc.reports = reports.iter().map(gallery_report).collect();
            Ok(finish(doc, cli.no_meta, passed != reports.len()))
        }
        Command::FigureData { which, grid, format } => {
            anyhow::ensure!(*grid >= 2, "grid needs at least 2 points, got {grid}");
            let table = match which {
                Figure::Fig5 => parallel_table(Which::Fig5, *grid)?,
                Figure::Fig7 => gallery::figure_data(Which::Fig7, *grid)?,
            };
            let text = match format {
                Format::Csv => table_csv(&table)?,
                Format::Json => {
                    let name = match which {
                        Figure::Fig5 => "fig5",
                        Figure::Fig7 => "fig7",
                    };
                    let mut v = table_json(&table);
                    v["figure"] = json!(name);
                    serde_json::to_string_pretty(&v)?
                }
            };
            Ok(Outcome { text, violated: false })
        }
    }
}

fn parallel_table(which: Which, grid: usize) -> anyhow::Result<gallery::FigureTable> {
    debug_assert_eq!(which, Which::Fig5);
    let rows = figures::fig5_grid(grid)
        .into_par_iter()
        .map(figures::fig5_row)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(gallery::FigureTable {
        columns: figures::FIG5_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

type Job = Box<dyn Fn() -> uncert::Result<GalleryReport> + Send + Sync>;

fn gallery_jobs(name: Option<&str>, tol: Tolerances) -> anyhow::Result<Vec<Job>> {
    if let Some(n) = name {
        anyhow::ensure!(
            gallery::REPORTS.contains(&n),
            "unknown gallery report {n:?}; expected one of {:?}",
            gallery::REPORTS
        );
    }
    let want = |n: &str| name.is_none_or(|m| m == n);
    let mut jobs: Vec<Job> = vec![];
    if want("appendix_a") {
        jobs.push(Box::new(gallery::appendix_a));
    }
    if want("counterexample") {
        for d in [2, 4] {
            jobs.push(Box::new(move || gallery::counterexample_with(d, &tol)));
        }
    }
    if want("englert") {
        for th in [0.0, FRAC_PI_3, FRAC_PI_2] {
            jobs.push(Box::new(move || gallery::englert(th, 0.0)));
        }
    }
    Ok(jobs)
}

/// Run reports on worker threads; output order follows the job list.
fn run_gallery(name: Option<&str>, tol: &Tolerances) -> anyhow::Result<Vec<GalleryReport>> {
    let jobs = gallery_jobs(name, *tol)?;
    Ok(jobs.par_iter().map(|j| j()).collect::<Result<Vec<_>, _>>()?)
}

/// Parse arguments, run, write output; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
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
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = write_output(cli.out.as_deref(), &out.text) {
                eprintln!("error: {e:#}");
                return 2;
            }
            if out.violated {
                1
            } else {
                0
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
