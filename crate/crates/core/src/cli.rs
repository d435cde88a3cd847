//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed consistency check, 2 bad input, 3
//! undetermined class, 4 no point spectrum, 5 resource cap.
//!
//! A `--config FILE` holds `key = value` lines whose keys are long flag
//! names (`alpha = 3.9269908169872414`, `cylinder = 16`, `check-fourier =
//! true`). Flags given on the command line take precedence.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::ae::{self, AEParams, PlanarState, Topology};
use crate::birth_death::{classify, BDChain, ClassificationReport, RecurrenceClass};
use crate::eigenspace::{self, DEFAULT_TAIL_TOL};
use crate::error::{Error, Result};
use crate::format;
use crate::walk::{evolve, Arc, ArcState, VerblunskySeq, DEFAULT_SITE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;
pub const EXIT_NO_POINT_SPECTRUM: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

/// Pipeline deviation accepted by `ae-evolve --check-fourier`.
pub const FOURIER_CHECK_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Half-line quantum walks and their birth-death chains")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Output file (stdout if absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Tolerance below which |p - q| counts as symmetric
    #[arg(long, global = true, default_value_t = crate::birth_death::DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = crate::birth_death::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
    /// Site cap for simulations and eigenvector truncation
    #[arg(long, global = true, default_value_t = DEFAULT_SITE_CAP)]
    pub cutoff: usize,
    /// key = value file mirroring the long flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Recurrence class of the induced chain
    Classify(ChainInput),
    /// Certified point-spectrum eigenpair
    Eigen(EigenArgs),
    /// Site probabilities of an evolving half-line state
    Evolve(EvolveArgs),
    /// Bulk and edge dispersion table of the planar model
    Dispersion(DispersionArgs),
    /// Evolution of the planar model
    AeEvolve(AeEvolveArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ChainInput {
    /// Constant Verblunsky parameter, e.g. `0.3` or `0.2+0.1i`
    #[arg(long, group = "source", allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Constant right-move probability; the walk is built with `--kappa`
    #[arg(long, group = "source")]
    pub p: Option<f64>,
    /// Verblunsky sequence file
    #[arg(long, group = "source")]
    pub seq: Option<PathBuf>,
    /// Probability table: rows `j,p`, optional final row `tail,p`
    #[arg(long, group = "source")]
    pub table: Option<PathBuf>,
    /// Planar-model Fourier mode, with `--alpha --beta --k`
    #[arg(long, requires_all = ["beta", "k"], group = "source", allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// Imaginary part of the walk parameters built from `--p` or `--table`
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub kappa: f64,
}

#[derive(Args, Debug)]
pub struct EigenArgs {
    #[command(flatten)]
    pub input: ChainInput,
    /// Truncate once the discarded l2 norm is below this
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
    /// Write the eigenvector as an arc-state CSV
    #[arg(long)]
    pub vector: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub input: ChainInput,
    #[arg(long)]
    pub steps: usize,
    /// Initial arc-state CSV (default: the self-loop)
    #[arg(long)]
    pub init: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DispersionArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct AeEvolveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long)]
    pub steps: usize,
    /// Circumference; the half-plane is used when absent
    #[arg(long)]
    pub cylinder: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub x0: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub y0: i64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub component: u8,
    /// Initial planar-state CSV (overrides the single excitation)
    #[arg(long)]
    pub init: Option<PathBuf>,
    /// Compare against the Fourier/CMV reconstruction (cylinder only)
    #[arg(long)]
    pub check_fourier: bool,
    /// Write the final planar state as CSV
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceCap { .. } => EXIT_RESOURCE,
        Error::WrongClass { .. } => EXIT_NO_POINT_SPECTRUM,
        Error::NoConvergence | Error::BranchMismatch { .. } | Error::NotOrthogonal(..) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

const FLAGS_WITHOUT_VALUE: &[&str] = &["check-fourier"];

/// Splices `--config` entries into `args` right after the subcommand name,
/// skipping keys the command line already sets.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path)?;
    let present = |key: &str| {
        let flag = format!("--{key}");
        let eq = format!("--{key}=");
        args.iter().any(|a| *a == flag || a.starts_with(&eq))
    };
    let mut injected = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("{path}:{}: expected key = value", n + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "config" || present(key) {
            continue;
        }
        if FLAGS_WITHOUT_VALUE.contains(&key) {
            match value {
                "true" => injected.push(format!("--{key}")),
                "false" => {}
                _ => return Err(Error::Parse(format!("{path}:{}: {key} takes true or false", n + 1))),
            }
        } else {
            injected.push(format!("--{key}={value}"));
        }
    }
    let names = ["classify", "eigen", "evolve", "dispersion", "ae-evolve"];
    let at = args
        .iter()
        .position(|a| names.contains(&a.as_str()))
        .map_or(args.len(), |i| i + 1);
    let mut out = args[..at].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Diagnostics go to `err`.
pub fn run<W: Write, E: Write>(args: Vec<String>, out: &mut W, err: &mut E) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> Result<i32> {
    let g = &cli.global;
    if g.tol.is_nan() || g.tol <= 0.0 {
        return Err(Error::Domain("--tol must be positive".into()));
    }
    if g.max_terms == 0 {
        return Err(Error::Domain("--max-terms must be positive".into()));
    }
    let mut buf = Vec::new();
    let code = match &cli.command {
        Command::Classify(a) => cmd_classify(g, a, &mut buf)?,
        Command::Eigen(a) => cmd_eigen(g, a, &mut buf)?,
        Command::Evolve(a) => cmd_evolve(g, a, &mut buf)?,
        Command::Dispersion(a) => cmd_dispersion(g, a, &mut buf)?,
        Command::AeEvolve(a) => cmd_ae_evolve(g, a, &mut buf, err)?,
    };
    match &g.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(code)
}

fn create(path: &Path) -> Result<File> {
    Ok(File::create(path)?)
}

fn json<T: Serialize, W: Write>(value: &T, w: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

/// Probability table: `j,p` rows from 0, optional `tail,p` as the last row.
pub fn read_table<R: BufRead>(r: R) -> Result<BDChain> {
    let mut table = Vec::new();
    let mut tail = None;
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == "j,p" {
            continue;
        }
        if tail.is_some() {
            return Err(Error::Parse("rows after the tail row".into()));
        }
        let (j, p) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `j,p`: {line}")))?;
        let p = format::parse_real(p.trim())?;
        if j.trim() == "tail" {
            tail = Some(p);
            continue;
        }
        let j: usize = j.trim().parse().map_err(|_| Error::Parse(format!("bad index: {j}")))?;
        if j != table.len() {
            return Err(Error::Parse(format!("row {j} out of order")));
        }
        table.push(p);
    }
    match tail {
        Some(t) => BDChain::with_tail(table, t),
        None => BDChain::explicit(table),
    }
}

/// Walk parameter with imaginary part `kappa` whose chain moves right with `p`.
pub fn eta_for(p: f64, kappa: f64) -> Result<Complex64> {
    if kappa.is_nan() || kappa.abs() >= 1.0 {
        return Err(Error::Domain(format!("|kappa| = {} must be below 1", kappa.abs())));
    }
    Ok(Complex64::new((1.0 - 2.0 * p) * (1.0 - kappa * kappa).sqrt(), kappa))
}

fn walk_from_chain(chain: &BDChain, kappa: f64) -> Result<VerblunskySeq> {
    let table = (0..chain.prefix_len())
        .map(|j| eta_for(chain.p(j), kappa))
        .collect::<Result<Vec<_>>>()?;
    match chain.tail_p() {
        Some(t) => VerblunskySeq::with_tail(table, eta_for(t, kappa)?),
        None => VerblunskySeq::explicit(table),
    }
}

/// The walk and its chain described by the input flags.
pub fn resolve(input: &ChainInput) -> Result<(VerblunskySeq, BDChain)> {
    if let Some(e) = &input.eta {
        let seq = VerblunskySeq::constant(format::parse_complex(e)?)?;
        let chain = BDChain::from_walk(&seq)?;
        return Ok((seq, chain));
    }
    if let Some(p) = input.p {
        let chain = BDChain::constant(p)?;
        return Ok((walk_from_chain(&chain, input.kappa)?, chain));
    }
    if let Some(path) = &input.seq {
        let seq = VerblunskySeq::read(BufReader::new(File::open(path)?))?;
        let chain = BDChain::from_walk(&seq)?;
        return Ok((seq, chain));
    }
    if let Some(path) = &input.table {
        let chain = read_table(BufReader::new(File::open(path)?))?;
        return Ok((walk_from_chain(&chain, input.kappa)?, chain));
    }
    if let (Some(a), Some(b), Some(k)) = (input.alpha, input.beta, input.k) {
        let seq = VerblunskySeq::ae_fourier(AEParams::new(a, b), k);
        let chain = BDChain::from_walk(&seq)?;
        return Ok((seq, chain));
    }
    Err(Error::Parse(
        "one of --eta, --p, --seq, --table or --alpha/--beta/--k is required".into(),
    ))
}

fn cmd_classify<W: Write>(g: &Global, a: &ChainInput, w: &mut W) -> Result<i32> {
    let (_, chain) = resolve(a)?;
    let class = classify(&chain, g.max_terms, g.tol);
    let terms = match class {
        RecurrenceClass::Undetermined { terms_used, .. } => terms_used,
        _ => crate::birth_death::terms_needed(&chain).min(g.max_terms),
    };
    let report = ClassificationReport::new(&class, terms);
    match g.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json(&report, w)?,
        OutputFormat::Csv => {
            let opt = |x: Option<f64>| x.map(format::real).unwrap_or_default();
            let (pr, pt) = report
                .partial_sums
                .as_ref()
                .map_or((None, None), |s| (Some(s.c_r), Some(s.c_t)));
            writeln!(w, "# qwalk classify v1")?;
            writeln!(w, "class,c_R,c_T,partial_c_R,partial_c_T,terms_used")?;
            writeln!(
                w,
                "{},{},{},{},{},{}",
                report.class.as_str(),
                opt(report.c_r),
                opt(report.c_t),
                opt(pr),
                opt(pt),
                report.terms_used
            )?;
        }
    }
    Ok(match class {
        RecurrenceClass::Undetermined { .. } => EXIT_UNDETERMINED,
        _ => EXIT_OK,
    })
}

fn cmd_eigen<W: Write>(g: &Global, a: &EigenArgs, w: &mut W) -> Result<i32> {
    if a.tail_tol.is_nan() || a.tail_tol <= 0.0 {
        return Err(Error::Domain("--tail-tol must be positive".into()));
    }
    let (seq, chain) = resolve(&a.input)?;
    let pair = match classify(&chain, g.max_terms, g.tol) {
        RecurrenceClass::PositiveRecurrent { .. } => eigenspace::psi_star_capped(&chain, &seq, a.tail_tol, g.cutoff)?,
        RecurrenceClass::Transient { .. } => eigenspace::xi_star_capped(&chain, &seq, a.tail_tol, g.cutoff)?,
        RecurrenceClass::NullRecurrent => {
            writeln!(w, "{{\"class\": \"null_recurrent\", \"point_spectrum\": false}}")?;
            return Ok(EXIT_NO_POINT_SPECTRUM);
        }
        RecurrenceClass::Undetermined { .. } => {
            writeln!(w, "{{\"class\": \"undetermined\", \"point_spectrum\": null}}")?;
            return Ok(EXIT_UNDETERMINED);
        }
    };
    let report = pair.report();
    match g.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json(&report, w)?,
        OutputFormat::Csv => {
            writeln!(w, "# qwalk eigen v1")?;
            writeln!(w, "source,eigenvalue_re,eigenvalue_im,norm_sq,residual,support_size")?;
            let source = match report.source {
                eigenspace::Source::StationaryMeasure => "stationary-measure",
                eigenspace::Source::EnergyFlow => "energy-flow",
            };
            writeln!(
                w,
                "{source},{},{},{},{},{}",
                format::real(report.eigenvalue.re),
                format::real(report.eigenvalue.im),
                format::real(report.norm_sq),
                format::real(report.residual),
                report.support_size
            )?;
        }
    }
    if let Some(path) = &a.vector {
        pair.vector.write_csv(create(path)?)?;
    }
    Ok(EXIT_OK)
}

fn cmd_evolve<W: Write>(g: &Global, a: &EvolveArgs, w: &mut W) -> Result<i32> {
    let (seq, _) = resolve(&a.input)?;
    let init = match &a.init {
        Some(path) => ArcState::read_csv(BufReader::new(File::open(path)?))?,
        None => ArcState::delta(Arc::SELF_LOOP),
    };
    if init.norm_sqr() == 0.0 {
        return Err(Error::ZeroState);
    }
    let states = evolve(&init, &seq, a.steps, g.cutoff)?;
    match g.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            writeln!(w, "# qwalk evolve v1")?;
            writeln!(w, "t,site,probability,norm")?;
            for (t, s) in states.iter().enumerate() {
                let norm = format::real(s.norm_sqr());
                for (site, p) in s.site_probabilities().iter().enumerate() {
                    if *p > 0.0 {
                        writeln!(w, "{t},{site},{},{norm}", format::real(*p))?;
                    }
                }
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                t: usize,
                norm: f64,
                probabilities: Vec<f64>,
            }
            let rows: Vec<Row> = states
                .iter()
                .enumerate()
                .map(|(t, s)| Row {
                    t,
                    norm: s.norm_sqr(),
                    probabilities: s.site_probabilities(),
                })
                .collect();
            json(&rows, w)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_dispersion<W: Write>(g: &Global, a: &DispersionArgs, w: &mut W) -> Result<i32> {
    let table = ae::dispersion_table(AEParams::new(a.alpha, a.beta), a.grid)?;
    match g.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => table.write_csv(w)?,
        OutputFormat::Json => json(&table, w)?,
    }
    Ok(EXIT_OK)
}

fn cmd_ae_evolve<W: Write, E: Write>(g: &Global, a: &AeEvolveArgs, w: &mut W, err: &mut E) -> Result<i32> {
    let params = AEParams::new(a.alpha, a.beta);
    let topology = match a.cylinder {
        Some(0) => return Err(Error::Domain("--cylinder must be positive".into())),
        Some(l) => Topology::Cylinder(l),
        None => Topology::HalfPlane,
    };
    let init = match &a.init {
        Some(path) => {
            let s = PlanarState::read_csv(BufReader::new(File::open(path)?))?;
            if s.topology() != topology {
                return Err(Error::Parse("initial state topology does not match --cylinder".into()));
            }
            s
        }
        None => PlanarState::delta(topology, a.x0, a.y0, a.component as usize),
    };
    let needed = init.max_x().unwrap_or(0) + a.steps + 1;
    if needed > g.cutoff {
        return Err(Error::ResourceCap {
            what: "planar evolution (x sites)",
            needed,
            cap: g.cutoff,
        });
    }
    let format = g.format.unwrap_or(OutputFormat::Csv);
    let mut states = vec![init.clone()];
    for _ in 0..a.steps {
        let next = ae::gamma_step(states.last().expect("nonempty"), params);
        states.push(next);
    }
    let last = states.last().expect("nonempty").clone();

    let deviation = if a.check_fourier {
        if !matches!(topology, Topology::Cylinder(_)) {
            return Err(Error::Domain("--check-fourier needs --cylinder".into()));
        }
        Some(ae::fourier_reconstruct(&init, params, a.steps)?.max_abs_diff(&last))
    } else {
        None
    };

    match format {
        OutputFormat::Csv => {
            writeln!(w, "# qwalk ae-evolve v1")?;
            writeln!(w, "t,x,probability,norm")?;
            for (t, s) in states.iter().enumerate() {
                let norm = format::real(s.norm_sqr());
                for (x, p) in s.x_marginal().iter().enumerate() {
                    if *p > 0.0 {
                        writeln!(w, "{t},{x},{},{norm}", format::real(*p))?;
                    }
                }
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                t: usize,
                norm: f64,
                x_marginal: Vec<f64>,
            }
            #[derive(Serialize)]
            struct Report {
                steps: Vec<Row>,
                #[serde(skip_serializing_if = "Option::is_none")]
                fourier_max_deviation: Option<f64>,
            }
            let steps = states
                .iter()
                .enumerate()
                .map(|(t, s)| Row {
                    t,
                    norm: s.norm_sqr(),
                    x_marginal: s.x_marginal(),
                })
                .collect();
            json(
                &Report {
                    steps,
                    fourier_max_deviation: deviation,
                },
                w,
            )?;
        }
    }
    if let Some(path) = &a.snapshot {
        last.write_csv(create(path)?)?;
    }
    if let Some(d) = deviation {
        writeln!(err, "fourier check: max deviation {}", format::real(d))?;
        if d.is_nan() || d > FOURIER_CHECK_TOL {
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    Ok(EXIT_OK)
}
