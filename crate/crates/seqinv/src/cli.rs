//! Command-line front end: subcommands over sequence files, single-line JSON
//! reports on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 = ok, 2 = bad input, 3 = no solution; the JSON `status`
//! field always agrees (`"ok"`, `"error"`, `"no_solution"`).
//!
//! Sequence files hold one coordinate sequence of `0`/`1` characters per
//! line (leftmost character = `s_0` = state bit 0); whitespace is ignored
//! and all lines must have equal length.

use crate::complexity::{berlekamp_massey, complexity_relative, lc_inverse, moc, pci, PciStatus};
use crate::error::{Error, Result};
use crate::experiments::{run_experiment, ConjectureReport, ExperimentConfig};
use crate::gf2::BitVec;
use crate::golomb::solve_golomb;
use crate::hankel::{build_system_custom, build_system_vector, BitSequence, MonomialSet, VectorSequence};
use crate::inversion::{solve_invertible, InversionSolution};
use crate::localinv::{local_invert, parse_map_spec};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "seqinv",
    about = "Inversion of binary sequences via polynomial recurrence relations over GF(2)",
    long_about = "Computes prefix elements (inverses) of binary sequences from polynomial \
recurrence relations, complexity measures (pci, lc, moc), non-singular FSR synthesis, local \
inversion of black-box maps, and a seeded Monte-Carlo harness.\n\nBit orientation: the \
leftmost character of every bit string is s_0 (state bit 0). Reports are single-line JSON \
on stdout; exit codes: 0 ok, 2 bad input, 3 no solution."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct SeqArg {
    /// Sequence file: one 0/1 line per coordinate, leftmost = s_0.
    #[arg(long, value_name = "FILE")]
    pub seq: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for an invertible recurrence polynomial and the inverse.
    Invert {
        #[command(flatten)]
        seq: SeqArg,
        /// Recurrence order (number of variables). Required without --mset.
        #[arg(long)]
        m: Option<usize>,
        /// Polynomial degree bound. Required without --mset.
        #[arg(long)]
        d: Option<usize>,
        /// Allow a constant term in the polynomial.
        #[arg(long)]
        allow_constant: bool,
        /// Restrict to a fixed monomial set, e.g. "x0*x1 + x1*x2 + x2*x3".
        #[arg(long, value_name = "ANF-LIST")]
        mset: Option<String>,
    },
    /// Inversion complexity search at a fixed degree.
    Pci {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        allow_constant: bool,
    },
    /// Degree-1 inversion (linear complexity), with a Berlekamp-Massey
    /// cross-check in the report.
    Lc {
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Maximal order complexity.
    Moc {
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Synthesize non-singular registers f = x0 + g consistent with the
    /// sequence.
    Golomb {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Invert a black-box map at a point through its iterate sequence.
    Localinv {
        /// Map spec: "fsr:m=<k>;g=<ANF>", "perm:seed=<u64>;n=<k>", or
        /// "table:<path>" (2^n 8-byte little-endian states).
        #[arg(long, value_name = "SPEC")]
        map: String,
        /// Point to invert at, as a bit string (leftmost = bit 0).
        #[arg(long, value_name = "BITS")]
        y: String,
        /// Number of iterates to collect.
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        allow_constant: bool,
    },
    /// Run a Monte-Carlo experiment from a key=value config file.
    Conjecture {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
}

#[derive(Serialize, Debug, Default)]
pub struct JsonReport {
    pub schema: u32,
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status_detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Number of coordinate sequences.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_lower: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_upper: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_saturated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_inverse: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub berlekamp_massey: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasible: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_profile: Option<Vec<(usize, usize)>>,
    /// Complexity relative to a monomial set: sqrt(rank * order).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mset_complexity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_preview: Option<Vec<GolombEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ConjectureReport>,
    pub elapsed_ms: f64,
}

#[derive(Serialize, Debug)]
pub struct GolombEntry {
    pub g: String,
    pub inverse: String,
}

impl JsonReport {
    fn new(command: &str) -> Self {
        JsonReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            status: "ok".to_string(),
            ..Default::default()
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "ok" => 0,
            "no_solution" => 3,
            _ => 2,
        }
    }
}

/// Reads a sequence file into a vector sequence.
pub fn read_sequence_file(path: &Path) -> Result<VectorSequence> {
    let text = std::fs::read_to_string(path)?;
    parse_sequence_text(&text)
}

pub fn parse_sequence_text(text: &str) -> Result<VectorSequence> {
    let mut coords = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        coords.push(BitSequence::new(BitVec::from_bit_str(line)?));
    }
    if coords.is_empty() {
        return Err(Error::Parse("sequence file has no sequences".into()));
    }
    let len = coords[0].len();
    if coords.iter().any(|c| c.len() != len) {
        return Err(Error::Parse("coordinate sequences must have equal length".into()));
    }
    Ok(VectorSequence::new(coords))
}

fn scalar_only(seq: &VectorSequence, what: &str) -> Result<BitSequence> {
    if seq.dimension() != 1 {
        return Err(Error::Parse(format!(
            "{what} expects a single-line sequence file, got {} lines",
            seq.dimension()
        )));
    }
    Ok(seq.coord(0).clone())
}

fn fill_solution(report: &mut JsonReport, sol: &InversionSolution) {
    report.inverse = Some(sol.inverse.to_bit_string());
    report.polynomial = Some(sol.polynomial.to_anf_string());
    report.family_lower = Some(sol.count_lower.value);
    report.family_upper = Some(sol.count_upper.value);
    report.family_saturated = Some(sol.count_lower.saturated || sol.count_upper.saturated);
    report.common_inverse = Some(sol.common_inverse);
}

fn cmd_invert(
    seq_path: &Path,
    m: Option<usize>,
    d: Option<usize>,
    allow_constant: bool,
    mset: Option<&str>,
) -> Result<JsonReport> {
    let mut report = JsonReport::new("invert");
    let seq = read_sequence_file(seq_path)?;
    report.n = Some(seq.dimension());
    let sys = match mset {
        Some(text) => {
            let set = MonomialSet::parse(text)?;
            report.inputs = Some(serde_json::json!({
                "seq": seq_path.display().to_string(),
                "mset": set.to_anf_string(),
            }));
            let rel = complexity_relative(&seq, &set)?;
            report.mset_complexity = rel.value();
            build_system_custom(&seq, &set)?
        }
        None => {
            let m = m.ok_or_else(|| Error::Parse("--m is required without --mset".into()))?;
            let d = d.ok_or_else(|| Error::Parse("--d is required without --mset".into()))?;
            report.inputs = Some(serde_json::json!({
                "seq": seq_path.display().to_string(),
                "m": m, "d": d, "allow_constant": allow_constant,
            }));
            build_system_vector(&seq, m, d, allow_constant)?
        }
    };
    report.m = Some(sys.meta.m);
    report.d = Some(sys.meta.d);
    report.n_c = Some(sys.n_columns());
    report.rank = Some(sys.rr_matrix().rank());
    match solve_invertible(&sys) {
        Some(sol) => fill_solution(&mut report, &sol),
        None => report.status = "no_solution".to_string(),
    }
    Ok(report)
}

fn cmd_pci(seq_path: &Path, d: usize, allow_constant: bool) -> Result<JsonReport> {
    let mut report = JsonReport::new("pci");
    let seq = read_sequence_file(seq_path)?;
    report.inputs = Some(serde_json::json!({
        "seq": seq_path.display().to_string(),
        "d": d, "allow_constant": allow_constant,
    }));
    report.n = Some(seq.dimension());
    report.d = Some(d);
    let r = pci(&seq, d, allow_constant);
    report.feasible = r.feasible;
    report.rank_profile = Some(r.rank_profile.clone());
    report.m = r.order;
    report.n_c = r.n_c;
    report.rank = r.order.and_then(|m| {
        r.rank_profile
            .iter()
            .find(|&&(k, _)| k == m)
            .map(|&(_, rank)| rank)
    });
    match r.status {
        PciStatus::Found => {
            fill_solution(&mut report, r.solution.as_ref().expect("found"));
        }
        PciStatus::NoFeasibleOrder => {
            report.status = "no_solution".to_string();
            report.status_detail = Some("no_feasible_order".to_string());
        }
        PciStatus::NoInvertibleSolution => {
            report.status = "no_solution".to_string();
            report.status_detail = Some("no_invertible_solution".to_string());
        }
    }
    Ok(report)
}

fn cmd_lc(seq_path: &Path) -> Result<JsonReport> {
    let mut report = JsonReport::new("lc");
    let seq = read_sequence_file(seq_path)?;
    let s = scalar_only(&seq, "lc")?;
    report.inputs = Some(serde_json::json!({ "seq": seq_path.display().to_string() }));
    report.berlekamp_massey = Some(berlekamp_massey(&s));
    match lc_inverse(&s) {
        Some(r) => {
            report.m = Some(r.order);
            report.polynomial = Some(r.polynomial.to_anf_string());
            report.inverse = Some(if r.inverse { "1" } else { "0" }.to_string());
        }
        None => report.status = "no_solution".to_string(),
    }
    Ok(report)
}

fn cmd_moc(seq_path: &Path) -> Result<JsonReport> {
    let mut report = JsonReport::new("moc");
    let seq = read_sequence_file(seq_path)?;
    let s = scalar_only(&seq, "moc")?;
    report.inputs = Some(serde_json::json!({ "seq": seq_path.display().to_string() }));
    report.moc = Some(moc(&s)?);
    Ok(report)
}

const GOLOMB_PREVIEW_LIMIT: usize = 16;

fn cmd_golomb(seq_path: &Path, m: usize, d: usize) -> Result<JsonReport> {
    let mut report = JsonReport::new("golomb");
    let seq = read_sequence_file(seq_path)?;
    report.inputs = Some(serde_json::json!({
        "seq": seq_path.display().to_string(), "m": m, "d": d,
    }));
    report.m = Some(m);
    report.d = Some(d);
    report.n = Some(seq.dimension());
    match solve_golomb(&seq, m, d)? {
        Some(family) => {
            let (spec, inverse) = family.canonical();
            report.polynomial = Some(spec.feedback().to_anf_string());
            report.g = Some(spec.g().to_anf_string());
            report.inverse = Some(inverse.to_bit_string());
            report.kernel_dim = Some(family.kernel_dim());
            report.family_preview = Some(
                family
                    .enumerate(GOLOMB_PREVIEW_LIMIT)
                    .into_iter()
                    .map(|(sp, inv)| GolombEntry {
                        g: sp.g().to_anf_string(),
                        inverse: inv.to_bit_string(),
                    })
                    .collect(),
            );
        }
        None => report.status = "no_solution".to_string(),
    }
    Ok(report)
}

fn cmd_localinv(map_spec: &str, y: &str, steps: usize, d: usize, allow_constant: bool) -> Result<JsonReport> {
    let mut report = JsonReport::new("localinv");
    let map = parse_map_spec(map_spec)?;
    let y = BitVec::from_bit_str(y)?;
    if y.len() != map.dimension() {
        return Err(Error::Parse(format!(
            "point has {} bits but the map has dimension {}",
            y.len(),
            map.dimension()
        )));
    }
    if steps < 2 {
        return Err(Error::Parse("--steps must be at least 2".into()));
    }
    report.inputs = Some(serde_json::json!({
        "map": map_spec, "y": y.to_bit_string(), "steps": steps,
        "d": d, "allow_constant": allow_constant,
    }));
    report.steps = Some(steps);
    report.d = Some(d);
    report.n = Some(map.dimension());
    let r = local_invert(map.as_ref(), &y, steps, d, allow_constant);
    report.m = r.pci_used.order;
    match &r.candidate {
        Some(c) => {
            report.candidate = Some(c.to_bit_string());
            report.verified = Some(r.verified);
            if let Some(sol) = &r.pci_used.solution {
                report.polynomial = Some(sol.polynomial.to_anf_string());
            }
        }
        None => report.status = "no_solution".to_string(),
    }
    Ok(report)
}

fn cmd_conjecture(config_path: &Path) -> Result<JsonReport> {
    let mut report = JsonReport::new("conjecture");
    let text = std::fs::read_to_string(config_path)?;
    let config = ExperimentConfig::parse(&text)?;
    report.inputs = Some(serde_json::json!({
        "config": config_path.display().to_string(),
        "generator": config.params.generator.to_spec_string(),
        "N": config.params.n_full, "M": config.params.m_partial,
        "d": config.params.d, "trials": config.trials, "seed": config.seed,
    }));
    let (_, conj) = run_experiment(&config);
    report.report = Some(conj);
    Ok(report)
}

/// Runs a parsed command and produces the report. Input failures surface as
/// a report with `status = "error"`.
pub fn execute(cli: &Cli) -> JsonReport {
    let start = Instant::now();
    let command_name = match &cli.command {
        Command::Invert { .. } => "invert",
        Command::Pci { .. } => "pci",
        Command::Lc { .. } => "lc",
        Command::Moc { .. } => "moc",
        Command::Golomb { .. } => "golomb",
        Command::Localinv { .. } => "localinv",
        Command::Conjecture { .. } => "conjecture",
    };
    let result = match &cli.command {
        Command::Invert { seq, m, d, allow_constant, mset } => {
            cmd_invert(&seq.seq, *m, *d, *allow_constant, mset.as_deref())
        }
        Command::Pci { seq, d, allow_constant } => cmd_pci(&seq.seq, *d, *allow_constant),
        Command::Lc { seq } => cmd_lc(&seq.seq),
        Command::Moc { seq } => cmd_moc(&seq.seq),
        Command::Golomb { seq, m, d } => cmd_golomb(&seq.seq, *m, *d),
        Command::Localinv { map, y, steps, d, allow_constant } => {
            cmd_localinv(map, y, *steps, *d, *allow_constant)
        }
        Command::Conjecture { config } => cmd_conjecture(config),
    };
    let mut report = result.unwrap_or_else(|e| {
        let mut r = JsonReport::new(command_name);
        r.status = "error".to_string();
        r.error = Some(e.to_string());
        r
    });
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

/// Entry point for the binary: parses argv, prints the single-line JSON
/// report, and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let report = execute(&cli);
    if let Some(err) = &report.error {
        eprintln!("seqinv: {err}");
    }
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    report.exit_code()
}
