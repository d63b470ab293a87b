use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use msirs::analysis::{becc_bits, burst_sweep, latency, Scheme};
use msirs::sim::{emit_results, run_experiment, ExperimentConfig};
use msirs::{DecoderKind, InterleaverConfig, MsIrsCode, RsCode};

#[derive(Debug, Parser)]
#[command(name = "msirs", version, about = "Burst-interleaved Reed-Solomon toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte-Carlo BER/BLER sweep over SBR, written as CSV
    Simulate(SimulateArgs),
    /// Worst-case burst correction capability in bits
    Becc(BeccArgs),
    /// FEC buffering and receiving latency
    Latency(LatencyArgs),
    /// Exhaustive burst sweep against the closed-form BECC
    BurstSweep(SweepArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Built-in experiment
    #[arg(long, value_parser = ["case1", "case2"], conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// key = value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    sbr_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    sbr_max: Option<f64>,
    #[arg(long)]
    sbr_step: Option<f64>,
    /// Frames per SBR point
    #[arg(long)]
    frames: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ss,
    Ms,
}

#[derive(Debug, Args)]
struct BeccArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Interleave depth
    #[arg(short = 'L')]
    depth: u64,
    #[arg(short = 't')]
    t: u64,
    /// Symbols per dispatch (MS-IRS only)
    #[arg(long = "bl", alias = "BL", default_value_t = 1)]
    burst_len: u64,
    #[arg(short = 'm')]
    m: u64,
}

#[derive(Debug, Args)]
struct LatencyArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    #[arg(long, short = 'm')]
    m: u64,
    #[arg(short = 'L')]
    depth: u64,
    #[arg(long)]
    rate_bps: u64,
    #[arg(long, default_value_t = 0.0)]
    decode_ns: f64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, short = 'm')]
    m: u32,
    #[arg(short = 'L')]
    depth: usize,
    #[arg(long = "bl", alias = "BL")]
    burst_len: usize,
    /// Stop after this burst length (default: whole frame)
    #[arg(long)]
    max_bits: Option<usize>,
    /// Force single- or two-pass decoding (default: single for BL = 1)
    #[arg(long, value_parser = ["single", "two"])]
    decoder: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

type BoxError = Box<dyn std::error::Error>;

fn simulate(args: SimulateArgs) -> Result<(), BoxError> {
    let mut cfg = match (&args.preset, &args.config) {
        (Some(p), _) => ExperimentConfig::preset(p)?,
        (None, Some(path)) => ExperimentConfig::from_file(path)?,
        (None, None) => unreachable!("clap requires one of --preset / --config"),
    };
    if let Some(v) = args.sbr_min {
        cfg.sweep.min_db = v;
    }
    if let Some(v) = args.sbr_max {
        cfg.sweep.max_db = v;
    }
    if let Some(v) = args.sbr_step {
        cfg.sweep.step_db = v;
    }
    if let Some(v) = args.frames {
        cfg.frames_per_point = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    let rows = run_experiment(&cfg)?;
    match args.out {
        Some(path) => emit_results(&rows, cfg.seed, &cfg.channel.taps, BufWriter::new(File::create(path)?))?,
        None => emit_results(&rows, cfg.seed, &cfg.channel.taps, io::stdout().lock())?,
    }
    Ok(())
}

fn becc(args: BeccArgs) -> Result<(), BoxError> {
    let scheme = match args.scheme {
        SchemeArg::Ss => Scheme::SsIrs,
        SchemeArg::Ms => Scheme::MsIrs,
    };
    println!("{}", becc_bits(scheme, args.depth, args.t, args.burst_len, args.m)?);
    Ok(())
}

fn show_latency(args: LatencyArgs) -> Result<(), BoxError> {
    let l = latency(args.n, args.k, args.m, args.depth, args.rate_bps, args.decode_ns)?;
    println!("buffering_ns={}", l.buffering_ns);
    println!("receiving_ns={}", l.receiving_ns);
    println!("decoding_budget_ns={}", l.decoding_budget_ns);
    println!("total_ns={}", l.total_ns);
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), BoxError> {
    let code = MsIrsCode::new(
        RsCode::with_params(args.n, args.k, args.m)?,
        InterleaverConfig::new(args.depth, args.burst_len, args.n)?,
    )?;
    let kind = match args.decoder.as_deref() {
        Some("single") => DecoderKind::SinglePass,
        Some(_) => DecoderKind::TwoPass,
        None if args.burst_len == 1 => DecoderKind::SinglePass,
        None => DecoderKind::TwoPass,
    };
    let frame_bits = code.layout().frame_len() * args.m as usize;
    let report = burst_sweep(&code, kind, args.max_bits.unwrap_or(frame_bits), args.seed)?;

    let t = code.code().t() as u64;
    let (l, bl, m) = (args.depth as u64, args.burst_len as u64, args.m as u64);
    let mut out = io::stdout().lock();
    writeln!(out, "decoder={kind:?} frames_tested={}", report.frames_tested)?;
    writeln!(out, "empirical_threshold_bits={}", report.threshold_bits)?;
    if let Some(f) = report.first_failure {
        writeln!(out, "first_failure len_bits={} start_bit={}", f.len_bits, f.start_bit)?;
    }
    writeln!(out, "formula_ss_irs_bits={}", becc_bits(Scheme::SsIrs, l, t, 1, m)?)?;
    match becc_bits(Scheme::MsIrs, l, t, bl, m) {
        Ok(v) => writeln!(out, "formula_ms_irs_bits={v}")?,
        Err(e) => writeln!(out, "formula_ms_irs_bits=n/a ({e})")?,
    }
    Ok(())
}

fn main() -> ExitCode {
    // `-BL 3` is accepted as a synonym for `--bl 3`.
    let argv = std::env::args().map(|a| if a == "-BL" { "--bl".to_string() } else { a });
    let cli = Cli::parse_from(argv);
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Becc(a) => becc(a),
        Command::Latency(a) => show_latency(a),
        Command::BurstSweep(a) => sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
