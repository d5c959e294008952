use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use specest::bench::{export_csv, format_sig, CellOutcome, ExportOptions, RunReport, ScenarioSuite};
use specest::stego::{self, save_samples_wav};
use specest::{Estimator, FrequencyGrid, PowerSpectrum, SpecError, WindowKind};

/// Classical spectral estimators, scenario bench and tone-in-audio detection.
#[derive(Parser, Debug)]
#[command(name = "specest", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the available scenario names, one per line.
    List {
        /// Extra scenarios from a TOML file.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run a scenario (or `all` built-ins) and write CSV spectra plus summary.csv.
    Run(RunArgs),
    /// Add a cosine to a carrier and write the result as 16-bit WAV.
    Embed(EmbedArgs),
    /// Estimate the frequency of a tone hidden in a WAV file.
    Detect(DetectArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Scenario name, or `all`.
    scenario: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of frequency grid points on [0, 0.5].
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fill the ms column of summary.csv (makes it run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "synth"])))]
struct EmbedArgs {
    /// Carrier WAV file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Seed for a synthetic correlated-noise carrier.
    #[arg(long)]
    synth: Option<u64>,
    /// Tone frequency in cycles/sample.
    #[arg(long)]
    freq: f64,
    #[arg(long, default_value_t = 1.0)]
    amp: f64,
    /// Number of samples to keep (analysis length).
    #[arg(long, default_value_t = stego::DEFAULT_ANALYSIS_LENGTH)]
    len: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// periodogram, bt, capon, yw or modcov.
    #[arg(long)]
    method: String,
    #[arg(long, default_value_t = 0)]
    order: usize,
    /// Lag window for bt: bartlett, parzen or rectangular.
    #[arg(long, default_value = "bartlett")]
    window: String,
    /// Analysis length; defaults to the whole file.
    #[arg(long)]
    len: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    /// Known tone frequency, to report the absolute error.
    #[arg(long = "true-freq")]
    true_freq: Option<f64>,
}

enum Failure {
    Usage(String),
    Runtime(SpecError),
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Runtime(e)
    }
}

fn suite(config: Option<&PathBuf>) -> Result<ScenarioSuite, Failure> {
    let suite = ScenarioSuite::builtin();
    match config {
        Some(path) => Ok(suite.with_config_file(path)?),
        None => Ok(suite),
    }
}

fn grid(size: Option<usize>) -> Result<FrequencyGrid, Failure> {
    match size {
        Some(g) if g < 3 => Err(Failure::Usage(format!("--grid {g}: need at least 3 points"))),
        Some(g) => Ok(FrequencyGrid::uniform(g)?),
        None => Ok(FrequencyGrid::default()),
    }
}

fn print_report(report: &RunReport) {
    for cell in &report.cells {
        let label = format!("{:<6} {:<28}", report.scenario.name, cell.estimator.to_string());
        match &cell.outcome {
            CellOutcome::Done { peaks, errors, .. } => {
                let peaks: Vec<String> = peaks
                    .iter()
                    .zip(errors)
                    .map(|(p, e)| {
                        format!(
                            "f={} ({} dB, err {})",
                            format_sig(p.frequency, 6),
                            format_sig(PowerSpectrum::db(p.value), 5),
                            format_sig(*e, 3)
                        )
                    })
                    .collect();
                println!("{label} {}", if peaks.is_empty() { "no peaks".into() } else { peaks.join("  ") });
            }
            CellOutcome::NotApplicable(msg) => println!("{label} {msg}"),
            CellOutcome::Failed(e) => println!("{label} failed: {e}"),
        }
    }
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let suite = suite(args.config.as_ref())?;
    grid(args.grid)?;
    let names: Vec<String> = if args.scenario == "all" {
        specest::bench::BUILTIN_NAMES.iter().map(|s| s.to_string()).collect()
    } else if suite.get(&args.scenario).is_some() {
        vec![args.scenario.clone()]
    } else {
        return Err(Failure::Usage(format!("unknown scenario '{}'", args.scenario)));
    };
    let mut reports = Vec::with_capacity(names.len());
    for name in &names {
        let report = suite.run(name, args.seed, args.grid)?;
        print_report(&report);
        reports.push(report);
    }
    let written = export_csv(&reports, &args.out, ExportOptions { timing: args.timing })?;
    println!("wrote {} files to {}", written.len(), args.out.display());
    Ok(())
}

fn embed(args: EmbedArgs) -> Result<(), Failure> {
    let carrier = match (&args.input, args.synth) {
        (Some(path), _) => stego::load_wav(path)?,
        (None, Some(seed)) => stego::synth_carrier(seed, args.len)?,
        (None, None) => unreachable!("clap enforces one carrier source"),
    };
    if !(args.freq > 0.0 && args.freq < 0.5) {
        return Err(Failure::Usage(format!("--freq {}: must lie in (0, 0.5)", args.freq)));
    }
    if args.len == 0 || args.len > carrier.len() {
        return Err(Failure::Usage(format!(
            "--len {}: carrier has {} samples",
            args.len,
            carrier.len()
        )));
    }
    let pkg = stego::embed(&carrier, args.freq, args.amp, args.len)?;
    let clipped = save_samples_wav(pkg.stego_signal.samples(), pkg.sample_rate, &args.out)?;
    if clipped > 0 {
        eprintln!("warning: clipped {clipped} samples outside [-1, 1]");
    }
    println!(
        "embedded f={} amp={} over {} samples into {}",
        args.freq,
        args.amp,
        args.len,
        args.out.display()
    );
    Ok(())
}

fn detect(args: DetectArgs) -> Result<(), Failure> {
    let window = WindowKind::parse(&args.window)
        .ok_or_else(|| Failure::Usage(format!("--window {}: unknown window", args.window)))?;
    let estimator = Estimator::parse(&args.method, args.order, window)
        .map_err(|e| Failure::Usage(format!("--method {} --order {}: {e}", args.method, args.order)))?;
    let grid = grid(args.grid)?;
    let carrier = stego::load_wav(&args.input)?;
    let len = args.len.unwrap_or(carrier.len());
    if len == 0 || len > carrier.len() {
        return Err(Failure::Usage(format!("--len {len}: file has {} samples", carrier.len())));
    }
    let signal = specest::RealSignal::new(carrier.samples()[..len].to_vec())?;
    let pkg = stego::StegoPackage {
        stego_signal: signal,
        true_frequency: args.true_freq.unwrap_or(f64::NAN),
        amplitude: f64::NAN,
        carrier_origin: carrier.origin().clone(),
        sample_rate: carrier.sample_rate(),
        analysis_length: len,
    };
    let report = stego::detect(&pkg, &estimator, &grid);
    let d = report.outcome?;
    println!("estimator: {estimator}");
    println!("analysis_length: {len}");
    println!("estimated_frequency: {}", format_sig(d.estimated_frequency, 12));
    println!("peak_db: {}", format_sig(PowerSpectrum::db(d.peak_value), 12));
    if args.true_freq.is_some() {
        println!("absolute_error: {}", format_sig(d.absolute_error, 12));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::List { config } => suite(config.as_ref()).map(|s| {
            for name in s.names() {
                println!("{name}");
            }
        }),
        Command::Run(args) => run(args),
        Command::Embed(args) => embed(args),
        Command::Detect(args) => detect(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
