use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use monogamy_core::monogamy::LemmaMode;
use monogamy_core::qlinalg::Dims;
use monogamy_core::roof::RoofOptions;
use monogamy_core::states::{Family, StateParams, StateSpec};
use monogamy_lab::campaign::{run_campaign_with, RunOverrides};
use monogamy_lab::describe::{describe_state, render_table};
use monogamy_lab::scan::{lemma1_scan, write_scan_csv};
use monogamy_lab::{fmt_f64, CampaignConfig, Exponent, LabError, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "monogamy-lab", version, about = "Monogamy and polygamy inequality campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a campaign described by a JSON config.
    Run(RunArgs),
    /// Scan the scalar inequality over a grid of its domain.
    ScanLemma1(ScanArgs),
    /// Print the negativity-family measures of one state.
    Describe(DescribeArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config seed; MONOGAMY_LAB_SEED sits between the two.
    #[arg(long, env = "MONOGAMY_LAB_SEED")]
    seed: Option<u64>,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Overrides the config output_dir.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    step: f64,
    /// Comma-separated exponents; `4ln2` is accepted.
    #[arg(long = "alpha", value_delimiter = ',', required = true)]
    exponents: Vec<Exponent>,
    #[arg(long)]
    mode: LemmaMode,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DescribeArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Number of qubits.
    #[arg(long, conflicts_with = "dims")]
    n: Option<usize>,
    /// Comma-separated local dimensions.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// A cut as comma-separated subsystem indices; repeat for several cuts.
    #[arg(long = "cuts")]
    cuts: Vec<String>,
    #[arg(long)]
    visibility: Option<f64>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    re: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    im: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<(), LabError> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(LabError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_cut(s: &str) -> Result<Vec<usize>, LabError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| LabError::Usage(format!("bad cut `{s}`")))
        })
        .collect()
}

fn run(args: RunArgs) -> Result<i32, LabError> {
    let cfg = CampaignConfig::from_path(&args.config)?;
    let overrides = RunOverrides {
        seed: args.seed,
        jobs: args.jobs,
        output_dir: args.output,
    };
    let summary = run_campaign_with(&cfg, &overrides)?;
    for (i, s) in summary.suites.iter().enumerate() {
        emit(&format!(
            "suite {i} {}: verified {} inconclusive {} violated {} min_residual {} ({:.2}s)\n",
            s.inequality_id,
            s.n_verified,
            s.n_inconclusive,
            s.n_violated,
            fmt_f64(s.min_residual),
            s.wall_time_seconds
        ))?;
    }
    Ok(summary.exit_code())
}

fn scan(args: ScanArgs) -> Result<i32, LabError> {
    let exps: Vec<f64> = args.exponents.iter().map(|e| e.value()).collect();
    let report = lemma1_scan(args.step, &exps, args.mode)?;
    match &args.output {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| LabError::Io {
                path: path.clone(),
                source: e,
            })?;
            let mut w = std::io::BufWriter::new(file);
            write_scan_csv(&mut w, args.step, &exps, args.mode)?;
            w.flush().map_err(|e| LabError::Io {
                path: path.clone(),
                source: e,
            })?;
        }
        None => {
            let mut buf = Vec::new();
            write_scan_csv(&mut buf, args.step, &exps, args.mode)?;
            emit(&String::from_utf8(buf).expect("CSV is ASCII"))?;
        }
    }
    for m in &report.minima {
        eprintln!(
            "exponent {} points {} min_residual {} at ({}, {})",
            fmt_f64(m.exponent),
            m.points,
            fmt_f64(m.residual),
            fmt_f64(m.x),
            fmt_f64(m.y)
        );
    }
    Ok(0)
}

fn describe(args: DescribeArgs) -> Result<i32, LabError> {
    let local = match (args.n, args.dims) {
        (Some(n), None) => vec![2; n],
        (None, Some(d)) => d,
        _ => return Err(LabError::Usage("give exactly one of --n or --dims".into())),
    };
    let mut spec = StateSpec::new(args.family, Dims::new(local)?);
    spec.params = StateParams {
        visibility: args.visibility,
        rank: args.rank,
        re: args.re,
        im: args.im,
    };
    spec.seed = args.seed;
    let cuts = args.cuts.iter().map(|c| parse_cut(c)).collect::<Result<Vec<_>, _>>()?;
    let desc = describe_state(&spec, &cuts, &RoofOptions::default())?;
    if args.json {
        emit(&(serde_json::to_string_pretty(&desc).expect("description serializes") + "\n"))?;
    } else {
        emit(&render_table(&desc))?;
    }
    Ok(0)
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for violations, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::ScanLemma1(a) => scan(a),
        Command::Describe(a) => describe(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
