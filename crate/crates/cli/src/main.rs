//! `pentaparity`: closed-form predictions, brute-force checks and the
//! exhaustive survey of class 2 pentanomials.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pentaparity",
    version,
    about = "Factor-count parity and irreducibility of binary pentanomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form verdicts for a pentanomial (--n, --s) or trinomial (--n, --k).
    Predict(PredictArgs),
    /// Brute-force irreducibility and factor count.
    Test(PolyArgs),
    /// Discriminant of the 0/1 lift mod 8, by closed form and/or resultant.
    Disc(DiscArgs),
    /// Power sums of the roots of the 0/1 lift via Newton's identities.
    Powersums(PowerSumArgs),
    /// Survey a range of pentanomials for irreducibility.
    Search(SearchArgs),
    /// Aggregate a survey output file.
    Stats(StatsArgs),
    /// Run the oracle-agreement suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    n: usize,
    /// Pentanomial gap.
    #[arg(long, conflicts_with = "k", required_unless_present = "k")]
    s: Option<usize>,
    /// Middle exponent of the trinomial X^n + X^k + 1.
    #[arg(long)]
    k: Option<usize>,
}

/// A pentanomial shape or an explicit polynomial in hex.
#[derive(Debug, Args)]
struct PolyArgs {
    #[arg(long, requires = "s", conflicts_with = "poly")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    s: Option<usize>,
    /// Hex coefficients, most significant digit first: `7` is X^2 + X + 1.
    #[arg(long, required_unless_present = "n")]
    poly: Option<String>,
    #[arg(long, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
}

#[derive(Debug, Args)]
struct DiscArgs {
    #[command(flatten)]
    target: PolyArgs,
    #[arg(long, value_enum, default_value_t = Oracle::Both)]
    oracle: Oracle,
}

#[derive(Debug, Args)]
struct PowerSumArgs {
    #[command(flatten)]
    target: PolyArgs,
    /// Largest index; defaults to twice the degree.
    #[arg(long)]
    upto: Option<usize>,
    /// `exact` or `2^k`.
    #[arg(long = "mod", default_value = "exact", value_parser = commands::parse_sum_modulus)]
    modulus: pentaparity::zpoly::SumModulus,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 7)]
    n_min: usize,
    /// Exclusive upper bound on n.
    #[arg(long, default_value_t = 300)]
    n_max: usize,
    #[arg(long, default_value = "even")]
    s_parity: pentaparity::search::SParity,
    /// `odd` or `all`; odd-gap runs default to all.
    #[arg(long)]
    n_parity: Option<pentaparity::search::NFilter>,
    /// Largest factor degree sought before the full test; 0 disables.
    #[arg(long, default_value_t = 13)]
    prefilter_depth: usize,
    /// Classify certified shapes by the full path too.
    #[arg(long)]
    no_prune: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
    /// Write records here (csv unless --format json); the table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Continue an interrupted run recorded in --out.
    #[arg(long, requires = "out")]
    resume: bool,
    /// Re-check this fraction of prefilter rejections with the full test.
    #[arg(long, value_parser = commands::parse_rate)]
    audit: Option<f64>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Survey output (csv, or json lines for .json/.jsonl).
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Cap every degree bound at this value.
    #[arg(long)]
    upto: Option<usize>,
    /// Random samples for the property suites.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Human,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Closed,
    Resultant,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line} (see --help)");
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
