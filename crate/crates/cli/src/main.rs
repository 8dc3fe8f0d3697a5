use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use concord_cli::{
    cmd_analyze, cmd_double, cmd_double_table, cmd_metab, cmd_twobridge, CliError, MetabRequest,
    Report,
};

/// Concordance-order obstructions for knots, computed exactly.
#[derive(Parser, Debug)]
#[command(name = "concord", version)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a Seifert matrix: {"seifert": [[...], ...]} or a bare array of rows.
    Analyze {
        /// JSON file; use --matrix for inline input.
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        matrix: Option<String>,
    },
    /// The a-twisted double of the unknot.
    Double {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "table")]
        a: Option<BigInt>,
        /// Sweep a range of twists, one row per a.
        #[arg(long, conflicts_with = "a")]
        table: bool,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 12, allow_hyphen_values = true)]
        to: i64,
    },
    /// Two-bridge knot K(p, q).
    Twobridge { p: BigInt, q: BigInt },
    /// Enumerate metabolizers of (Z_{p^n})^{4k}.
    Metab {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        /// Diagonal form coefficients, comma separated; default 1,-1,1,-1,...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Option<Vec<i64>>,
        #[arg(long)]
        verify_structure: bool,
        #[arg(long)]
        replay: bool,
        #[arg(long)]
        budget_override: bool,
        /// Search only level profiles with k_i = k_{n-i}.
        #[arg(long)]
        symmetric_only: bool,
        /// Stop the search after this many seconds and report partial coverage.
        #[arg(long)]
        time_limit: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Analyze { path, matrix } => {
            let text = match (path, matrix) {
                (_, Some(m)) => m,
                (Some(p), None) => std::fs::read_to_string(&p).map_err(|e| {
                    CliError::InvalidInput(format!("cannot read {}: {e}", p.display()))
                })?,
                (None, None) => {
                    return Err(CliError::InvalidInput(
                        "give a file path or --matrix".into(),
                    ))
                }
            };
            cmd_analyze(&text)
        }
        Command::Double { a: Some(a), .. } => cmd_double(&a),
        Command::Double { from, to, .. } => cmd_double_table(from, to),
        Command::Twobridge { p, q } => cmd_twobridge(&p, &q),
        Command::Metab {
            p,
            n,
            k,
            eps,
            verify_structure,
            replay,
            budget_override,
            symmetric_only,
            time_limit,
        } => cmd_metab(&MetabRequest {
            p,
            n,
            k,
            eps,
            verify_structure,
            replay,
            budget_override,
            symmetric_only,
            time_limit: time_limit.map(Duration::from_secs),
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
