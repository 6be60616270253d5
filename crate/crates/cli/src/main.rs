use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use unicent_cli::{parse_levi_labels, run, Command, Format, Options, DEFAULT_MAX_RANK, EXIT_USAGE};

/// Topological invariants of universal centralizers from root data.
#[derive(Parser, Debug)]
#[command(name = "unicent", version, about)]
struct Cli {
    /// info | pi0 | count | epoly | poincare | cgbetti | jgbetti | check
    command: Command,

    /// Group spec, e.g. `A3:sc`, `A1xA2:adjoint`, `A1:lattice=[[2]]`
    spec: String,

    /// Output format: table or json
    #[arg(long, default_value = "table")]
    format: Format,

    /// For `pi0`: a single Levi set as 1-based labels, e.g. `1,3`
    #[arg(long)]
    levi: Option<String>,

    /// For `pi0`: list every Levi set (the default)
    #[arg(long)]
    all: bool,

    /// Refuse groups of larger rank
    #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
    max_rank: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let levi = match cli.levi.as_deref().map(parse_levi_labels).transpose() {
        Ok(levi) => levi,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let opts = Options {
        format: cli.format,
        levi,
        all: cli.all,
        max_rank: cli.max_rank,
    };
    let outcome = run(cli.command, &cli.spec, &opts);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
