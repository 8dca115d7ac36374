//! `nabelh1 <command> --fixture f.json --object name [flags]`
//!
//! Exit status: 0 when the command succeeds and every check passes, 1 when a
//! computation fails or a check does not hold, 2 on invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nabelh1::fixture::load_fixture;
use nabelh1::report::{run_command, Format, COMMANDS};
use nabelh1::SearchOptions;

#[derive(Parser)]
#[command(
    name = "nabelh1",
    version,
    about = "Non-abelian first cohomology of finite topological groups"
)]
struct Cli {
    /// One of: validate, h0, h1, h2, inn, zeta, group-structure, inf-res,
    /// seven-term, torsors, torsor-product, theorem-suite
    command: String,
    /// Fixture JSON file
    #[arg(long)]
    fixture: PathBuf,
    /// Object to run on; validate and theorem-suite default to the whole file.
    #[arg(long)]
    object: Option<String>,
    /// Enumerate all crossed homomorphisms, not only continuous ones.
    #[arg(long)]
    no_continuity: bool,
    /// Largest search space an enumeration may visit before giving up
    #[arg(long, default_value_t = SearchOptions::DEFAULT_SIZE_CAP)]
    size_cap: u64,
    /// human or json
    #[arg(long, default_value = "human")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !COMMANDS.contains(&cli.command.as_str()) {
        eprintln!(
            "error: unknown command \"{}\" (expected one of {})",
            cli.command,
            COMMANDS.join(", ")
        );
        return ExitCode::from(2);
    }
    let doc = match load_fixture(&cli.fixture) {
        Ok(doc) => doc,
        Err(errors) => {
            eprintln!("{errors}");
            return ExitCode::from(2);
        }
    };
    let opts = SearchOptions {
        continuous_only: !cli.no_continuity,
        size_cap: cli.size_cap,
    };
    match run_command(&cli.command, &doc, cli.object.as_deref(), &opts) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
