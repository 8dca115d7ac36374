//! Loads the bundled corpus and runs a few commands, as the CLI would.
//!
//!     cargo run --example fixture_reports

use nabelh1::fixture::load_fixture;
use nabelh1::report::run_command;
use nabelh1::SearchOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.json");
    let doc = load_fixture(path)?;
    let opts = SearchOptions::default();
    for (command, object) in [
        ("h1", "T1"),
        ("zeta", "T3"),
        ("inf-res", "T5"),
        ("seven-term", "T4"),
        ("torsor-product", "T1"),
    ] {
        let report = run_command(command, &doc, Some(object), &opts)?;
        println!(
            "== {command} {object}: {}",
            if report.passed { "pass" } else { "FAIL" }
        );
        print!("{}", report.to_human());
    }
    let suite = run_command("theorem-suite", &doc, None, &opts)?;
    println!(
        "== theorem-suite: {} checks, {} failures",
        suite.result["total"], suite.result["failures"]
    );
    Ok(())
}
