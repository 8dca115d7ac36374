//! Regenerates `fixtures/corpus.json` from library constructions.
//!
//!     cargo run --example build_corpus

use nabelh1::corpus::bundled_corpus;
use nabelh1::fixture::resolve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = resolve(bundled_corpus()?)?;
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.json");
    std::fs::write(path, doc.emit())?;
    println!(
        "wrote {} bimodules, {} extensions, {} torsors to {path}",
        doc.bimodules.len(),
        doc.extensions.len(),
        doc.torsors.len()
    );
    Ok(())
}
