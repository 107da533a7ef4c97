//! Outermost rewriting as forbidden patterns, run over the bundled corpus.

use std::fs;
use std::path::Path;

use fpterm::cdp::Mode;
use fpterm::frontend::parse;
use fpterm::processors::{prove, ProverConfig};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/outermost");
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for path in files {
        let spec = parse(&fs::read_to_string(&path).unwrap()).unwrap();
        let encoded: Vec<String> = spec.patterns().iter().map(|p| p.to_string()).collect();
        let result = prove(&spec.problem(Mode::Strict).unwrap(), &ProverConfig::default());
        println!("{:<16} {:<7} {}", path.file_name().unwrap().to_string_lossy(), result.verdict.to_string(), encoded.join(" "));
    }
}
