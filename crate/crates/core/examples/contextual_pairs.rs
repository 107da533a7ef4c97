//! Building contextual dependency pairs, in both construction modes.

use fpterm::cdp::{build_cdps, Mode};
use fpterm::frontend::parse;
use fpterm::pattern::stb;

fn main() {
    let spec = parse(include_str!("../data/f_then_g.trs")).unwrap();
    let patterns = spec.patterns();
    println!("stable patterns: {}", stb(&patterns, &spec.trs).len());
    for mode in [Mode::Compat, Mode::Strict] {
        let problem = build_cdps(&spec.trs, &patterns, mode).unwrap();
        println!("{mode:?}: {} pairs", problem.pairs().len());
        for p in problem.pairs() {
            println!("  {p}    ({})", p.origin());
        }
    }
}
