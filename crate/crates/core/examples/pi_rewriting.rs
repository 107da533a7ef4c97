//! Rewriting with forbidden patterns: which positions stay reducible, one
//! restricted step, and a bounded derivation tree.

use fpterm::frontend::{parse, parse_term_in};
use fpterm::pattern::{allowed_positions, explore, forbidden_positions, pi_step, ExploreLimits};

fn main() {
    let spec = parse(include_str!("../data/lazy_list.trs")).expect("bundled file parses");
    let patterns = spec.patterns();
    let t = parse_term_in(&spec, "cons(0,cons(s(0),inf(s(s(0)))))").unwrap();

    let forbidden: Vec<String> = forbidden_positions(patterns.iter(), &t).iter().map(|p| p.to_string()).collect();
    println!("{t}");
    println!("  forbidden: {}", forbidden.join(" "));
    println!("  allowed:   {}", allowed_positions(patterns.iter(), &t).len());
    println!("  steps:     {}", pi_step(&spec.trs, patterns.iter(), &t).len());

    // the lazy selector still reaches its value
    let start = parse_term_in(&spec, "2nd(inf(0))").unwrap();
    let mut term = start.clone();
    print!("{term}");
    while let Some(step) = pi_step(&spec.trs, patterns.iter(), &term).into_iter().next() {
        term = step.result;
        print!(" -> {term}");
    }
    println!();

    let tree = explore(&spec.trs, patterns.iter(), &start, ExploreLimits::default());
    println!(
        "derivation tree: {} nodes, longest {} steps, normal form reached: {}",
        tree.root.size(),
        tree.max_length,
        tree.reached_normal_form
    );
}
