//! Synthesizing forbidden patterns, on the fly and in rounds.

use fpterm::cdp::Mode;
use fpterm::frontend::{forbidden_line, parse};
use fpterm::pattern::PatternSet;
use fpterm::synthesis::{sanity_warnings, synthesize, synthesize_problem, PairFilter, SynthesisConfig, SynthesisMode};

fn main() {
    let spec = parse(include_str!("../data/bare_loop.trs")).unwrap();
    let result = synthesize_problem(&spec.problem(Mode::Strict).unwrap(), &SynthesisConfig::default()).unwrap();
    println!("on the fly: {} {}", forbidden_line(result.patterns.iter()), result.verdict);

    let spec = parse(include_str!("../data/lazy_list_open.trs")).unwrap();
    let config = SynthesisConfig {
        mode: SynthesisMode::TwoPhase,
        pair_filter: PairFilter::NonStructural,
        ..SynthesisConfig::default()
    };
    let result = synthesize(&spec.trs, &PatternSet::new(), &config).unwrap();
    for round in &result.rounds {
        for s in &round.patterns {
            match &s.generalized_from {
                Some(raw) => println!("round {}: {} from {}", round.iteration, s.pattern, raw),
                None => println!("round {}: {}", round.iteration, s.pattern),
            }
        }
    }
    println!("two phase: {} after {} rounds", result.verdict, result.iterations);
    for w in sanity_warnings(&result.patterns, &spec.trs) {
        println!("warning: {w}");
    }
}
