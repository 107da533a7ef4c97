//! The context processor deleting a pair whose nested contexts hit an
//! orthogonal forbidden pattern, followed by the whole proof pipeline.

use fpterm::cdp::Mode;
use fpterm::frontend::{parse, render_result};
use fpterm::processors::{prove, scp_processor, ProverConfig};

fn main() {
    let spec = parse(include_str!("../data/growing_context.trs")).unwrap();
    let problem = spec.problem(Mode::Strict).unwrap();

    for n in [2, 3] {
        let (rest, deletions) = scp_processor(&problem, n, 10_000).unwrap();
        println!("SCP_{n}: {} deleted, {} left", deletions.len(), rest.pairs().len());
    }

    let spec8 = parse(include_str!("../data/lazy_list_below.trs")).unwrap();
    let problem8 = spec8.problem(Mode::Strict).unwrap();
    let (_, deletions) = scp_processor(&problem8, 3, 10_000).unwrap();
    for d in &deletions {
        println!("deletes {} ({} blocked walks)", problem8.pairs()[d.pair], d.walks.len());
    }

    let result = prove(&problem, &ProverConfig::default());
    print!("{}", render_result(&result));
}
