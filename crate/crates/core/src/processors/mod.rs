//! Processors on CDP problems and the proof search driving them.

mod graph;
mod poly;
mod scp;

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

pub use graph::{dependency_graph, DependencyGraph};
pub use poly::{find_orientation, LinearPoly, Orientation, PolyInterpretation};
pub use scp::{analyse_walks, scp_deletions, scp_processor, BlockedWalk, ScpDeletion, WalkAnalysis};

use crate::cdp::{CdpError, CdpProblem, ContextualRule};
use crate::pattern::{ForbiddenPattern, PatternSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProcessorError {
    #[error("the context processor needs a bound n > 1, got {0}")]
    ScpDepth(usize),
    #[error(transparent)]
    Cdp(#[from] CdpError),
}

/// One sub-problem per cyclic strongly connected component of the
/// dependency graph; no output means the problem is finite.
pub fn scc_processor(problem: &CdpProblem) -> Vec<CdpProblem> {
    scc_split(problem).1
}

fn scc_split(problem: &CdpProblem) -> (Vec<Vec<usize>>, Vec<CdpProblem>) {
    let comps = dependency_graph(problem).cyclic_components();
    let outputs = comps
        .iter()
        .map(|c| problem.with_pairs(c.iter().map(|&i| problem.pairs()[i].clone()).collect()))
        .collect();
    (comps, outputs)
}

/// Removes the strictly oriented pairs if an interpretation is found,
/// otherwise returns the problem unchanged.
pub fn reduction_pair_processor(problem: &CdpProblem, coeff_max: u64, budget: usize) -> CdpProblem {
    match find_orientation(problem, coeff_max, budget) {
        Some(o) => without(problem, &o.strict),
        None => problem.clone(),
    }
}

fn without(problem: &CdpProblem, removed: &[usize]) -> CdpProblem {
    problem.with_pairs(
        problem
            .pairs()
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, p)| p.clone())
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    Maybe,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "proved",
            Verdict::Maybe => "maybe",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverConfig {
    pub scp_depth: usize,
    pub coeff_max: u64,
    pub walk_cap: usize,
    /// Partial assignments tried per polynomial search.
    pub poly_budget: usize,
    pub timeout: Option<Duration>,
}

impl Default for ProverConfig {
    fn default() -> ProverConfig {
        ProverConfig {
            scp_depth: 3,
            coeff_max: 2,
            walk_cap: 10_000,
            poly_budget: 200_000,
            timeout: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Processor {
    DependencyGraph,
    Scp(usize),
    ReductionPair,
    Synthesis(usize),
}

impl fmt::Display for Processor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Processor::DependencyGraph => write!(f, "dependency graph"),
            Processor::Scp(n) => write!(f, "SCP_{n}"),
            Processor::ReductionPair => write!(f, "reduction pair"),
            Processor::Synthesis(n) => write!(f, "synthesis (n = {n})"),
        }
    }
}

/// A synthesized pattern together with the raw pattern it was generalized from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesizedPattern {
    pub pattern: ForbiddenPattern,
    /// The nested-context pattern before generalization, if generalization
    /// changed it.
    pub generalized_from: Option<ForbiddenPattern>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Pair indices of the input, one list per output problem.
    Components(Vec<Vec<usize>>),
    ScpDeletion {
        pair: ContextualRule,
        walks: Vec<BlockedWalk>,
    },
    Interpretation {
        interpretation: PolyInterpretation,
        strict: Vec<ContextualRule>,
    },
    Synthesis {
        pair: ContextualRule,
        patterns: Vec<SynthesizedPattern>,
    },
}

/// One processor application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub input_id: usize,
    pub input: CdpProblem,
    pub processor: Processor,
    pub outputs: Vec<(usize, CdpProblem)>,
    pub justification: Justification,
}

/// Returned by a stuck-problem handler: a replacement problem plus patterns
/// to add to every problem still waiting.
#[derive(Clone, Debug)]
pub struct Rescue {
    pub processor: Processor,
    pub justification: Justification,
    pub output: CdpProblem,
    pub new_patterns: Vec<ForbiddenPattern>,
}

#[derive(Clone, Debug)]
pub struct ProofResult {
    pub verdict: Verdict,
    pub trace: Vec<ProofNode>,
    /// Problems no processor could simplify.
    pub stuck: Vec<(usize, CdpProblem)>,
    pub timed_out: bool,
    /// Patterns added by the stuck handler, in order.
    pub added_patterns: PatternSet,
}

pub fn prove(problem: &CdpProblem, config: &ProverConfig) -> ProofResult {
    prove_with(problem, config, &mut |_| None)
}

/// Runs the pipeline dependency graph → SCP_n → reduction pair on a FIFO
/// worklist. When nothing applies, `on_stuck` gets a chance to rescue the
/// problem before it is given up.
pub fn prove_with(
    problem: &CdpProblem,
    config: &ProverConfig,
    on_stuck: &mut dyn FnMut(&CdpProblem) -> Option<Rescue>,
) -> ProofResult {
    let start = Instant::now();
    let mut next_id = 1;
    let mut queue: VecDeque<(usize, CdpProblem)> = VecDeque::from([(0, problem.clone())]);
    let mut trace = Vec::new();
    let mut stuck = Vec::new();
    let mut timed_out = false;
    let mut added_patterns = PatternSet::new();
    let mut fresh = |p: CdpProblem| {
        let id = next_id;
        next_id += 1;
        (id, p)
    };

    while let Some((id, current)) = queue.pop_front() {
        if current.is_empty() {
            continue;
        }
        if config.timeout.is_some_and(|t| start.elapsed() > t) {
            timed_out = true;
            stuck.push((id, current));
            stuck.extend(queue.drain(..));
            break;
        }

        let (comps, outputs) = scc_split(&current);
        let unchanged = comps.len() == 1 && comps[0].len() == current.pairs().len();
        if !unchanged {
            let outputs: Vec<_> = outputs.into_iter().map(&mut fresh).collect();
            queue.extend(outputs.iter().cloned());
            trace.push(ProofNode {
                input_id: id,
                input: current,
                processor: Processor::DependencyGraph,
                outputs,
                justification: Justification::Components(comps),
            });
            continue;
        }

        let graph = dependency_graph(&current);
        let deletions = scp_deletions(&current, &graph, config.scp_depth, config.walk_cap)
            .expect("bound checked by the caller; marking built from the problem");
        if !deletions.is_empty() {
            let (mut in_id, mut input) = (id, current.clone());
            for d in deletions {
                let pair = current.pairs()[d.pair].clone();
                let reduced = input.with_pairs(
                    input
                        .pairs()
                        .iter()
                        .filter(|p| !p.same_pair(&pair))
                        .cloned()
                        .collect(),
                );
                let (out_id, out) = fresh(reduced);
                trace.push(ProofNode {
                    input_id: in_id,
                    input,
                    processor: Processor::Scp(config.scp_depth),
                    outputs: vec![(out_id, out.clone())],
                    justification: Justification::ScpDeletion { pair, walks: d.walks },
                });
                (in_id, input) = (out_id, out);
            }
            queue.push_back((in_id, input));
            continue;
        }

        if let Some(o) = find_orientation(&current, config.coeff_max, config.poly_budget) {
            let strict = o.strict.iter().map(|&i| current.pairs()[i].clone()).collect();
            let out = fresh(without(&current, &o.strict));
            queue.push_back(out.clone());
            trace.push(ProofNode {
                input_id: id,
                input: current,
                processor: Processor::ReductionPair,
                outputs: vec![out],
                justification: Justification::Interpretation {
                    interpretation: o.interpretation,
                    strict,
                },
            });
            continue;
        }

        match on_stuck(&current) {
            Some(rescue) => {
                if !rescue.new_patterns.is_empty() {
                    added_patterns.extend(rescue.new_patterns.iter().cloned());
                    for (_, waiting) in queue.iter_mut() {
                        let mut pats = waiting.patterns().clone();
                        pats.extend(rescue.new_patterns.iter().cloned());
                        *waiting = waiting
                            .with_patterns(pats)
                            .expect("synthesized patterns never carry flag a");
                    }
                }
                let out = fresh(rescue.output);
                queue.push_back(out.clone());
                trace.push(ProofNode {
                    input_id: id,
                    input: current,
                    processor: rescue.processor,
                    outputs: vec![out],
                    justification: rescue.justification,
                });
            }
            None => stuck.push((id, current)),
        }
    }

    let verdict = if stuck.is_empty() { Verdict::Proved } else { Verdict::Maybe };
    ProofResult {
        verdict,
        trace,
        stuck,
        timed_out,
        added_patterns,
    }
}
