//! Synthesizing forbidden patterns that let the context processor delete
//! pairs, either while proving (on the fly) or in rounds before proving
//! from scratch (two phase).

use crate::cdp::{build_cdps, CdpError, CdpProblem, ContextualRule, Mode};
use crate::pattern::{generalize, in_pi_orth, pi_orth, Flag, ForbiddenPattern, PatternError, PatternSet};
use crate::processors::{
    analyse_walks, dependency_graph, prove, prove_with, DependencyGraph, Justification, ProofNode, Processor,
    ProverConfig, Rescue, SynthesizedPattern, Verdict, WalkAnalysis,
};
use crate::term::{overlaps, rename_away, unify, Renameable, Trs};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthesisError {
    #[error("synthesis needs a depth n > 1, got {0}")]
    Depth(usize),
    #[error(transparent)]
    Cdp(#[from] CdpError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SynthesisMode {
    #[default]
    OnTheFly,
    TwoPhase,
}

/// Which pairs patterns are synthesized for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum PairFilter {
    #[default]
    All,
    NonStructural,
    Explicit(Vec<ContextualRule>),
}

impl PairFilter {
    pub fn admits(&self, pair: &ContextualRule) -> bool {
        match self {
            PairFilter::All => true,
            PairFilter::NonStructural => !classify_structural(pair),
            PairFilter::Explicit(list) => list.iter().any(|p| p.same_pair(pair)),
        }
    }
}

/// Variable descent, activation and shift pairs are structural.
pub fn classify_structural(pair: &ContextualRule) -> bool {
    pair.origin().is_structural()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisConfig {
    pub depth: usize,
    pub mode: SynthesisMode,
    pub pair_filter: PairFilter,
    /// Patterns with more symbols and variables than this are dropped.
    pub max_pattern_size: usize,
    /// Rounds of the two-phase mode.
    pub max_iterations: usize,
    pub cdp_mode: Mode,
    /// Settings for the proof attempts; its context-processor bound is
    /// replaced by `depth`.
    pub prover: ProverConfig,
}

impl Default for SynthesisConfig {
    fn default() -> SynthesisConfig {
        SynthesisConfig {
            depth: 2,
            mode: SynthesisMode::OnTheFly,
            pair_filter: PairFilter::All,
            max_pattern_size: 25,
            max_iterations: 5,
            cdp_mode: Mode::Strict,
            prover: ProverConfig::default(),
        }
    }
}

/// Patterns synthesized for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSynthesis {
    pub patterns: Vec<SynthesizedPattern>,
    /// Every open walk got a pattern, so the pair becomes deletable.
    pub complete: bool,
}

/// For every walk with `n` pairs from `pair` in `graph` whose hole is not
/// already forbidden, the generalized pattern forbidding exactly that hole.
pub fn synthesize_for_pair(
    problem: &CdpProblem,
    graph: &DependencyGraph,
    pair: usize,
    n: usize,
    walk_cap: usize,
    max_pattern_size: usize,
) -> Result<PairSynthesis, SynthesisError> {
    if n < 2 {
        return Err(SynthesisError::Depth(n));
    }
    let orth = pi_orth(problem.patterns(), problem.rules());
    let open = match analyse_walks(problem, graph, &orth, pair, n, walk_cap)? {
        WalkAnalysis::TooMany => {
            return Ok(PairSynthesis {
                patterns: Vec::new(),
                complete: false,
            })
        }
        WalkAnalysis::Walks { open, .. } => open,
    };
    let mut patterns: Vec<SynthesizedPattern> = Vec::new();
    let mut complete = true;
    for (_, nested) in open {
        let nested = nested.prettified();
        let raw = ForbiddenPattern::new(nested.term, nested.position, Flag::Here)?;
        let general = generalize(&raw, problem.rules())?.prettified();
        if general.term().size() > max_pattern_size {
            complete = false;
            continue;
        }
        if patterns.iter().any(|s| s.pattern.is_variant_of(&general)) {
            continue;
        }
        let generalized_from = (!general.is_variant_of(&raw)).then_some(raw);
        patterns.push(SynthesizedPattern {
            pattern: general,
            generalized_from,
        });
    }
    Ok(PairSynthesis { patterns, complete })
}

/// One synthesis event of a two-phase round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundEntry {
    pub iteration: usize,
    pub pair: ContextualRule,
    pub patterns: Vec<SynthesizedPattern>,
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    /// Synthesized patterns, in order of creation.
    pub patterns: PatternSet,
    pub verdict: Verdict,
    pub trace: Vec<ProofNode>,
    pub iterations: usize,
    /// Two-phase rounds; empty on the fly, where synthesis is in the trace.
    pub rounds: Vec<RoundEntry>,
    pub warnings: Vec<String>,
}

fn filtered(problem: &CdpProblem, filter: &PairFilter) -> Vec<usize> {
    (0..problem.pairs().len())
        .filter(|&i| filter.admits(&problem.pairs()[i]))
        .collect()
}

/// Runs synthesis on `trs` starting from the patterns `initial`.
pub fn synthesize(trs: &Trs, initial: &PatternSet, config: &SynthesisConfig) -> Result<SynthesisResult, SynthesisError> {
    let problem = build_cdps(trs, initial, config.cdp_mode)?;
    synthesize_problem(&problem, config)
}

/// Runs synthesis on a given CDP problem.
pub fn synthesize_problem(problem: &CdpProblem, config: &SynthesisConfig) -> Result<SynthesisResult, SynthesisError> {
    if config.depth < 2 {
        return Err(SynthesisError::Depth(config.depth));
    }
    let prover = ProverConfig {
        scp_depth: config.depth,
        ..config.prover.clone()
    };
    let mut result = match config.mode {
        SynthesisMode::OnTheFly => on_the_fly(problem, config, &prover),
        SynthesisMode::TwoPhase => two_phase(problem, config, &prover)?,
    };
    result.warnings = sanity_warnings(&result.patterns, problem.rules());
    Ok(result)
}

fn on_the_fly(problem: &CdpProblem, config: &SynthesisConfig, prover: &ProverConfig) -> SynthesisResult {
    let mut rescue = |current: &CdpProblem| -> Option<Rescue> {
        let graph = dependency_graph(current);
        for i in filtered(current, &config.pair_filter) {
            let Ok(found) = synthesize_for_pair(current, &graph, i, config.depth, prover.walk_cap, config.max_pattern_size)
            else {
                continue;
            };
            if !found.complete || found.patterns.is_empty() {
                continue;
            }
            let mut pats = current.patterns().clone();
            pats.extend(found.patterns.iter().map(|s| s.pattern.clone()));
            let extended = current.with_patterns(pats).ok()?;
            // the deletion is only taken if the context processor itself now
            // blocks every walk from the pair
            let orth = pi_orth(extended.patterns(), extended.rules());
            let deletable = matches!(
                analyse_walks(&extended, &graph, &orth, i, config.depth, prover.walk_cap),
                Ok(WalkAnalysis::Walks { ref open, .. }) if open.is_empty()
            );
            if !deletable {
                continue;
            }
            let pair = current.pairs()[i].clone();
            let rest = extended
                .pairs()
                .iter()
                .filter(|p| !p.same_pair(&pair))
                .cloned()
                .collect();
            return Some(Rescue {
                processor: Processor::Synthesis(config.depth),
                new_patterns: found.patterns.iter().map(|s| s.pattern.clone()).collect(),
                output: extended.with_pairs(rest),
                justification: Justification::Synthesis {
                    pair,
                    patterns: found.patterns,
                },
            });
        }
        None
    };
    let proof = prove_with(problem, prover, &mut rescue);
    SynthesisResult {
        patterns: proof.added_patterns,
        verdict: proof.verdict,
        trace: proof.trace,
        iterations: 1,
        rounds: Vec::new(),
        warnings: Vec::new(),
    }
}

fn two_phase(problem: &CdpProblem, config: &SynthesisConfig, prover: &ProverConfig) -> Result<SynthesisResult, SynthesisError> {
    let mut all = problem.patterns().clone();
    let mut synthesized = PatternSet::new();
    let mut rounds = Vec::new();
    let mut targets = vec![problem.clone()];
    let mut last = prove(problem, prover);
    let mut iterations = 0;
    for iteration in 1..=config.max_iterations {
        iterations = iteration;
        let mut added = false;
        for target in &targets {
            let keep = filtered(target, &config.pair_filter);
            let sub = target.with_pairs(keep.iter().map(|&i| target.pairs()[i].clone()).collect());
            let graph = dependency_graph(target).restrict(&keep);
            for i in 0..sub.pairs().len() {
                let found =
                    synthesize_for_pair(&sub, &graph, i, config.depth, prover.walk_cap, config.max_pattern_size)?;
                let fresh: Vec<SynthesizedPattern> = found
                    .patterns
                    .into_iter()
                    .filter(|s| !all.contains_variant(&s.pattern))
                    .collect();
                for s in &fresh {
                    all.insert(s.pattern.clone());
                    synthesized.insert(s.pattern.clone());
                    added = true;
                }
                if !fresh.is_empty() {
                    rounds.push(RoundEntry {
                        iteration,
                        pair: sub.pairs()[i].clone(),
                        patterns: fresh,
                    });
                }
            }
        }
        if !added {
            break;
        }
        let rebuilt = build_cdps(problem.rules(), &all, config.cdp_mode)?;
        last = prove(&rebuilt, prover);
        if last.verdict == Verdict::Proved {
            break;
        }
        targets = last.stuck.iter().map(|(_, p)| p.clone()).collect();
    }
    Ok(SynthesisResult {
        patterns: synthesized,
        verdict: last.verdict,
        trace: last.trace,
        iterations,
        rounds,
        warnings: Vec::new(),
    })
}

/// Heuristic checks on a pattern set; problems are reported, never enforced.
///
/// A pattern is suspicious if no rule overlaps it at a position it forbids
/// (it then blocks nothing), and two patterns are if one's term unifies with
/// a non-variable subterm of the other.
pub fn sanity_warnings(patterns: &PatternSet, trs: &Trs) -> Vec<String> {
    let mut out = Vec::new();
    for pi in patterns {
        let t = pi.term();
        let forbids_redex = t.positions().iter().any(|q| {
            let forbidden = match pi.flag() {
                Flag::Here => q == pi.position(),
                Flag::Below => pi.position().is_above(q),
                Flag::Above => q.is_above(pi.position()),
            };
            forbidden && (t.get(q).is_some_and(|s| s.is_var()) || trs.rules().iter().any(|r| overlaps(r, t, q)))
        });
        if !forbids_redex {
            out.push(format!("pattern {pi} forbids no position a rule can rewrite"));
        }
    }
    for (i, a) in patterns.iter().enumerate() {
        for b in patterns.iter().skip(i + 1) {
            let b2 = rename_away(b, &a.term().var_set());
            let clash = |x: &ForbiddenPattern, y: &ForbiddenPattern| {
                y.term()
                    .function_positions()
                    .iter()
                    .any(|q| unify(x.term(), y.term().get(q).expect("own position")).is_some())
            };
            if clash(a, &b2) || clash(&b2, a) {
                out.push(format!("patterns {a} and {b} overlap"));
            }
        }
    }
    out
}

/// Whether every pattern of the set is orthogonal to `trs`.
pub fn all_orthogonal(patterns: &PatternSet, trs: &Trs) -> bool {
    patterns.iter().all(|p| in_pi_orth(p, trs))
}
