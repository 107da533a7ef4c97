use super::{DependencyGraph, ProcessorError};
use crate::cdp::{nested_context, CdpError, CdpProblem, ContextualRule, NestedContext};
use crate::pattern::{forbidding_pattern, pi_orth, ForbiddenPattern, PatternSet};
use crate::term::Position;

/// A walk whose nested-context hole is forbidden by an orthogonal pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedWalk {
    /// Pair indices along the walk.
    pub walk: Vec<usize>,
    /// The pairs themselves, since indices go stale once pairs are deleted.
    pub pairs: Vec<ContextualRule>,
    pub nested: NestedContext,
    pub pattern: ForbiddenPattern,
    /// Where the pattern's position lands in the nested term.
    pub anchor: Position,
}

/// A pair every walk from which is blocked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScpDeletion {
    pub pair: usize,
    pub walks: Vec<BlockedWalk>,
}

/// What happened to the walks from one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkAnalysis {
    /// More walks than the cap.
    TooMany,
    Walks {
        blocked: Vec<BlockedWalk>,
        /// Walks with their nested context, hole position not forbidden.
        open: Vec<(Vec<usize>, NestedContext)>,
    },
}

/// Nests the contexts of every walk with `n` pairs from `start` and checks the
/// hole position against the orthogonal patterns `orth`.
pub fn analyse_walks(
    problem: &CdpProblem,
    graph: &DependencyGraph,
    orth: &PatternSet,
    start: usize,
    n: usize,
    walk_cap: usize,
) -> Result<WalkAnalysis, CdpError> {
    let Some(walks) = graph.walks(start, n, walk_cap) else {
        return Ok(WalkAnalysis::TooMany);
    };
    let mut blocked = Vec::new();
    let mut open = Vec::new();
    for walk in walks {
        let seq: Vec<ContextualRule> = walk.iter().map(|&i| problem.pairs()[i].clone()).collect();
        let nested = nested_context(&seq, problem.marking())?;
        match forbidding_pattern(orth, &nested.term, &nested.position) {
            Some((pattern, anchor)) => blocked.push(BlockedWalk {
                walk,
                pairs: seq,
                nested,
                pattern: pattern.clone(),
                anchor,
            }),
            None => open.push((walk, nested)),
        }
    }
    Ok(WalkAnalysis::Walks { blocked, open })
}

/// The pairs the simple context processor with bound `n` can delete, each
/// with the blocked walks justifying it.
pub fn scp_deletions(
    problem: &CdpProblem,
    graph: &DependencyGraph,
    n: usize,
    walk_cap: usize,
) -> Result<Vec<ScpDeletion>, ProcessorError> {
    if n < 2 {
        return Err(ProcessorError::ScpDepth(n));
    }
    let orth = pi_orth(problem.patterns(), problem.rules());
    if orth.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for i in 0..problem.pairs().len() {
        if let WalkAnalysis::Walks { blocked, open } = analyse_walks(problem, graph, &orth, i, n, walk_cap)? {
            if open.is_empty() {
                out.push(ScpDeletion { pair: i, walks: blocked });
            }
        }
    }
    Ok(out)
}

/// Deletes every pair all of whose walks with `n` pairs are blocked.
pub fn scp_processor(
    problem: &CdpProblem,
    n: usize,
    walk_cap: usize,
) -> Result<(CdpProblem, Vec<ScpDeletion>), ProcessorError> {
    let graph = super::dependency_graph(problem);
    let deletions = scp_deletions(problem, &graph, n, walk_cap)?;
    let kept = problem
        .pairs()
        .iter()
        .enumerate()
        .filter(|(i, _)| !deletions.iter().any(|d| d.pair == *i))
        .map(|(_, p)| p.clone())
        .collect();
    Ok((problem.with_pairs(kept), deletions))
}
