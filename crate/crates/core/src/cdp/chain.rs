//! Replaying concrete CDP chains step by step. Used to check the prover's
//! processors against actual chains; the prover itself never builds chains.

use super::{CdpError, CdpProblem, ContextualRule, Origin};
use crate::pattern::forbidding_pattern;
use crate::term::{match_term, Position, Rule, Substitution, Term};

/// One pair application followed by plain rewrite steps that stay away from
/// (not above or at) the tracked position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub pair: ContextualRule,
    pub substitution: Substitution,
    pub plain: Vec<(Position, Rule)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Pair(Origin),
    Rule,
}

/// A single rewrite step of a replayed chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayedStep {
    pub before: Term,
    pub position: Position,
    pub kind: StepKind,
    pub after: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainViolation {
    #[error("step {0}: the pair is not part of the problem")]
    UnknownPair(usize),
    #[error("step {0}: a plain step uses a rule outside the problem")]
    UnknownRule(usize),
    #[error("step {0}: the pair's instantiated left-hand side is not at the tracked position")]
    LhsMismatch(usize),
    #[error("step {step}: the rule does not apply at {position}")]
    RuleMismatch { step: usize, position: Position },
    #[error("step {step}: position {position} is forbidden")]
    Forbidden { step: usize, position: Position },
    #[error("step {step}: plain step at {position} is at or above the tracked position")]
    AboveTracked { step: usize, position: Position },
    #[error("step {0}: plain steps after a token-rooted right-hand side")]
    TokenInterlude(usize),
    #[error(transparent)]
    Malformed(#[from] CdpError),
}

fn check_allowed(problem: &CdpProblem, term: &Term, q: &Position, step: usize) -> Result<(), ChainViolation> {
    let erased = problem.erase(term)?;
    if forbidding_pattern(problem.patterns(), &erased, q).is_some() {
        return Err(ChainViolation::Forbidden {
            step,
            position: q.clone(),
        });
    }
    Ok(())
}

/// Replays `steps` from the first pair's instantiated left-hand side and
/// returns every single rewrite step, or the first violated condition.
pub fn replay_chain(problem: &CdpProblem, steps: &[ChainStep]) -> Result<Vec<ReplayedStep>, ChainViolation> {
    let mut out = Vec::new();
    let Some(first) = steps.first() else {
        return Ok(out);
    };
    let mut term = first.substitution.apply(first.pair.lhs());
    let mut tracked = Position::root();
    for (i, step) in steps.iter().enumerate() {
        if problem.index_of(&step.pair).is_none() {
            return Err(ChainViolation::UnknownPair(i));
        }
        let sigma = &step.substitution;
        if term.get(&tracked) != Some(&sigma.apply(step.pair.lhs())) {
            return Err(ChainViolation::LhsMismatch(i));
        }
        check_allowed(problem, &term, &tracked, i)?;
        let after = term.replace_at(&tracked, sigma.apply(&step.pair.plugged_rhs()))
            .map_err(CdpError::from)?;
        out.push(ReplayedStep {
            before: term,
            position: tracked.clone(),
            kind: StepKind::Pair(step.pair.origin()),
            after: after.clone(),
        });
        term = after;
        tracked = tracked.concat(step.pair.hole_position());

        if step.pair.rhs().root().is_some_and(|f| f.is_token()) && !step.plain.is_empty() {
            return Err(ChainViolation::TokenInterlude(i));
        }
        for (q, rule) in &step.plain {
            if !problem.rules().rules().contains(rule) {
                return Err(ChainViolation::UnknownRule(i));
            }
            if q.is_prefix_of(&tracked) {
                return Err(ChainViolation::AboveTracked {
                    step: i,
                    position: q.clone(),
                });
            }
            let mismatch = || ChainViolation::RuleMismatch {
                step: i,
                position: q.clone(),
            };
            let redex = term.get(q).ok_or_else(mismatch)?;
            let sigma = match_term(rule.lhs(), redex).ok_or_else(mismatch)?;
            check_allowed(problem, &term, q, i)?;
            let after = term.replace_at(q, sigma.apply(rule.rhs())).map_err(CdpError::from)?;
            out.push(ReplayedStep {
                before: term,
                position: q.clone(),
                kind: StepKind::Rule,
                after: after.clone(),
            });
            term = after;
        }
    }
    Ok(out)
}

pub fn validate_chain(problem: &CdpProblem, steps: &[ChainStep]) -> bool {
    replay_chain(problem, steps).is_ok()
}
