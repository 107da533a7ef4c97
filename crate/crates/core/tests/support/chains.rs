//! Random concrete chains over a CDP problem, built by forward simulation.

use fpterm::cdp::{CdpProblem, ChainStep};
use fpterm::pattern::{forbidding_pattern, pi_step};
use fpterm::term::{match_term, Position, Substitution, Symbol, Term, Var};
use rand::seq::IndexedRandom;
use rand::Rng;

use super::gen::ground_term;

pub fn ground_substitution<R: Rng>(rng: &mut R, vars: &[Var], symbols: &[Symbol], depth: usize) -> Substitution {
    vars.iter()
        .map(|v| (v.clone(), ground_term(rng, symbols, depth)))
        .collect()
}

/// Plain symbols usable for ground instances: the rules' signature plus
/// the plain versions of marked symbols, with a constant guaranteed.
pub fn plain_symbols(problem: &CdpProblem) -> Vec<Symbol> {
    let mut symbols: Vec<Symbol> = problem.rules().signature().iter().cloned().collect();
    if !symbols.iter().any(|f| f.arity() == 0) {
        symbols.push(Symbol::plain("c0", 0));
    }
    symbols
}

fn allowed(problem: &CdpProblem, term: &Term, q: &Position) -> bool {
    let erased = problem.erase(term).expect("chain terms erase");
    forbidding_pattern(problem.patterns(), &erased, q).is_none()
}

/// A chain as built, with the tracked position before each pair application.
#[derive(Clone, Debug)]
pub struct BuiltChain {
    pub steps: Vec<ChainStep>,
    pub tracked: Vec<Position>,
}

/// Tries to build a chain of exactly `len` pair applications, starting with
/// pair `start` under a random ground substitution and taking up to
/// `max_plain` random allowed plain steps between pair applications.
pub fn random_chain<R: Rng>(
    rng: &mut R,
    problem: &CdpProblem,
    start: usize,
    len: usize,
    max_plain: usize,
    depth: usize,
) -> Option<BuiltChain> {
    let symbols = plain_symbols(problem);
    let first = &problem.pairs()[start];
    let sigma = ground_substitution(rng, &first.lhs().vars(), &symbols, depth);
    let mut term = sigma.apply(first.lhs());
    let mut tracked = Position::root();
    let mut pair = first.clone();
    let mut sigma = sigma;
    let mut steps = Vec::new();
    let mut positions = Vec::new();
    loop {
        if !allowed(problem, &term, &tracked) {
            return None;
        }
        positions.push(tracked.clone());
        term = term.replace_at(&tracked, sigma.apply(&pair.plugged_rhs())).ok()?;
        tracked = tracked.concat(pair.hole_position());
        let mut plain = Vec::new();
        let token_rooted = pair.rhs().root().is_some_and(|f| f.is_token());
        if !token_rooted && steps.len() + 1 < len {
            for _ in 0..rng.random_range(0..=max_plain) {
                let erased = problem.erase(&term).ok()?;
                let candidates: Vec<_> = pi_step(problem.rules(), problem.patterns(), &erased)
                    .into_iter()
                    .filter(|s| !s.position.is_prefix_of(&tracked))
                    .collect();
                let Some(step) = candidates.choose(rng) else { break };
                let replacement = step.result.get(&step.position)?.clone();
                term = term.replace_at(&step.position, replacement).ok()?;
                plain.push((step.position.clone(), step.rule.clone()));
            }
        }
        steps.push(ChainStep {
            pair: pair.clone(),
            substitution: sigma.clone(),
            plain,
        });
        if steps.len() == len {
            return Some(BuiltChain { steps, tracked: positions });
        }
        let here = term.get(&tracked)?.clone();
        let next: Vec<(usize, Substitution)> = problem
            .pairs()
            .iter()
            .enumerate()
            .filter_map(|(j, p)| match_term(p.lhs(), &here).map(|s| (j, s)))
            .collect();
        let (j, s) = next.choose(rng)?.clone();
        pair = problem.pairs()[j].clone();
        sigma = s;
    }
}
