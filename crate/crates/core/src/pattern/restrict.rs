use std::collections::BTreeSet;

use super::{Flag, ForbiddenPattern};
use crate::term::{match_term, Position, Rule, Term, Trs};

/// Positions `o.p` such that the pattern term matches `s|_o`.
pub fn anchor_positions(pattern: &ForbiddenPattern, s: &Term) -> Vec<Position> {
    s.subterms()
        .into_iter()
        .filter(|(_, sub)| match_term(pattern.term(), sub).is_some())
        .map(|(o, _)| o.concat(pattern.position()))
        .collect()
}

fn blocks(flag: Flag, anchor: &Position, q: &Position) -> bool {
    match flag {
        Flag::Here => anchor == q,
        Flag::Below => anchor.is_above(q),
        Flag::Above => q.is_above(anchor),
    }
}

/// The positions of `s` forbidden by the single pattern `pattern`.
pub fn pattern_positions(pattern: &ForbiddenPattern, s: &Term) -> BTreeSet<Position> {
    let anchors = anchor_positions(pattern, s);
    s.positions()
        .into_iter()
        .filter(|q| anchors.iter().any(|a| blocks(pattern.flag(), a, q)))
        .collect()
}

pub fn forbidden_positions<'a>(
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern>,
    s: &Term,
) -> BTreeSet<Position> {
    patterns
        .into_iter()
        .flat_map(|pi| pattern_positions(pi, s))
        .collect()
}

pub fn allowed_positions<'a>(
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern>,
    s: &Term,
) -> BTreeSet<Position> {
    let forbidden = forbidden_positions(patterns, s);
    s.positions()
        .into_iter()
        .filter(|q| !forbidden.contains(q))
        .collect()
}

/// The first pattern (with its anchor) forbidding `q` in `s`, if any.
///
/// For h- and b-patterns only matches at prefixes of `q` can forbid `q`, so
/// those are the only ones tried.
pub fn forbidding_pattern<'a>(
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern>,
    s: &Term,
    q: &Position,
) -> Option<(&'a ForbiddenPattern, Position)> {
    for pi in patterns {
        let candidates: Vec<Position> = match pi.flag() {
            Flag::Above => s.positions(),
            Flag::Here | Flag::Below => (0..=q.depth())
                .map(|k| Position::new(q.path()[..k].to_vec()))
                .collect(),
        };
        for o in candidates {
            let anchor = o.concat(pi.position());
            if !blocks(pi.flag(), &anchor, q) {
                continue;
            }
            if s.get(&o).is_some_and(|sub| match_term(pi.term(), sub).is_some()) {
                return Some((pi, anchor));
            }
        }
    }
    None
}

pub fn is_allowed<'a>(
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern>,
    s: &Term,
    q: &Position,
) -> bool {
    s.get(q).is_some() && forbidding_pattern(patterns, s, q).is_none()
}

/// One Π-rewrite step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiStep {
    pub position: Position,
    pub rule_index: usize,
    pub rule: Rule,
    pub result: Term,
}

/// All Π-steps from `t`, in (position, rule index) order.
pub fn pi_step<'a>(
    trs: &Trs,
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern> + Clone,
    t: &Term,
) -> Vec<PiStep> {
    let mut out = Vec::new();
    for p in t.function_positions() {
        let results = trs.rewrite_at(t, &p).expect("position taken from the term");
        if results.is_empty() || !is_allowed(patterns.clone(), t, &p) {
            continue;
        }
        for (rule_index, result) in results {
            out.push(PiStep {
                position: p.clone(),
                rule_index,
                rule: trs.rules()[rule_index].clone(),
                result,
            });
        }
    }
    out
}
