use super::{Flag, ForbiddenPattern, PatternError, PatternSet};
use crate::term::{overlaps, FreshVars, Position, Term, Trs};

/// Non-variable positions of the pattern term where a rule overlap would make
/// the pattern unstable (`strictly_below` also counts positions under the
/// pattern position, not only parallel ones).
fn offending_overlaps(pi: &ForbiddenPattern, trs: &Trs, strictly_below: bool) -> Vec<Position> {
    let p = pi.position();
    pi.term()
        .function_positions()
        .into_iter()
        .filter(|q| q.is_parallel_to(p) || (strictly_below && p.is_above(q)))
        .filter(|q| trs.rules().iter().any(|r| overlaps(r, pi.term(), q)))
        .collect()
}

pub fn is_stable(pi: &ForbiddenPattern, trs: &Trs) -> bool {
    match pi.flag() {
        Flag::Above => false,
        Flag::Below => pi.term().is_linear() && offending_overlaps(pi, trs, false).is_empty(),
        Flag::Here => pi.term().is_linear() && offending_overlaps(pi, trs, true).is_empty(),
    }
}

/// The stable patterns of `patterns`.
pub fn stb(patterns: &PatternSet, trs: &Trs) -> PatternSet {
    patterns.iter().filter(|p| is_stable(p, trs)).cloned().collect()
}

pub fn in_pi_orth(pi: &ForbiddenPattern, trs: &Trs) -> bool {
    pi.flag() != Flag::Above && pi.term().is_linear() && offending_overlaps(pi, trs, true).is_empty()
}

pub fn pi_orth(patterns: &PatternSet, trs: &Trs) -> PatternSet {
    patterns.iter().filter(|p| in_pi_orth(p, trs)).cloned().collect()
}

fn linearize(t: &Term, fresh: &mut FreshVars) -> Term {
    let mut seen = std::collections::BTreeSet::new();
    t.map_vars(&mut |v| {
        if seen.insert(v.clone()) {
            Term::Var(v.clone())
        } else {
            Term::Var(fresh.fresh(v.name()))
        }
    })
}

/// Makes a pattern orthogonal to `trs`: linearize, then abstract overlapped
/// subterms parallel to or strictly below the pattern position, innermost
/// first. Every term matched by the input is matched by the output.
pub fn generalize(pi: &ForbiddenPattern, trs: &Trs) -> Result<ForbiddenPattern, PatternError> {
    if pi.flag() == Flag::Above {
        return Err(PatternError::AboveFlag(pi.to_string()));
    }
    let mut fresh = FreshVars::new(pi.term().vars());
    let mut term = linearize(pi.term(), &mut fresh);
    loop {
        let current = ForbiddenPattern::new(term.clone(), pi.position().clone(), pi.flag())?;
        let offending = offending_overlaps(&current, trs, true);
        let innermost = offending
            .iter()
            .find(|q| !offending.iter().any(|r| q.is_above(r)));
        let Some(q) = innermost else {
            return Ok(current);
        };
        debug_assert!(!q.is_prefix_of(pi.position()));
        let v = fresh.fresh("y");
        term = term.replace_at(q, Term::Var(v))?;
    }
}

/// Forbids rewriting strictly below any redex, which makes Π-rewriting
/// coincide with outermost rewriting.
pub fn outermost_encode(trs: &Trs) -> PatternSet {
    trs.rules()
        .iter()
        .map(|r| {
            ForbiddenPattern::new(r.lhs().clone(), Position::root(), Flag::Below)
                .expect("root is a position of every term")
        })
        .collect()
}
