//! Random terms, systems and patterns over a small fixed signature.

use fpterm::pattern::{Flag, ForbiddenPattern};
use fpterm::term::{Position, Rule, Symbol, Term, Trs, Var};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::seq::IndexedRandom;
use rand::Rng;

pub const CONSTANTS: [&str; 2] = ["a", "b"];
pub const UNARY: [&str; 2] = ["f", "g"];
pub const BINARY: [&str; 1] = ["h"];
pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn signature() -> Vec<Symbol> {
    CONSTANTS
        .iter()
        .map(|c| Symbol::plain(*c, 0))
        .chain(UNARY.iter().map(|f| Symbol::plain(*f, 1)))
        .chain(BINARY.iter().map(|f| Symbol::plain(*f, 2)))
        .collect()
}

fn leaf(with_vars: bool) -> BoxedStrategy<Term> {
    let consts = prop::sample::select(CONSTANTS.to_vec()).prop_map(Term::constant);
    if with_vars {
        prop_oneof![consts, prop::sample::select(VARS.to_vec()).prop_map(Term::var)].boxed()
    } else {
        consts.boxed()
    }
}

/// Terms of depth at most `depth` (a constant has depth 0).
pub fn term(depth: u32, with_vars: bool) -> BoxedStrategy<Term> {
    leaf(with_vars)
        .prop_recursive(depth, 32, 2, |inner| {
            prop_oneof![
                (prop::sample::select(UNARY.to_vec()), inner.clone())
                    .prop_map(|(f, t)| Term::app(Symbol::plain(f, 1), vec![t])),
                (inner.clone(), inner).prop_map(|(s, t)| Term::app(Symbol::plain("h", 2), vec![s, t])),
            ]
        })
        .boxed()
}

pub fn non_var_term(depth: u32) -> BoxedStrategy<Term> {
    term(depth, true).prop_filter("not a variable", |t| !t.is_var()).boxed()
}

pub fn pick_position(t: &Term, i: Index) -> Position {
    let ps = t.positions();
    ps[i.index(ps.len())].clone()
}

pub fn flag(with_above: bool) -> BoxedStrategy<Flag> {
    if with_above {
        prop::sample::select(vec![Flag::Here, Flag::Below, Flag::Above]).boxed()
    } else {
        prop::sample::select(vec![Flag::Here, Flag::Below]).boxed()
    }
}

pub fn pattern(depth: u32, with_above: bool) -> BoxedStrategy<ForbiddenPattern> {
    (non_var_term(depth), any::<Index>(), flag(with_above))
        .prop_map(|(t, i, f)| {
            let p = pick_position(&t, i);
            ForbiddenPattern::new(t, p, f).unwrap()
        })
        .boxed()
}

/// Replaces variables of `rhs` that do not occur in `lhs` by `a`.
fn close_rhs(lhs: &Term, rhs: &Term) -> Term {
    let bound = lhs.var_set();
    rhs.map_vars(&mut |v: &Var| {
        if bound.contains(v) {
            Term::Var(v.clone())
        } else {
            Term::constant("a")
        }
    })
}

pub fn rule(depth: u32) -> BoxedStrategy<Rule> {
    (non_var_term(depth), term(depth, true))
        .prop_map(|(l, r)| {
            let r = close_rhs(&l, &r);
            Rule::new(l, r).unwrap()
        })
        .boxed()
}

pub fn trs(max_rules: usize, depth: u32) -> BoxedStrategy<Trs> {
    prop::collection::vec(rule(depth), 1..=max_rules)
        .prop_map(|rules| Trs::with_signature(rules, signature()).unwrap())
        .boxed()
}

/// A ground term over `symbols` of depth at most `depth`, uniformly choosing
/// a symbol at each node (constants forced at the depth limit).
pub fn ground_term<R: Rng>(rng: &mut R, symbols: &[Symbol], depth: usize) -> Term {
    let constants: Vec<&Symbol> = symbols.iter().filter(|f| f.arity() == 0).collect();
    let f = if depth == 0 {
        *constants.choose(rng).expect("a constant")
    } else {
        symbols.choose(rng).expect("non-empty signature")
    };
    let args = (0..f.arity()).map(|_| ground_term(rng, symbols, depth - 1)).collect();
    Term::app(f.clone(), args)
}

/// Every ground term over `symbols` of depth at most `depth`.
pub fn all_ground_terms(symbols: &[Symbol], depth: usize) -> Vec<Term> {
    let mut levels: Vec<Term> = symbols.iter().filter(|f| f.arity() == 0).map(|c| Term::app(c.clone(), vec![])).collect();
    for _ in 0..depth {
        let mut next = levels.clone();
        for f in symbols.iter().filter(|f| f.arity() > 0) {
            let mut tuples: Vec<Vec<Term>> = vec![vec![]];
            for _ in 0..f.arity() {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        levels.iter().map(move |u| {
                            let mut t = t.clone();
                            t.push(u.clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(tuples.into_iter().map(|args| Term::app(f.clone(), args)));
        }
        next.sort();
        next.dedup();
        levels = next;
    }
    levels
}
