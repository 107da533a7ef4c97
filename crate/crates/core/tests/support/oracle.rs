//! Reference implementations written straight from the definitions, sharing
//! nothing with the library beyond the term data type.

use std::collections::{BTreeMap, BTreeSet};

use fpterm::pattern::{Flag, ForbiddenPattern};
use fpterm::term::{Position, Rule, Symbol, Term, Trs};

pub type Bindings = BTreeMap<String, Term>;

pub fn naive_match(pattern: &Term, t: &Term, b: &mut Bindings) -> bool {
    match pattern {
        Term::Var(v) => match b.get(v.name()) {
            Some(bound) => bound == t,
            None => {
                b.insert(v.name().to_string(), t.clone());
                true
            }
        },
        Term::App(f, args) => match t {
            Term::App(g, targs) if f == g => args.iter().zip(targs).all(|(p, s)| naive_match(p, s, b)),
            _ => false,
        },
    }
}

pub fn matches(pattern: &Term, t: &Term) -> Option<Bindings> {
    let mut b = Bindings::new();
    naive_match(pattern, t, &mut b).then_some(b)
}

pub fn instantiate(t: &Term, b: &Bindings) -> Term {
    match t {
        Term::Var(v) => b.get(v.name()).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| instantiate(a, b)).collect()),
    }
}

fn paths(t: &Term, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    if let Term::App(_, args) = t {
        for (i, a) in args.iter().enumerate() {
            prefix.push(i + 1);
            paths(a, prefix, out);
            prefix.pop();
        }
    }
}

pub fn all_paths(t: &Term) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    paths(t, &mut Vec::new(), &mut out);
    out
}

pub fn at<'a>(t: &'a Term, path: &[usize]) -> &'a Term {
    path.iter().fold(t, |s, &i| &s.args()[i - 1])
}

pub fn put(t: &Term, path: &[usize], u: Term) -> Term {
    match path.split_first() {
        None => u,
        Some((&i, rest)) => {
            let Term::App(f, args) = t else { panic!("path into a variable") };
            let mut args = args.clone();
            args[i - 1] = put(&args[i - 1], rest, u);
            Term::App(f.clone(), args)
        }
    }
}

fn strictly_prefix(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && b.starts_with(a)
}

/// Forbidden positions of `s`, by enumerating every subterm and every pattern.
pub fn forbidden(patterns: &[ForbiddenPattern], s: &Term) -> BTreeSet<Vec<usize>> {
    let all = all_paths(s);
    let mut out = BTreeSet::new();
    for o in &all {
        for pi in patterns {
            if matches(pi.term(), at(s, o)).is_none() {
                continue;
            }
            let mut anchor = o.clone();
            anchor.extend_from_slice(pi.position().path());
            for q in &all {
                let hit = match pi.flag() {
                    Flag::Here => *q == anchor,
                    Flag::Below => strictly_prefix(&anchor, q),
                    Flag::Above => strictly_prefix(q, &anchor),
                };
                if hit {
                    out.insert(q.clone());
                }
            }
        }
    }
    out
}

/// Every unrestricted rewrite step: (position, rule index, result).
pub fn all_steps(trs: &Trs, t: &Term) -> BTreeSet<(Vec<usize>, usize, Term)> {
    let mut out = BTreeSet::new();
    for p in all_paths(t) {
        for (i, r) in trs.rules().iter().enumerate() {
            if let Some(b) = matches(r.lhs(), at(t, &p)) {
                out.insert((p.clone(), i, put(t, &p, instantiate(r.rhs(), &b))));
            }
        }
    }
    out
}

/// Outermost steps: redexes with no redex strictly above them.
pub fn outermost_steps(trs: &Trs, t: &Term) -> BTreeSet<(Vec<usize>, usize, Term)> {
    let steps = all_steps(trs, t);
    let redexes: BTreeSet<Vec<usize>> = steps.iter().map(|(p, _, _)| p.clone()).collect();
    steps
        .into_iter()
        .filter(|(p, _, _)| !redexes.iter().any(|q| strictly_prefix(q, p)))
        .collect()
}

pub fn to_position(path: &[usize]) -> Position {
    Position::new(path.to_vec())
}

fn mark(t: &Term) -> Term {
    match t {
        Term::App(f, args) => Term::App(f.marked(), args.clone()),
        Term::Var(_) => t.clone(),
    }
}

/// Classical dependency pairs with their extraction contexts:
/// `l# → u#` for every subterm `u` of a right-hand side with defined root.
pub fn classical_pairs(trs: &Trs) -> Vec<(Term, Term, Term)> {
    let defined: BTreeSet<Symbol> = trs.rules().iter().filter_map(|r| r.lhs().root().cloned()).collect();
    let mut out = Vec::new();
    for r in trs.rules() {
        for p in all_paths(r.rhs()) {
            let u = at(r.rhs(), &p);
            if u.root().is_some_and(|f| defined.contains(f)) {
                out.push((mark(r.lhs()), mark(u), put(r.rhs(), &p, Term::hole())));
            }
        }
    }
    out
}

/// Value of a ground term under linear coefficients; symbols without an
/// entry count as the sum of their arguments.
pub fn poly_value(coefficients: &BTreeMap<Symbol, Vec<u64>>, t: &Term) -> u64 {
    let Term::App(f, args) = t else { panic!("ground term expected") };
    let vals: Vec<u64> = args.iter().map(|a| poly_value(coefficients, a)).collect();
    match coefficients.get(f) {
        Some(c) => c[0] + vals.iter().zip(&c[1..]).map(|(v, k)| v * k).sum::<u64>(),
        None => vals.iter().sum(),
    }
}

/// Rules as (lhs, rhs) with names instead of indices, for readable failures.
pub fn describe(rule: &Rule) -> String {
    format!("{} -> {}", rule.lhs(), rule.rhs())
}
