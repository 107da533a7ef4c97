use std::collections::BTreeMap;
use std::fmt;

use super::{Term, Var};

/// A finite map from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<Var, Term>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.0.get(v)
    }

    pub fn insert(&mut self, v: Var, t: Term) -> Option<Term> {
        self.0.insert(v, t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// Idempotent if no domain variable occurs in the range.
    pub fn is_idempotent(&self) -> bool {
        self.0
            .values()
            .all(|t| self.0.keys().all(|v| !t.contains_var(v)))
    }

    /// Adds `v ↦ t` and applies it to the existing range. Requires that `t`
    /// does not mention `v` or any current domain variable.
    fn bind(&mut self, v: Var, t: Term) {
        let single = Substitution(BTreeMap::from([(v.clone(), t.clone())]));
        for range in self.0.values_mut() {
            *range = single.apply(range);
        }
        self.0.insert(v, t);
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Substitution {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        write!(f, "}}")
    }
}

/// Syntactic matching: a σ with `pattern·σ = subject`. Repeated pattern
/// variables must be bound to identical subterms.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    if match_into(pattern, subject, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

/// Extends `sigma` so that `pattern·sigma = subject`; on failure `sigma` may
/// hold partial bindings.
pub fn match_into(pattern: &Term, subject: &Term, sigma: &mut Substitution) -> bool {
    match (pattern, subject) {
        (Term::Var(v), _) => match sigma.0.get(v) {
            Some(bound) => bound == subject,
            None => {
                sigma.0.insert(v.clone(), subject.clone());
                true
            }
        },
        (Term::App(f, fargs), Term::App(g, gargs)) => {
            f == g
                && fargs
                    .iter()
                    .zip(gargs)
                    .all(|(p, s)| match_into(p, s, sigma))
        }
        (Term::App(..), Term::Var(_)) => false,
    }
}

/// Most general unifier with occurs check. The result is idempotent.
pub fn unify(s: &Term, t: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    let mut pending = vec![(s.clone(), t.clone())];
    while let Some((a, b)) = pending.pop() {
        let a = sigma.apply(&a);
        let b = sigma.apply(&b);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), other) | (other, Term::Var(x)) => {
                if other.contains_var(&x) {
                    return None;
                }
                sigma.bind(x, other);
            }
            (Term::App(f, fargs), Term::App(g, gargs)) => {
                if f != g {
                    return None;
                }
                pending.extend(fargs.into_iter().zip(gargs));
            }
        }
    }
    Some(sigma)
}
