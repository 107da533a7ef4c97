use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{match_term, rename_away, unify, Position, Renameable, Symbol, Term, TermError, Var};

/// A rewrite rule `lhs → rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    lhs: Term,
    rhs: Term,
}

impl Rule {
    /// Rejects variable left-hand sides and right-hand-side-only variables.
    pub fn new(lhs: Term, rhs: Term) -> Result<Rule, TermError> {
        if lhs.is_var() {
            return Err(TermError::VariableLhs(lhs.to_string()));
        }
        let lhs_vars = lhs.var_set();
        if let Some(v) = rhs.vars().into_iter().find(|v| !lhs_vars.contains(v)) {
            return Err(TermError::FreshRhsVariable {
                rule: format!("{lhs} -> {rhs}"),
                var: v.to_string(),
            });
        }
        Ok(Rule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// Rewrites `t` at its root if the left-hand side matches.
    pub fn apply_at_root(&self, t: &Term) -> Option<Term> {
        match_term(&self.lhs, t).map(|sigma| sigma.apply(&self.rhs))
    }
}

impl Renameable for Rule {
    fn variables(&self) -> Vec<Var> {
        self.lhs.vars()
    }

    fn rename_vars(&self, rename: &mut dyn FnMut(&Var) -> Var) -> Rule {
        Rule {
            lhs: self.lhs.rename_vars(rename),
            rhs: self.rhs.rename_vars(rename),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// A term rewriting system over a signature of plain symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trs {
    signature: BTreeSet<Symbol>,
    rules: Vec<Rule>,
}

impl Trs {
    pub fn new(rules: Vec<Rule>) -> Result<Trs, TermError> {
        Trs::with_signature(rules, [])
    }

    /// The signature is the symbols of the rules plus `extra`; every symbol
    /// name must be used with a single arity.
    pub fn with_signature(
        rules: Vec<Rule>,
        extra: impl IntoIterator<Item = Symbol>,
    ) -> Result<Trs, TermError> {
        let mut signature: BTreeSet<Symbol> = extra.into_iter().collect();
        for rule in &rules {
            signature.extend(rule.lhs.symbols());
            signature.extend(rule.rhs.symbols());
        }
        let mut arities: BTreeMap<&str, usize> = BTreeMap::new();
        for f in &signature {
            if !f.is_plain() {
                return Err(TermError::ReservedSymbol(f.to_string()));
            }
            if let Some(&a) = arities.get(f.name()) {
                if a != f.arity() {
                    return Err(TermError::ArityConflict {
                        symbol: f.name().to_string(),
                        first: a,
                        second: f.arity(),
                    });
                }
            }
            arities.insert(f.name(), f.arity());
        }
        Ok(Trs { signature, rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &BTreeSet<Symbol> {
        &self.signature
    }

    /// Roots of left-hand sides.
    pub fn defined(&self) -> BTreeSet<Symbol> {
        self.rules
            .iter()
            .filter_map(|r| r.lhs.root().cloned())
            .collect()
    }

    pub fn is_defined(&self, f: &Symbol) -> bool {
        self.rules.iter().any(|r| r.lhs.root() == Some(f))
    }

    pub fn constructors(&self) -> BTreeSet<Symbol> {
        let defined = self.defined();
        self.signature
            .iter()
            .filter(|f| !defined.contains(f))
            .cloned()
            .collect()
    }

    /// All one-step results of rewriting `t` at `p`, one per applicable rule,
    /// tagged with the rule index.
    pub fn rewrite_at(&self, t: &Term, p: &Position) -> Result<Vec<(usize, Term)>, TermError> {
        let sub = t.subterm_at(p)?;
        let mut out = Vec::new();
        for (i, rule) in self.rules.iter().enumerate() {
            if let Some(contractum) = rule.apply_at_root(sub) {
                out.push((i, t.replace_at(p, contractum)?));
            }
        }
        Ok(out)
    }

    /// One-step rewriting at every position, in (position, rule) order.
    pub fn rewrite_anywhere(&self, t: &Term) -> Vec<(Position, usize, Term)> {
        t.function_positions()
            .into_iter()
            .flat_map(|p| {
                self.rewrite_at(t, &p)
                    .expect("position taken from the term")
                    .into_iter()
                    .map(move |(i, u)| (p.clone(), i, u))
            })
            .collect()
    }

    pub fn is_redex(&self, t: &Term) -> bool {
        self.rules.iter().any(|r| match_term(&r.lhs, t).is_some())
    }
}

/// Whether `rule` overlaps `t` at the non-variable position `p`, i.e. the
/// rule's left-hand side (renamed apart from `t`) unifies with `t|_p`.
pub fn overlaps(rule: &Rule, t: &Term, p: &Position) -> bool {
    match t.get(p) {
        Some(sub) if !sub.is_var() => {
            let fresh = rename_away(rule, &t.var_set());
            unify(fresh.lhs(), sub).is_some()
        }
        _ => false,
    }
}
