use std::collections::BTreeMap;

use super::{CdpError, CdpProblem, ContextualRule, Origin};
use crate::pattern::{allowed_positions, stb, Flag, PatternSet};
use crate::term::{rename_apart, Position, Renameable, Symbol, Term, Trs, Var};

/// How literally the pair construction follows the definition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Dependency pairs only at positions allowed by the stable patterns, and
    /// activation pairs only for defined symbols.
    #[default]
    Strict,
    /// Neither restriction; a superset of the strict pairs.
    Compat,
}

fn with_hole(t: &Term, p: &Position) -> Term {
    t.replace_at(p, Term::hole()).expect("position taken from the term")
}

fn mark_root(t: &Term) -> Term {
    let f = t.root().expect("not a variable");
    Term::app(f.marked(), t.args().to_vec())
}

fn token(t: Term) -> Term {
    Term::app(Symbol::token(), vec![t])
}

fn generic(f: &Symbol) -> Term {
    let args = (1..=f.arity()).map(|i| Term::var(format!("x{i}"))).collect();
    Term::app(f.clone(), args)
}

/// The contextual dependency pairs of `trs` under `patterns`.
pub fn build_cdps(trs: &Trs, patterns: &PatternSet, mode: Mode) -> Result<CdpProblem, CdpError> {
    if let Some(p) = patterns.iter().find(|p| p.flag() == Flag::Above) {
        return Err(CdpError::AboveFlag(p.to_string()));
    }
    let stable = stb(patterns, trs);
    let mut pairs = Vec::new();
    let mut rhs_symbols: Vec<Symbol> = Vec::new();
    for rule in trs.rules() {
        let (l, r) = (rule.lhs(), rule.rhs());
        let allowed = allowed_positions(&stable, r);
        for (p, sub) in r.subterms() {
            match sub.root() {
                None => pairs.push(ContextualRule::new(
                    mark_root(l),
                    token(sub.clone()),
                    with_hole(r, &p),
                    Origin::Vc,
                )?),
                Some(f) => {
                    if !rhs_symbols.contains(f) {
                        rhs_symbols.push(f.clone());
                    }
                    if trs.is_defined(f) && (mode == Mode::Compat || allowed.contains(&p)) {
                        pairs.push(ContextualRule::new(
                            mark_root(l),
                            mark_root(sub),
                            with_hole(r, &p),
                            Origin::DPc,
                        )?);
                    }
                }
            }
        }
    }
    for f in &rhs_symbols {
        if mode == Mode::Compat || trs.is_defined(f) {
            let t = generic(f);
            let pair = ContextualRule::new(token(t.clone()), mark_root(&t), Term::hole(), Origin::Ac)?;
            pairs.push(pair.prettified());
        }
    }
    for f in &rhs_symbols {
        let t = generic(f);
        for (i, xi) in t.args().iter().enumerate() {
            let p = Position::root().child(i + 1);
            let pair = ContextualRule::new(token(t.clone()), token(xi.clone()), with_hole(&t, &p), Origin::Sc)?;
            pairs.push(pair.prettified());
        }
    }
    CdpProblem::new(pairs, trs.clone(), patterns.clone())
}

/// Unmarks marked symbols and drops token symbols.
pub fn erase(t: &Term, marking: &BTreeMap<Symbol, Symbol>) -> Result<Term, CdpError> {
    match t {
        Term::Var(_) => Ok(t.clone()),
        Term::App(f, args) if f.is_token() => erase(&args[0], marking),
        Term::App(f, args) => {
            let g = if f.is_marked() {
                marking
                    .get(f)
                    .cloned()
                    .ok_or_else(|| CdpError::UnknownMarked(f.to_string()))?
            } else {
                f.clone()
            };
            let args = args.iter().map(|a| erase(a, marking)).collect::<Result<_, _>>()?;
            Ok(Term::app(g, args))
        }
    }
}

/// Result of nesting the contexts of a pair sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedContext {
    /// The nested contexts with the hole still in place.
    pub context: Term,
    /// The nested contexts with the erased last right-hand side plugged in.
    pub term: Term,
    /// Composite position of the hole.
    pub position: Position,
}

/// Renames the pairs apart and nests their contexts, plugging the erased
/// right-hand side of the last pair into the innermost hole.
pub fn nested_context(
    pairs: &[ContextualRule],
    marking: &BTreeMap<Symbol, Symbol>,
) -> Result<NestedContext, CdpError> {
    let renamed = rename_apart(pairs);
    let (first, rest) = renamed.split_first().ok_or(CdpError::EmptySequence)?;
    let mut context = first.context().clone();
    let mut position = first.hole_position().clone();
    for pair in rest {
        context = context.replace_at(&position, pair.context().clone())?;
        position = position.concat(pair.hole_position());
    }
    let last = renamed.last().expect("non-empty");
    let term = context.replace_at(&position, erase(last.rhs(), marking)?)?;
    Ok(NestedContext {
        context,
        term,
        position,
    })
}

impl Renameable for NestedContext {
    fn variables(&self) -> Vec<Var> {
        self.term.vars()
    }

    fn rename_vars(&self, rename: &mut dyn FnMut(&Var) -> Var) -> NestedContext {
        NestedContext {
            context: self.context.rename_vars(rename),
            term: self.term.rename_vars(rename),
            position: self.position.clone(),
        }
    }
}
