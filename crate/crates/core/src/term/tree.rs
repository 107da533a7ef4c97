use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{Position, Symbol, TermError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl Into<Arc<str>>) -> Var {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A first-order term: a variable or a symbol applied to exactly `arity` arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<Arc<str>>) -> Term {
        Term::Var(Var::new(name))
    }

    /// Panics if the argument count does not match the symbol's arity.
    pub fn app(symbol: Symbol, args: Vec<Term>) -> Term {
        assert_eq!(
            symbol.arity(),
            args.len(),
            "symbol {symbol} applied to {} arguments",
            args.len()
        );
        Term::App(symbol, args)
    }

    pub fn try_app(symbol: Symbol, args: Vec<Term>) -> Result<Term, TermError> {
        if symbol.arity() != args.len() {
            return Err(TermError::Arity {
                symbol: symbol.to_string(),
                expected: symbol.arity(),
                found: args.len(),
            });
        }
        Ok(Term::App(symbol, args))
    }

    pub fn constant(name: impl Into<Arc<str>>) -> Term {
        Term::App(Symbol::plain(name, 0), Vec::new())
    }

    pub fn hole() -> Term {
        Term::App(Symbol::hole(), Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn root(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// All positions in pre-order, which is lexicographic order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.walk(&mut Position::root(), &mut |p, _| out.push(p.clone()));
        out
    }

    /// Positions carrying a function symbol (Pos_F).
    pub fn function_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.walk(&mut Position::root(), &mut |p, t| {
            if !t.is_var() {
                out.push(p.clone())
            }
        });
        out
    }

    pub fn variable_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.walk(&mut Position::root(), &mut |p, t| {
            if t.is_var() {
                out.push(p.clone())
            }
        });
        out
    }

    /// Pre-order traversal with the position of every subterm.
    pub fn subterms(&self) -> Vec<(Position, &Term)> {
        let mut out = Vec::new();
        self.walk(&mut Position::root(), &mut |p, t| out.push((p.clone(), t)));
        out
    }

    fn walk<'a>(&'a self, at: &mut Position, visit: &mut dyn FnMut(&Position, &'a Term)) {
        visit(at, self);
        for (i, arg) in self.args().iter().enumerate() {
            let mut child = at.child(i + 1);
            arg.walk(&mut child, visit);
        }
    }

    pub fn get(&self, p: &Position) -> Option<&Term> {
        let mut t = self;
        for &i in p.path() {
            t = t.args().get(i.checked_sub(1)?)?;
        }
        Some(t)
    }

    /// `t|_p`.
    pub fn subterm_at(&self, p: &Position) -> Result<&Term, TermError> {
        self.get(p).ok_or_else(|| TermError::PositionOutOfRange {
            position: p.clone(),
            term: self.to_string(),
        })
    }

    /// `t[u]_p`.
    pub fn replace_at(&self, p: &Position, u: Term) -> Result<Term, TermError> {
        fn go(t: &Term, path: &[usize], u: Term) -> Option<Term> {
            let Some((&i, rest)) = path.split_first() else {
                return Some(u);
            };
            match t {
                Term::Var(_) => None,
                Term::App(f, args) => {
                    let target = args.get(i.checked_sub(1)?)?;
                    let replaced = go(target, rest, u)?;
                    let mut args = args.clone();
                    args[i - 1] = replaced;
                    Some(Term::App(f.clone(), args))
                }
            }
        }
        go(self, p.path(), u).ok_or_else(|| TermError::PositionOutOfRange {
            position: p.clone(),
            term: self.to_string(),
        })
    }

    /// Variables in order of first occurrence (pre-order).
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_vars(&mut seen, &mut out);
        out
    }

    pub(crate) fn collect_vars(&self, seen: &mut BTreeSet<Var>, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(seen, out)),
        }
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.vars().into_iter().collect()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// True if no variable occurs twice.
    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.variable_positions().iter().all(|p| {
            let v = self.get(p).and_then(Term::as_var).expect("variable position");
            seen.insert(v.clone())
        })
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Height of the term; a leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Term::depth).max().unwrap_or(0)
    }

    /// Distinct symbols in pre-order of first occurrence.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for (_, t) in self.subterms() {
            if let Some(f) = t.root() {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    pub fn contains_symbol(&self, pred: &dyn Fn(&Symbol) -> bool) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, args) => pred(f) || args.iter().any(|a| a.contains_symbol(pred)),
        }
    }

    /// Positions whose root symbol satisfies `pred`.
    pub fn positions_where(&self, pred: &dyn Fn(&Symbol) -> bool) -> Vec<Position> {
        self.subterms()
            .into_iter()
            .filter(|(_, t)| t.root().is_some_and(pred))
            .map(|(p, _)| p)
            .collect()
    }

    pub fn map_vars(&self, f: &mut dyn FnMut(&Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(g, args) if args.is_empty() => write!(f, "{g}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}
