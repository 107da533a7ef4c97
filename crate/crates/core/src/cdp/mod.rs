//! Contextual dependency pairs, CDP problems, erasure and nested contexts.

mod build;
mod chain;

use std::collections::BTreeMap;
use std::fmt;

pub use build::{build_cdps, erase, nested_context, Mode, NestedContext};
pub use chain::{replay_chain, validate_chain, ChainStep, ChainViolation, ReplayedStep, StepKind};

use crate::pattern::{Flag, PatternError, PatternSet};
use crate::term::{Position, Renameable, Symbol, Term, TermError, Trs, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CdpError {
    #[error("context {0} must contain exactly one hole")]
    HoleCount(String),
    #[error("pair {pair}: variable {var} does not occur in the left-hand side")]
    UnboundVariable { pair: String, var: String },
    #[error("pair {0}: a variable left-hand side is not allowed")]
    VariableLhs(String),
    #[error("pair {0}: the token may only occur at the root of a left- or right-hand side")]
    MisplacedToken(String),
    #[error("pair {0}: marked symbols may only occur at the root of a left- or right-hand side")]
    MisplacedMark(String),
    #[error("pair {0}: holes may only occur in the context")]
    MisplacedHole(String),
    #[error("marked symbol {0} has no unmarked counterpart in the problem")]
    UnknownMarked(String),
    #[error("pattern {0} has flag a, which the analysis does not support")]
    AboveFlag(String),
    #[error("nested context of an empty pair sequence")]
    EmptySequence,
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Which construction a pair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// Dependency pair for a defined subterm of a right-hand side.
    DPc,
    /// Variable descent.
    Vc,
    /// Activation of a token-marked subterm.
    Ac,
    /// Shift of the token to an argument.
    Sc,
    /// Given directly in the input.
    User,
}

impl Origin {
    pub fn is_structural(self) -> bool {
        matches!(self, Origin::Vc | Origin::Ac | Origin::Sc)
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::DPc => "DPc",
            Origin::Vc => "Vc",
            Origin::Ac => "Ac",
            Origin::Sc => "Sc",
            Origin::User => "user",
        })
    }
}

/// A contextual rule `l → r [c]`, used as the ordinary rule `l → c[r]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContextualRule {
    lhs: Term,
    rhs: Term,
    context: Term,
    hole_position: Position,
    origin: Origin,
}

fn holes(t: &Term) -> Vec<Position> {
    t.positions_where(&|f| f.is_hole())
}

impl ContextualRule {
    pub fn new(lhs: Term, rhs: Term, context: Term, origin: Origin) -> Result<ContextualRule, CdpError> {
        let shown = || format!("{lhs} -> {rhs} [{context}]");
        let hole = match holes(&context).as_slice() {
            [p] => p.clone(),
            _ => return Err(CdpError::HoleCount(context.to_string())),
        };
        if lhs.is_var() {
            return Err(CdpError::VariableLhs(shown()));
        }
        if !holes(&lhs).is_empty() || !holes(&rhs).is_empty() {
            return Err(CdpError::MisplacedHole(shown()));
        }
        let below_root = |t: &Term, pred: &dyn Fn(&Symbol) -> bool| {
            t.positions_where(pred).iter().any(|p| !p.is_root())
        };
        if below_root(&lhs, &|f| f.is_token())
            || below_root(&rhs, &|f| f.is_token())
            || context.contains_symbol(&|f| f.is_token())
        {
            return Err(CdpError::MisplacedToken(shown()));
        }
        if below_root(&lhs, &|f| f.is_marked())
            || below_root(&rhs, &|f| f.is_marked())
            || context.contains_symbol(&|f| f.is_marked())
        {
            return Err(CdpError::MisplacedMark(shown()));
        }
        let bound = lhs.var_set();
        if let Some(v) = rhs.vars().into_iter().chain(context.vars()).find(|v| !bound.contains(v)) {
            return Err(CdpError::UnboundVariable {
                pair: shown(),
                var: v.to_string(),
            });
        }
        Ok(ContextualRule {
            lhs,
            rhs,
            context,
            hole_position: hole,
            origin,
        })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn context(&self) -> &Term {
        &self.context
    }

    pub fn hole_position(&self) -> &Position {
        &self.hole_position
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The ordinary rule `l → c[r]`.
    pub fn plugged_rhs(&self) -> Term {
        self.context
            .replace_at(&self.hole_position, self.rhs.clone())
            .expect("hole position is valid")
    }

    /// Whether the two pairs agree up to variable renaming (origin ignored).
    pub fn same_pair(&self, other: &ContextualRule) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.lhs == b.lhs && a.rhs == b.rhs && a.context == b.context
    }
}

impl Renameable for ContextualRule {
    fn variables(&self) -> Vec<Var> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for t in [&self.lhs, &self.rhs, &self.context] {
            t.collect_vars(&mut seen, &mut out);
        }
        out
    }

    fn rename_vars(&self, rename: &mut dyn FnMut(&Var) -> Var) -> ContextualRule {
        ContextualRule {
            lhs: self.lhs.rename_vars(rename),
            rhs: self.rhs.rename_vars(rename),
            context: self.context.rename_vars(rename),
            hole_position: self.hole_position.clone(),
            origin: self.origin,
        }
    }
}

impl fmt::Display for ContextualRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [{}]", self.lhs, self.rhs, self.context)
    }
}

/// A CDP problem: pairs, rules, forbidden patterns, and the correspondence
/// between marked symbols and the symbols they stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdpProblem {
    pairs: Vec<ContextualRule>,
    rules: Trs,
    patterns: PatternSet,
    marking: BTreeMap<Symbol, Symbol>,
}

impl CdpProblem {
    /// Every plain symbol of `rules` and every marked symbol of `pairs` enters
    /// the marking; patterns with flag a are rejected.
    pub fn new(pairs: Vec<ContextualRule>, rules: Trs, patterns: PatternSet) -> Result<CdpProblem, CdpError> {
        if let Some(p) = patterns.iter().find(|p| p.flag() == Flag::Above) {
            return Err(CdpError::AboveFlag(p.to_string()));
        }
        let mut marking: BTreeMap<Symbol, Symbol> = rules
            .signature()
            .iter()
            .map(|f| (f.marked(), f.clone()))
            .collect();
        for pair in &pairs {
            for t in [&pair.lhs, &pair.rhs, &pair.context] {
                for f in t.symbols() {
                    if f.is_marked() {
                        marking.insert(f.clone(), f.unmarked());
                    }
                }
            }
        }
        let mut deduped: Vec<ContextualRule> = Vec::with_capacity(pairs.len());
        for pair in pairs {
            if !deduped.iter().any(|q| q.same_pair(&pair)) {
                deduped.push(pair);
            }
        }
        Ok(CdpProblem {
            pairs: deduped,
            rules,
            patterns,
            marking,
        })
    }

    pub fn pairs(&self) -> &[ContextualRule] {
        &self.pairs
    }

    pub fn rules(&self) -> &Trs {
        &self.rules
    }

    pub fn patterns(&self) -> &PatternSet {
        &self.patterns
    }

    pub fn token(&self) -> Symbol {
        Symbol::token()
    }

    pub fn marking(&self) -> &BTreeMap<Symbol, Symbol> {
        &self.marking
    }

    /// The same problem with a different pair set.
    pub fn with_pairs(&self, pairs: Vec<ContextualRule>) -> CdpProblem {
        CdpProblem {
            pairs,
            ..self.clone()
        }
    }

    /// The same problem with a different pattern set; flag a is rejected.
    pub fn with_patterns(&self, patterns: PatternSet) -> Result<CdpProblem, CdpError> {
        if let Some(p) = patterns.iter().find(|p| p.flag() == Flag::Above) {
            return Err(CdpError::AboveFlag(p.to_string()));
        }
        Ok(CdpProblem {
            patterns,
            ..self.clone()
        })
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn erase(&self, t: &Term) -> Result<Term, CdpError> {
        erase(t, &self.marking)
    }

    /// Index of a pair equal to `pair` up to renaming.
    pub fn index_of(&self, pair: &ContextualRule) -> Option<usize> {
        self.pairs.iter().position(|q| q.same_pair(pair))
    }
}
