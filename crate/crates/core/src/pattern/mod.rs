//! Forbidden patterns: which positions of a term are blocked for rewriting,
//! rewriting restricted to the remaining positions, and the syntactic
//! properties (stability, orthogonality) the termination analysis relies on.

mod explore;
mod orth;
mod restrict;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

pub use explore::{
    explore, reachability, DerivationNode, DerivationStep, Exploration, ExploreLimits, Reachability,
    DEFAULT_DEPTH, DEFAULT_WIDTH,
};
pub use orth::{generalize, in_pi_orth, is_stable, outermost_encode, pi_orth, stb};
pub use restrict::{
    allowed_positions, anchor_positions, forbidden_positions, forbidding_pattern, is_allowed,
    pattern_positions, pi_step, PiStep,
};

use crate::term::{Position, Renameable, Term, TermError, Var};

/// Where a forbidden pattern blocks rewriting relative to its anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// At the anchor itself.
    Here,
    /// Strictly below the anchor.
    Below,
    /// Strictly above the anchor.
    Above,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Here => "h",
            Flag::Below => "b",
            Flag::Above => "a",
        })
    }
}

impl FromStr for Flag {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Flag, PatternError> {
        match s {
            "h" => Ok(Flag::Here),
            "b" => Ok(Flag::Below),
            "a" => Ok(Flag::Above),
            other => Err(PatternError::BadFlag(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("pattern position {position} does not exist in {term}")]
    PositionNotInTerm { term: String, position: Position },
    #[error("unknown flag `{0}` (expected h, b or a)")]
    BadFlag(String),
    #[error("pattern {0} has flag a, which the analysis does not support")]
    AboveFlag(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A triple ⟨term, position, flag⟩.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenPattern {
    term: Term,
    position: Position,
    flag: Flag,
}

impl ForbiddenPattern {
    pub fn new(term: Term, position: Position, flag: Flag) -> Result<ForbiddenPattern, PatternError> {
        if term.get(&position).is_none() {
            return Err(PatternError::PositionNotInTerm {
                term: term.to_string(),
                position,
            });
        }
        Ok(ForbiddenPattern {
            term,
            position,
            flag,
        })
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn position(&self) -> &Position {
        &self.position
    }

    pub fn flag(&self) -> Flag {
        self.flag
    }
}

impl Renameable for ForbiddenPattern {
    fn variables(&self) -> Vec<Var> {
        self.term.vars()
    }

    fn rename_vars(&self, rename: &mut dyn FnMut(&Var) -> Var) -> ForbiddenPattern {
        ForbiddenPattern {
            term: self.term.rename_vars(rename),
            position: self.position.clone(),
            flag: self.flag,
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.term, self.position, self.flag)
    }
}

/// An ordered set of forbidden patterns without variants of each other.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternSet(Vec<ForbiddenPattern>);

impl PatternSet {
    pub fn new() -> PatternSet {
        PatternSet::default()
    }

    /// Adds `pattern` unless a variant is already present; returns whether it was added.
    pub fn insert(&mut self, pattern: ForbiddenPattern) -> bool {
        let key = pattern.canonical();
        if self.0.iter().any(|p| p.canonical() == key) {
            return false;
        }
        self.0.push(pattern);
        true
    }

    pub fn contains_variant(&self, pattern: &ForbiddenPattern) -> bool {
        let key = pattern.canonical();
        self.0.iter().any(|p| p.canonical() == key)
    }

    pub fn extend(&mut self, patterns: impl IntoIterator<Item = ForbiddenPattern>) {
        for p in patterns {
            self.insert(p);
        }
    }

    pub fn into_vec(self) -> Vec<ForbiddenPattern> {
        self.0
    }

    pub fn has_above_flag(&self) -> Option<&ForbiddenPattern> {
        self.0.iter().find(|p| p.flag == Flag::Above)
    }
}

impl Deref for PatternSet {
    type Target = [ForbiddenPattern];

    fn deref(&self) -> &[ForbiddenPattern] {
        &self.0
    }
}

impl FromIterator<ForbiddenPattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = ForbiddenPattern>>(iter: I) -> PatternSet {
        let mut set = PatternSet::new();
        set.extend(iter);
        set
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a ForbiddenPattern;
    type IntoIter = std::slice::Iter<'a, ForbiddenPattern>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
