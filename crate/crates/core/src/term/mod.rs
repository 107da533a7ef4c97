//! First-order terms, positions, substitutions, matching, unification and
//! plain rewriting.

mod position;
mod rename;
mod rule;
mod subst;
mod symbol;
mod tree;

pub use position::{Position, PositionParseError};
pub use rename::{rename_apart, rename_away, FreshVars, Renameable};
pub use rule::{overlaps, Rule, Trs};
pub use subst::{match_into, match_term, unify, Substitution};
pub use symbol::{Symbol, SymbolKind, HOLE_NAME, TOKEN_NAME};
pub use tree::{Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("position {position} does not exist in {term}")]
    PositionOutOfRange { position: Position, term: String },
    #[error("symbol {symbol} expects {expected} arguments, got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol {symbol} used with arity {first} and {second}")]
    ArityConflict {
        symbol: String,
        first: usize,
        second: usize,
    },
    #[error("rule left-hand side is a variable: {0}")]
    VariableLhs(String),
    #[error("variable {var} occurs only on the right-hand side of {rule}")]
    FreshRhsVariable { rule: String, var: String },
    #[error("reserved symbol {0} cannot appear in a rewrite system")]
    ReservedSymbol(String),
}
