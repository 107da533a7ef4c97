use std::fmt;
use std::sync::Arc;

/// What role a function symbol plays.
///
/// Plain symbols come from the user's signature. Marked symbols are the
/// `f#` counterparts introduced for dependency pairs, the token `T` moves
/// attention between subterms, and the hole marks the gap of a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Plain,
    Marked,
    Token,
    Hole,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
    kind: SymbolKind,
}

pub const TOKEN_NAME: &str = "T";
pub const HOLE_NAME: &str = "[]";

impl Symbol {
    pub fn plain(name: impl Into<Arc<str>>, arity: usize) -> Symbol {
        Symbol {
            name: name.into(),
            arity,
            kind: SymbolKind::Plain,
        }
    }

    /// The `f#` counterpart of a plain symbol. Marking a marked symbol is a no-op.
    pub fn marked(&self) -> Symbol {
        Symbol {
            name: self.name.clone(),
            arity: self.arity,
            kind: SymbolKind::Marked,
        }
    }

    /// The plain symbol a marked symbol was derived from.
    pub fn unmarked(&self) -> Symbol {
        match self.kind {
            SymbolKind::Marked => Symbol::plain(self.name.clone(), self.arity),
            _ => self.clone(),
        }
    }

    pub fn token() -> Symbol {
        Symbol {
            name: TOKEN_NAME.into(),
            arity: 1,
            kind: SymbolKind::Token,
        }
    }

    pub fn hole() -> Symbol {
        Symbol {
            name: HOLE_NAME.into(),
            arity: 0,
            kind: SymbolKind::Hole,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn is_plain(&self) -> bool {
        self.kind == SymbolKind::Plain
    }

    pub fn is_marked(&self) -> bool {
        self.kind == SymbolKind::Marked
    }

    pub fn is_token(&self) -> bool {
        self.kind == SymbolKind::Token
    }

    pub fn is_hole(&self) -> bool {
        self.kind == SymbolKind::Hole
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Plain | SymbolKind::Token | SymbolKind::Hole => write!(f, "{}", self.name),
            SymbolKind::Marked => write!(f, "{}#", self.name),
        }
    }
}
