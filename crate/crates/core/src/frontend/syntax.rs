//! Character-level scanning and term syntax shared by the file parser and
//! the term/pair helpers.

use std::collections::{BTreeMap, BTreeSet};

use crate::term::{Symbol, Term, TOKEN_NAME};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

impl Loc {
    pub fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_'+*:<>=-.#".contains(c)
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_'+*:<>=-".contains(c)
}

pub(crate) fn is_valid_ident(s: &str) -> bool {
    !s.is_empty() && s != "->" && s.chars().all(is_ident_char)
}

pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    idx: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Cursor<'a> {
        Cursor {
            chars: src.chars().collect(),
            idx: 0,
            line: 1,
            column: 1,
            _src: src,
        }
    }

    pub fn loc(&self) -> Loc {
        Loc {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.idx)?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while self.chars.get(self.idx).is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    /// Next non-whitespace character without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.idx).copied()
    }

    pub fn peek_word(&mut self) -> Option<String> {
        self.skip_ws();
        let word: String = self.chars[self.idx..]
            .iter()
            .take_while(|&&c| is_word_char(c))
            .collect();
        (!word.is_empty()).then_some(word)
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let loc = self.loc();
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(d) => Err(self.loc().error(format!("expected `{c}`, found `{d}`"))),
            None => Err(loc.error(format!("expected `{c}`, found end of input"))),
        }
    }

    pub fn word(&mut self) -> Result<(String, Loc), ParseError> {
        self.skip_ws();
        let loc = self.loc();
        let mut word = String::new();
        while let Some(&c) = self.chars.get(self.idx) {
            if !is_word_char(c) {
                break;
            }
            word.push(c);
            self.bump();
        }
        if word.is_empty() {
            return Err(match self.chars.get(self.idx) {
                Some(c) => loc.error(format!("expected an identifier, found `{c}`")),
                None => loc.error("expected an identifier, found end of input"),
            });
        }
        Ok((word, loc))
    }

    /// Skips to just past the parenthesis closing the currently open one.
    pub fn skip_balanced(&mut self, open: Loc) -> Result<(), ParseError> {
        let mut depth = 1usize;
        while let Some(c) = self.bump() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
        Err(open.error("unterminated section"))
    }
}

/// A term as written, before variables and symbols are resolved.
#[derive(Clone, Debug)]
pub(crate) enum RawTerm {
    Node {
        name: String,
        args: Vec<RawTerm>,
        parens: bool,
        loc: Loc,
    },
    Hole(Loc),
}

pub(crate) fn raw_term(cur: &mut Cursor<'_>, allow_hole: bool) -> Result<RawTerm, ParseError> {
    if cur.peek() == Some('[') {
        let loc = cur.loc();
        if !allow_hole {
            return Err(loc.error("a hole `[]` is only allowed inside a pair context"));
        }
        cur.expect('[')?;
        cur.expect(']')?;
        return Ok(RawTerm::Hole(loc));
    }
    let (name, loc) = cur.word()?;
    if name == "->" {
        return Err(loc.error("expected a term, found `->`"));
    }
    let mut args = Vec::new();
    let mut parens = false;
    if cur.eat('(') {
        parens = true;
        loop {
            args.push(raw_term(cur, allow_hole)?);
            if cur.eat(',') {
                continue;
            }
            cur.expect(')')?;
            break;
        }
    }
    Ok(RawTerm::Node {
        name,
        args,
        parens,
        loc,
    })
}

/// Which extended spellings are accepted while resolving a raw term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Dialect {
    /// Only plain symbols and variables.
    Plain,
    /// Marked symbols `f#`, the token `T(…)` and holes are also accepted.
    Pairs,
}

/// Resolves identifiers against the declared variables, fixing every symbol's
/// arity by its first use.
#[derive(Clone, Debug, Default)]
pub(crate) struct Resolver {
    pub vars: BTreeSet<String>,
    pub arities: BTreeMap<String, usize>,
    /// Plain symbols in order of first use.
    pub symbols: Vec<Symbol>,
    pub constants_used: BTreeSet<String>,
}

impl Resolver {
    pub fn new(vars: impl IntoIterator<Item = String>) -> Resolver {
        Resolver {
            vars: vars.into_iter().collect(),
            ..Resolver::default()
        }
    }

    fn symbol(&mut self, name: &str, arity: usize, loc: Loc) -> Result<Symbol, ParseError> {
        match self.arities.get(name) {
            Some(&a) if a != arity => {
                return Err(loc.error(format!(
                    "symbol `{name}` used with arity {arity}, but first used with arity {a}"
                )))
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.to_string(), arity);
                self.symbols.push(Symbol::plain(name, arity));
            }
        }
        Ok(Symbol::plain(name, arity))
    }

    pub fn resolve(&mut self, raw: &RawTerm, dialect: Dialect) -> Result<Term, ParseError> {
        match raw {
            RawTerm::Hole(loc) => match dialect {
                Dialect::Pairs => Ok(Term::hole()),
                Dialect::Plain => Err(loc.error("a hole `[]` is only allowed inside a pair context")),
            },
            RawTerm::Node {
                name,
                args,
                parens,
                loc,
            } => {
                if self.vars.contains(name) {
                    if *parens {
                        return Err(loc.error(format!("variable `{name}` cannot take arguments")));
                    }
                    return Ok(Term::var(name.as_str()));
                }
                let resolved = args
                    .iter()
                    .map(|a| self.resolve(a, dialect))
                    .collect::<Result<Vec<_>, _>>()?;
                if dialect == Dialect::Pairs && name == TOKEN_NAME && !self.arities.contains_key(name) {
                    if resolved.len() != 1 {
                        return Err(loc.error("the token `T` takes exactly one argument"));
                    }
                    return Ok(Term::app(Symbol::token(), resolved));
                }
                if let Some(base) = name.strip_suffix('#') {
                    if dialect == Dialect::Plain {
                        return Err(loc.error(format!("marked symbol `{name}` is only allowed in pairs")));
                    }
                    if !is_valid_ident(base) {
                        return Err(loc.error(format!("invalid identifier `{name}`")));
                    }
                    let f = self.symbol(base, resolved.len(), *loc)?;
                    return Ok(Term::app(f.marked(), resolved));
                }
                if !is_valid_ident(name) {
                    return Err(loc.error(format!("invalid identifier `{name}`")));
                }
                if resolved.is_empty() {
                    self.constants_used.insert(name.clone());
                }
                let f = self.symbol(name, resolved.len(), *loc)?;
                Ok(Term::app(f, resolved))
            }
        }
    }
}

/// Parses a single term; identifiers listed in `vars` are variables.
///
/// Marked symbols `f#`, the token `T(…)` and the hole `[]` are accepted, which
/// makes this convenient for writing pairs and contexts by hand.
pub fn parse_term(src: &str, vars: &[&str]) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(src);
    let raw = raw_term(&mut cur, true)?;
    if !cur.at_end() {
        return Err(cur.loc().error("unexpected trailing input"));
    }
    Resolver::new(vars.iter().map(|v| v.to_string())).resolve(&raw, Dialect::Pairs)
}
