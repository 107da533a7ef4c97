use std::collections::BTreeSet;

use super::syntax::{is_valid_ident, raw_term, Cursor, Dialect, Loc, ParseError, RawTerm, Resolver};
use crate::cdp::{build_cdps, CdpError, CdpProblem, ContextualRule, Mode, Origin};
use crate::pattern::{outermost_encode, Flag, ForbiddenPattern, PatternSet};
use crate::term::{Position, Rule, Term, Trs};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Full,
    Outermost,
}

/// A parsed problem file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputSpec {
    /// Declared variables, in order of declaration.
    pub variables: Vec<String>,
    pub trs: Trs,
    pub strategy: Strategy,
    pub declared_patterns: PatternSet,
    /// Pairs given directly instead of being constructed from the rules.
    pub pairs: Option<Vec<ContextualRule>>,
}

impl InputSpec {
    /// The patterns the analysis works with: the outermost encoding or the
    /// declared ones.
    pub fn patterns(&self) -> PatternSet {
        match self.strategy {
            Strategy::Outermost => outermost_encode(&self.trs),
            Strategy::Full => self.declared_patterns.clone(),
        }
    }

    /// The CDP problem of the input: the given pairs, or the constructed ones.
    pub fn problem(&self, mode: Mode) -> Result<CdpProblem, CdpError> {
        match &self.pairs {
            Some(pairs) => CdpProblem::new(pairs.clone(), self.trs.clone(), self.patterns()),
            None => build_cdps(&self.trs, &self.patterns(), mode),
        }
    }
}

/// A parse result with the non-fatal diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub spec: InputSpec,
    pub warnings: Vec<String>,
}

enum Section {
    Rules(Vec<(RawTerm, RawTerm, Loc)>),
    Forbidden(Vec<(RawTerm, String, Loc, String, Loc)>),
    Pairs(Vec<(RawTerm, RawTerm, RawTerm, Loc)>),
}

fn eat_arrow(cur: &mut Cursor<'_>) -> Result<(), ParseError> {
    let loc = cur.loc();
    match cur.peek_word() {
        Some(w) if w == "->" => {
            cur.word()?;
            Ok(())
        }
        Some(w) => Err(loc.error(format!("expected `->`, found `{w}`"))),
        None => Err(loc.error("expected `->`")),
    }
}

fn rules_body(cur: &mut Cursor<'_>) -> Result<Section, ParseError> {
    let mut rules = Vec::new();
    while cur.peek() != Some(')') {
        let loc = cur.loc();
        let lhs = raw_term(cur, false)?;
        eat_arrow(cur)?;
        let rhs = raw_term(cur, false)?;
        rules.push((lhs, rhs, loc));
    }
    Ok(Section::Rules(rules))
}

fn forbidden_body(cur: &mut Cursor<'_>) -> Result<Section, ParseError> {
    let mut entries = Vec::new();
    while cur.peek() != Some(')') {
        cur.expect('(')?;
        let term = raw_term(cur, false)?;
        cur.expect(',')?;
        let (position, ploc) = cur.word()?;
        cur.expect(',')?;
        let (flag, floc) = cur.word()?;
        cur.expect(')')?;
        entries.push((term, position, ploc, flag, floc));
    }
    Ok(Section::Forbidden(entries))
}

fn pairs_body(cur: &mut Cursor<'_>) -> Result<Section, ParseError> {
    let mut pairs = Vec::new();
    while cur.peek() != Some(')') {
        let loc = cur.loc();
        let lhs = raw_term(cur, false)?;
        eat_arrow(cur)?;
        let rhs = raw_term(cur, false)?;
        cur.expect('[')?;
        let context = raw_term(cur, true)?;
        cur.expect(']')?;
        pairs.push((lhs, rhs, context, loc));
    }
    Ok(Section::Pairs(pairs))
}

fn looks_like_variable(name: &str) -> bool {
    let rest = name.trim_start_matches(|c: char| ('u'..='z').contains(&c));
    let first_len = name.len() - rest.len();
    if first_len != 1 {
        return false;
    }
    let rest = rest.strip_prefix('s').unwrap_or(rest);
    rest.chars().all(|c| c.is_ascii_digit() || c == '\'')
}

pub fn parse(text: &str) -> Result<InputSpec, ParseError> {
    parse_with_warnings(text).map(|p| p.spec)
}

/// Parses a problem file: sections `VAR`, `RULES`, `STRATEGY`, `FORBIDDEN`,
/// `PAIRS` and `COMMENT`.
pub fn parse_with_warnings(text: &str) -> Result<Parsed, ParseError> {
    let mut cur = Cursor::new(text);
    let mut variables: Vec<String> = Vec::new();
    let mut strategy = None;
    let mut sections = Vec::new();
    while !cur.at_end() {
        let open = cur.loc();
        cur.expect('(')?;
        let (keyword, kloc) = cur.word()?;
        match keyword.as_str() {
            "VAR" => {
                while cur.peek() != Some(')') {
                    let (v, vloc) = cur.word()?;
                    if !is_valid_ident(&v) {
                        return Err(vloc.error(format!("invalid variable name `{v}`")));
                    }
                    if !variables.contains(&v) {
                        variables.push(v);
                    }
                }
            }
            "RULES" => sections.push(rules_body(&mut cur)?),
            "FORBIDDEN" => sections.push(forbidden_body(&mut cur)?),
            "PAIRS" => sections.push(pairs_body(&mut cur)?),
            "STRATEGY" => {
                let (s, sloc) = cur.word()?;
                strategy = Some(match s.as_str() {
                    "OUTERMOST" => Strategy::Outermost,
                    "FULL" => Strategy::Full,
                    other => return Err(sloc.error(format!("unsupported strategy `{other}`"))),
                });
            }
            "COMMENT" => {
                cur.skip_balanced(open)?;
                continue;
            }
            other => return Err(kloc.error(format!("unknown section `{other}`"))),
        }
        cur.expect(')')?;
    }

    let mut resolver = Resolver::new(variables.iter().cloned());
    let mut rules = Vec::new();
    let mut patterns = PatternSet::new();
    let mut pairs: Option<Vec<ContextualRule>> = None;
    for section in sections {
        match section {
            Section::Rules(list) => {
                for (l, r, loc) in list {
                    let lhs = resolver.resolve(&l, Dialect::Plain)?;
                    let rhs = resolver.resolve(&r, Dialect::Plain)?;
                    rules.push(Rule::new(lhs, rhs).map_err(|e| loc.error(e.to_string()))?);
                }
            }
            Section::Forbidden(list) => {
                for (t, p, ploc, f, floc) in list {
                    let term = resolver.resolve(&t, Dialect::Plain)?;
                    let position: Position = p.parse().map_err(|e| ploc.error(format!("{e}")))?;
                    let flag: Flag = f.parse().map_err(|e| floc.error(format!("{e}")))?;
                    let pattern = ForbiddenPattern::new(term, position, flag).map_err(|e| ploc.error(e.to_string()))?;
                    patterns.insert(pattern);
                }
            }
            Section::Pairs(list) => {
                let out = pairs.get_or_insert_with(Vec::new);
                for (l, r, c, loc) in list {
                    let lhs = resolver.resolve(&l, Dialect::Pairs)?;
                    let rhs = resolver.resolve(&r, Dialect::Pairs)?;
                    let context = resolver.resolve(&c, Dialect::Pairs)?;
                    out.push(ContextualRule::new(lhs, rhs, context, Origin::User).map_err(|e| loc.error(e.to_string()))?);
                }
            }
        }
    }
    let trs = Trs::new(rules).map_err(|e| Loc { line: 1, column: 1 }.error(e.to_string()))?;
    let strategy = strategy.unwrap_or_default();
    if strategy == Strategy::Outermost && !patterns.is_empty() {
        return Err(Loc { line: 1, column: 1 }.error("STRATEGY OUTERMOST cannot be combined with FORBIDDEN patterns"));
    }
    if let Some(p) = pairs.as_ref() {
        if let Err(e) = CdpProblem::new(p.clone(), trs.clone(), PatternSet::new()) {
            return Err(Loc { line: 1, column: 1 }.error(e.to_string()));
        }
    }
    let declared: BTreeSet<&String> = variables.iter().collect();
    let warnings = resolver
        .constants_used
        .iter()
        .filter(|c| !declared.contains(c) && looks_like_variable(c))
        .map(|c| format!("`{c}` is not declared in VAR and is treated as a constant"))
        .collect();
    Ok(Parsed {
        spec: InputSpec {
            variables,
            trs,
            strategy,
            declared_patterns: patterns,
            pairs,
        },
        warnings,
    })
}

/// Parses a term using the variables and symbol arities of `spec`.
pub fn parse_term_in(spec: &InputSpec, src: &str) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(src);
    let raw = raw_term(&mut cur, false)?;
    if !cur.at_end() {
        return Err(cur.loc().error("unexpected trailing input"));
    }
    let mut resolver = Resolver::new(spec.variables.iter().cloned());
    for f in spec.trs.signature() {
        resolver.arities.insert(f.name().to_string(), f.arity());
    }
    resolver.resolve(&raw, Dialect::Plain)
}
