use std::fmt::Write;

use super::parse::{InputSpec, Strategy};
use crate::cdp::ContextualRule;
use crate::pattern::ForbiddenPattern;

fn var_section(names: impl IntoIterator<Item = String>) -> String {
    let names: Vec<String> = names.into_iter().collect();
    if names.is_empty() {
        "(VAR)".to_string()
    } else {
        format!("(VAR {})", names.join(" "))
    }
}

/// Prints a problem file that parses back to `spec`.
pub fn print_spec(spec: &InputSpec) -> String {
    let mut out = String::new();
    writeln!(out, "{}", var_section(spec.variables.iter().cloned())).unwrap();
    out.push_str("(RULES\n");
    for r in spec.trs.rules() {
        writeln!(out, "  {} -> {}", r.lhs(), r.rhs()).unwrap();
    }
    out.push_str(")\n");
    if spec.strategy == Strategy::Outermost {
        out.push_str("(STRATEGY OUTERMOST)\n");
    }
    if !spec.declared_patterns.is_empty() {
        out.push_str(&forbidden_section(&spec.declared_patterns));
    }
    if let Some(pairs) = &spec.pairs {
        out.push_str(&pairs_section(pairs));
    }
    out
}

/// `(FORBIDDEN ...)` with one pattern per line.
pub fn forbidden_section<'a>(patterns: impl IntoIterator<Item = &'a ForbiddenPattern>) -> String {
    let mut out = String::from("(FORBIDDEN\n");
    for p in patterns {
        writeln!(out, "  {p}").unwrap();
    }
    out.push_str(")\n");
    out
}

/// `(FORBIDDEN (p1) (p2) ...)` on one line.
pub fn forbidden_line<'a>(patterns: impl IntoIterator<Item = &'a ForbiddenPattern>) -> String {
    let mut out = String::from("(FORBIDDEN");
    for p in patterns {
        write!(out, " {p}").unwrap();
    }
    out.push(')');
    out
}

pub fn pairs_section(pairs: &[ContextualRule]) -> String {
    let mut out = String::from("(PAIRS\n");
    for p in pairs {
        writeln!(out, "  {p}").unwrap();
    }
    out.push_str(")\n");
    out
}

/// A `VAR` section listing the given variable names, deduplicated in order.
pub fn vars_line(names: impl IntoIterator<Item = String>) -> String {
    let mut seen: Vec<String> = Vec::new();
    for n in names {
        if !seen.contains(&n) {
            seen.push(n);
        }
    }
    var_section(seen)
}
