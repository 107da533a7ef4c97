use std::fmt::Write;

use super::print::forbidden_line;
use crate::cdp::CdpProblem;
use crate::processors::{Justification, ProofNode, ProofResult};

fn ids(outputs: &[(usize, CdpProblem)]) -> String {
    if outputs.is_empty() {
        return "nothing".to_string();
    }
    outputs.iter().map(|(id, _)| format!("#{id}")).collect::<Vec<_>>().join(", ")
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// Human-readable proof trace, one block per processor application.
pub fn render_trace(trace: &[ProofNode]) -> String {
    if trace.is_empty() {
        return "trivially finite: no pairs\n".to_string();
    }
    let mut out = String::new();
    for node in trace {
        let input = &node.input;
        match &node.justification {
            Justification::Components(comps) => {
                if comps.is_empty() {
                    writeln!(
                        out,
                        "#{}: dependency graph over {} has no cycles",
                        node.input_id,
                        plural(input.pairs().len(), "pair")
                    )
                    .unwrap();
                } else {
                    writeln!(
                        out,
                        "#{}: dependency graph splits {} into {}",
                        node.input_id,
                        plural(input.pairs().len(), "pair"),
                        plural(comps.len(), "component")
                    )
                    .unwrap();
                    for ((id, _), comp) in node.outputs.iter().zip(comps) {
                        writeln!(out, "  #{id}:").unwrap();
                        for &i in comp {
                            writeln!(out, "    {}", input.pairs()[i]).unwrap();
                        }
                    }
                }
            }
            Justification::ScpDeletion { pair, walks } => {
                writeln!(out, "#{}: {} deletes {} -> {}", node.input_id, node.processor, pair, ids(&node.outputs)).unwrap();
                if walks.is_empty() {
                    writeln!(out, "  no walks start at this pair").unwrap();
                }
                for w in walks {
                    let names: Vec<String> = w.pairs.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "  walk {}", names.join(" ; ")).unwrap();
                    writeln!(out, "    nested term {} hole at {}", w.nested.term, w.nested.position).unwrap();
                    writeln!(out, "    blocked by {} anchored at {}", w.pattern, w.anchor).unwrap();
                }
            }
            Justification::Interpretation { interpretation, strict } => {
                writeln!(
                    out,
                    "#{}: {} removes {} -> {}",
                    node.input_id,
                    node.processor,
                    plural(strict.len(), "pair"),
                    ids(&node.outputs)
                )
                .unwrap();
                for line in interpretation.to_string().lines() {
                    writeln!(out, "  {line}").unwrap();
                }
                for p in strict {
                    writeln!(out, "  strict: {p}").unwrap();
                }
            }
            Justification::Synthesis { pair, patterns } => {
                writeln!(out, "#{}: {} for {} -> {}", node.input_id, node.processor, pair, ids(&node.outputs)).unwrap();
                for s in patterns {
                    match &s.generalized_from {
                        Some(raw) => writeln!(out, "  {} generalized from {}", s.pattern, raw).unwrap(),
                        None => writeln!(out, "  {} orthogonal; no generalization needed", s.pattern).unwrap(),
                    }
                }
                writeln!(out, "  emits {}", forbidden_line(patterns.iter().map(|s| &s.pattern))).unwrap();
            }
        }
    }
    out
}

/// The verdict line, the trace and any open problems.
pub fn render_result(result: &ProofResult) -> String {
    let mut out = format!("verdict: {}\n", result.verdict);
    if result.timed_out {
        out.push_str("timed out\n");
    }
    if !result.trace.is_empty() || result.stuck.is_empty() {
        out.push_str(&render_trace(&result.trace));
    }
    for (id, p) in &result.stuck {
        writeln!(out, "open problem #{id}:").unwrap();
        for pair in p.pairs() {
            writeln!(out, "  {pair}").unwrap();
        }
    }
    out
}
