//! The `fpterm` command line.

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::parse::{parse_term_in, parse_with_warnings, InputSpec};
use super::print::{forbidden_line, pairs_section, vars_line};
use super::render::{render_result, render_trace};
use crate::cdp::{build_cdps, CdpProblem, ContextualRule, Mode, Origin};
use crate::pattern::{explore, pi_step, DerivationNode, ExploreLimits, DEFAULT_DEPTH, DEFAULT_WIDTH};
use crate::processors::{dependency_graph, prove, ProverConfig, Verdict};
use crate::synthesis::{synthesize_problem, PairFilter, SynthesisConfig, SynthesisMode};
use crate::term::{Renameable, Term};

#[derive(Parser, Debug)]
#[command(name = "fpterm", version, about = "Termination analysis of rewriting with forbidden patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Try to prove termination.
    Prove(ProveArgs),
    /// Synthesize forbidden patterns that make the system terminating.
    Synthesize(SynthArgs),
    /// Print the contextual dependency pairs as a problem file.
    Cdps(CdpArgs),
    /// Print the dependency graph and its cyclic components.
    Graph(CdpArgs),
    /// Rewrite a term with the forbidden-pattern restriction.
    Rewrite(RewriteArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum ModeArg {
    #[default]
    Strict,
    Compat,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Compat => Mode::Compat,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum SynthArg {
    #[default]
    Onthefly,
    Twophase,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum FilterArg {
    #[default]
    All,
    Nonstructural,
}

#[derive(Args, Debug)]
struct CdpArgs {
    file: PathBuf,
    /// Which pairs to build.
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct ProverArgs {
    /// Context processor bound (pairs per walk).
    #[arg(long)]
    scp_depth: Option<usize>,
    #[arg(long, default_value_t = 2)]
    coeff_max: u64,
    #[arg(long, default_value_t = 10_000)]
    walk_cap: usize,
    #[arg(long, default_value_t = 200_000)]
    poly_budget: usize,
    /// Seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

impl ProverArgs {
    fn config(&self, default_depth: usize) -> Result<ProverConfig, String> {
        let scp_depth = self.scp_depth.unwrap_or(default_depth);
        if scp_depth < 2 {
            return Err(format!("--scp-depth must be at least 2, got {scp_depth}"));
        }
        let timeout = match self.timeout {
            Some(t) if !(t.is_finite() && t >= 0.0) => return Err(format!("invalid timeout {t}")),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(ProverConfig {
            scp_depth,
            coeff_max: self.coeff_max,
            walk_cap: self.walk_cap,
            poly_budget: self.poly_budget,
            timeout,
        })
    }
}

#[derive(Args, Debug)]
struct ProveArgs {
    #[command(flatten)]
    cdp: CdpArgs,
    #[command(flatten)]
    prover: ProverArgs,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[command(flatten)]
    cdp: CdpArgs,
    #[command(flatten)]
    prover: ProverArgs,
    #[arg(long, value_enum, default_value_t)]
    synthesize: SynthArg,
    #[arg(long, value_enum, default_value_t)]
    pair_filter: FilterArg,
    #[arg(long, default_value_t = 25)]
    max_pattern_size: usize,
    #[arg(long, default_value_t = 5)]
    max_iterations: usize,
}

#[derive(Args, Debug)]
struct RewriteArgs {
    file: PathBuf,
    #[arg(long)]
    term: String,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Node budget of the derivation tree.
    #[arg(long, default_value_t = DEFAULT_WIDTH)]
    width: usize,
}

const INPUT_ERROR: i32 = 2;

/// Runs the command line on `args` (program name first) and returns the exit
/// code: 0 proved or done, 1 maybe, 2 bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            INPUT_ERROR
        }
    }
}

fn load(path: &PathBuf, err: &mut dyn Write) -> Result<InputSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = parse_with_warnings(&text).map_err(|e| format!("{}:{e}", path.display()))?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(parsed.spec)
}

fn problem_of(spec: &InputSpec, mode: Mode) -> Result<CdpProblem, String> {
    spec.problem(mode).map_err(|e| e.to_string())
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Proved => 0,
        Verdict::Maybe => 1,
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Prove(a) => {
            let config = a.prover.config(ProverConfig::default().scp_depth)?;
            let spec = load(&a.cdp.file, err)?;
            let problem = problem_of(&spec, a.cdp.mode.into())?;
            let result = prove(&problem, &config);
            write!(out, "{}", render_result(&result)).map_err(io)?;
            Ok(verdict_code(result.verdict))
        }
        Command::Synthesize(a) => {
            let prover = a.prover.config(SynthesisConfig::default().depth)?;
            let spec = load(&a.cdp.file, err)?;
            let problem = problem_of(&spec, a.cdp.mode.into())?;
            let config = SynthesisConfig {
                depth: prover.scp_depth,
                mode: match a.synthesize {
                    SynthArg::Onthefly => SynthesisMode::OnTheFly,
                    SynthArg::Twophase => SynthesisMode::TwoPhase,
                },
                pair_filter: match a.pair_filter {
                    FilterArg::All => PairFilter::All,
                    FilterArg::Nonstructural => PairFilter::NonStructural,
                },
                max_pattern_size: a.max_pattern_size,
                max_iterations: a.max_iterations,
                cdp_mode: a.cdp.mode.into(),
                prover,
            };
            let result = synthesize_problem(&problem, &config).map_err(|e| e.to_string())?;
            for w in &result.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let vars = result.patterns.iter().flat_map(|p| p.variables()).map(|v| v.name().to_string());
            writeln!(out, "{}", vars_line(vars)).map_err(io)?;
            writeln!(out, "{}", forbidden_line(result.patterns.iter())).map_err(io)?;
            writeln!(out, "verdict: {}", result.verdict).map_err(io)?;
            for r in &result.rounds {
                writeln!(out, "round {}: {}", r.iteration, r.pair).map_err(io)?;
                for s in &r.patterns {
                    match &s.generalized_from {
                        Some(raw) => writeln!(out, "  {} generalized from {}", s.pattern, raw),
                        None => writeln!(out, "  {} orthogonal; no generalization needed", s.pattern),
                    }
                    .map_err(io)?;
                }
            }
            write!(out, "{}", render_trace(&result.trace)).map_err(io)?;
            Ok(verdict_code(result.verdict))
        }
        Command::Cdps(a) => {
            let spec = load(&a.file, err)?;
            let mode: Mode = a.mode.into();
            let problem = problem_of(&spec, mode)?;
            write!(out, "{}", cdp_file(&spec, &problem, mode)).map_err(io)?;
            Ok(0)
        }
        Command::Graph(a) => {
            let spec = load(&a.file, err)?;
            let problem = problem_of(&spec, a.mode.into())?;
            let graph = dependency_graph(&problem);
            writeln!(out, "nodes:").map_err(io)?;
            for (i, p) in problem.pairs().iter().enumerate() {
                writeln!(out, "  {i}: {p}").map_err(io)?;
            }
            writeln!(out, "edges:").map_err(io)?;
            for (i, j) in graph.edges() {
                writeln!(out, "  {i} -> {j}").map_err(io)?;
            }
            writeln!(out, "cyclic components:").map_err(io)?;
            for c in graph.cyclic_components() {
                let c: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                writeln!(out, "  {{{}}}", c.join(", ")).map_err(io)?;
            }
            Ok(0)
        }
        Command::Rewrite(a) => {
            let spec = load(&a.file, err)?;
            let term = parse_term_in(&spec, &a.term).map_err(|e| format!("--term {e}"))?;
            let patterns = spec.patterns();
            let limits = ExploreLimits {
                depth: a.depth,
                width: a.width,
            };
            let exploration = explore(&spec.trs, patterns.iter(), &term, limits);
            let mut normal = Vec::new();
            collect_normal_forms(&exploration.root, &spec, &patterns, &mut normal);
            if normal.is_empty() {
                writeln!(out, "no normal form reached within depth {} and {} nodes", a.depth, a.width).map_err(io)?;
                return Ok(1);
            }
            writeln!(out, "normal forms:").map_err(io)?;
            for t in &normal {
                writeln!(out, "  {t}").map_err(io)?;
            }
            if exploration.budget_exceeded {
                writeln!(out, "(exploration cut at the limits; more may exist)").map_err(io)?;
            }
            Ok(0)
        }
    }
}

fn collect_normal_forms(node: &DerivationNode, spec: &InputSpec, patterns: &crate::pattern::PatternSet, out: &mut Vec<Term>) {
    if node.steps.is_empty() {
        if pi_step(&spec.trs, patterns.iter(), &node.term).is_empty() && !out.contains(&node.term) {
            out.push(node.term.clone());
        }
        return;
    }
    for s in &node.steps {
        collect_normal_forms(&s.child, spec, patterns, out);
    }
}

/// A problem file with the pairs, re-parseable as input. In compat mode the
/// pairs strict mode would drop are named in a comment.
fn cdp_file(spec: &InputSpec, problem: &CdpProblem, mode: Mode) -> String {
    let mut names: Vec<String> = spec.variables.clone();
    for p in problem.pairs() {
        names.extend(p.variables().iter().map(|v| v.name().to_string()));
    }
    let mut text = format!("{}\n(RULES\n", vars_line(names));
    for r in spec.trs.rules() {
        text.push_str(&format!("  {} -> {}\n", r.lhs(), r.rhs()));
    }
    text.push_str(")\n");
    if !problem.patterns().is_empty() {
        text.push_str(&super::print::forbidden_section(problem.patterns().iter()));
    }
    text.push_str(&pairs_section(problem.pairs()));
    if mode == Mode::Compat && spec.pairs.is_none() {
        if let Ok(strict) = build_cdps(&spec.trs, &spec.patterns(), Mode::Strict) {
            let extra: Vec<&ContextualRule> = problem
                .pairs()
                .iter()
                .filter(|p| strict.index_of(p).is_none())
                .collect();
            if !extra.is_empty() {
                text.push_str("(COMMENT not built in strict mode:\n");
                for p in extra {
                    let why = match p.origin() {
                        Origin::DPc => "the position is forbidden by a stable pattern",
                        Origin::Ac => "the symbol is not defined",
                        _ => "not constructed",
                    };
                    text.push_str(&format!("  {p} ; {why}\n"));
                }
                text.push_str(")\n");
            }
        }
    }
    text
}
