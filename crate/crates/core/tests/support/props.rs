//! Randomized property suites. Each runs a fixed-seed proptest runner and
//! reports the first failure as a string, so both the libtest suite and the
//! acceptance gate can drive them.

use std::collections::BTreeSet;

use fpterm::cdp::{build_cdps, nested_context, CdpProblem, ChainStep, ContextualRule, Mode};
use fpterm::pattern::{
    allowed_positions, forbidden_positions, forbidding_pattern, generalize, in_pi_orth, is_stable, pi_step, Flag,
    ForbiddenPattern, PatternSet,
};
use fpterm::processors::{dependency_graph, find_orientation, scp_deletions};
use fpterm::synthesis::synthesize_for_pair;
use fpterm::term::{match_term, unify, Position, Substitution, Term, Trs, Var};
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chains::{ground_substitution, plain_symbols, random_chain};
use super::gen;
use super::oracle;

pub const CASES: u32 = 1000;

/// Runs `test` on `cases` generated inputs and returns how many of them
/// actually exercised the property (the test returns `false` when the input
/// left nothing to check).
fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<bool, TestCaseError>) -> Result<usize, String> {
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: cases * 50,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let exercised = std::cell::Cell::new(0usize);
    runner
        .run(&strategy, |v| {
            if test(v)? {
                exercised.set(exercised.get() + 1);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(exercised.get())
}

fn set(ps: impl IntoIterator<Item = Position>) -> BTreeSet<Vec<usize>> {
    ps.into_iter().map(|p| p.path().to_vec()).collect()
}

fn patterns(max: usize, with_above: bool) -> BoxedStrategy<Vec<ForbiddenPattern>> {
    prop::collection::vec(gen::pattern(2, with_above), 0..=max).boxed()
}

pub fn position_partition(cases: u32) -> Result<usize, String> {
    run(cases, (patterns(4, true), gen::term(4, true)), |(pi, s)| {
        let forbidden = set(forbidden_positions(&pi, &s));
        let allowed = set(allowed_positions(&pi, &s));
        let all = set(s.positions());
        prop_assert!(forbidden.is_disjoint(&allowed));
        prop_assert_eq!(forbidden.union(&allowed).cloned().collect::<BTreeSet<_>>(), all);
        prop_assert_eq!(forbidden, oracle::forbidden(&pi, &s));
        Ok(true)
    })
}

pub fn monotonicity(cases: u32) -> Result<usize, String> {
    run(cases, (patterns(3, true), patterns(2, true), gen::term(4, true), gen::trs(3, 2)), |(pi, extra, s, trs)| {
        let mut bigger = pi.clone();
        bigger.extend(extra);
        let small = set(allowed_positions(&pi, &s));
        let large = set(allowed_positions(&bigger, &s));
        prop_assert!(large.is_subset(&small));
        let steps = |ps: &Vec<ForbiddenPattern>| -> BTreeSet<(Vec<usize>, usize, Term)> {
            pi_step(&trs, ps, &s).into_iter().map(|st| (st.position.path().to_vec(), st.rule_index, st.result)).collect()
        };
        prop_assert!(steps(&bigger).is_subset(&steps(&pi)));
        Ok(true)
    })
}

pub fn empty_collapse(cases: u32) -> Result<usize, String> {
    run(cases, (gen::trs(3, 2), gen::term(4, true)), |(trs, t)| {
        let none: Vec<ForbiddenPattern> = Vec::new();
        let ours: BTreeSet<_> =
            pi_step(&trs, &none, &t).into_iter().map(|st| (st.position.path().to_vec(), st.rule_index, st.result)).collect();
        prop_assert_eq!(ours, oracle::all_steps(&trs, &t));
        Ok(true)
    })
}

pub fn extraction(cases: u32) -> Result<usize, String> {
    let strategy = (gen::trs(3, 2), patterns(3, true), gen::term(3, true), any::<Index>(), gen::term(3, true));
    run(cases, strategy, |(trs, pi, c, i, s)| {
        let p = gen::pick_position(&c, i);
        let whole = c.replace_at(&p, s.clone()).unwrap();
        let inner: BTreeSet<(Position, usize, Term)> =
            pi_step(&trs, &pi, &s).into_iter().map(|st| (st.position, st.rule_index, st.result)).collect();
        for st in pi_step(&trs, &pi, &whole) {
            let Some(q) = st.position.strip_prefix(&p) else { continue };
            let t = st.result.get(&p).unwrap().clone();
            prop_assert!(inner.contains(&(q.clone(), st.rule_index, t)), "step at {} in {} not found in {}", st.position, whole, s);
        }
        Ok(true)
    })
}

fn stable_or_generalized(pi: ForbiddenPattern, trs: &Trs) -> ForbiddenPattern {
    if is_stable(&pi, trs) {
        pi
    } else {
        generalize(&pi, trs).unwrap()
    }
}

pub fn stable_persistence(cases: u32) -> Result<usize, String> {
    let strategy = (gen::trs(3, 2), gen::pattern(2, false), gen::term(2, true), any::<Index>(), any::<u64>());
    run(cases, strategy, |(trs, pi, c, i, seed)| {
        let pi = stable_or_generalized(pi, &trs);
        prop_assert!(is_stable(&pi, &trs));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols: Vec<_> = trs.signature().iter().cloned().collect();
        let sigma = ground_substitution(&mut rng, &pi.term().vars(), &symbols, 2);
        let o = gen::pick_position(&c, i);
        let s = c.replace_at(&o, sigma.apply(pi.term())).unwrap();
        let anchor = o.concat(pi.position());
        let targets: Vec<Position> = match pi.flag() {
            Flag::Here => vec![anchor.clone()],
            _ => s.positions().into_iter().filter(|q| anchor.is_above(q)).collect(),
        };
        let only = [pi.clone()];
        for target in targets {
            for st in pi_step(&trs, &only, &s) {
                if st.position.is_parallel_to(&target) || st.position.is_below(&target) {
                    prop_assert!(
                        forbidding_pattern(&only, &st.result, &target).is_some(),
                        "{} lost at {} after step at {} of {}",
                        pi,
                        target,
                        st.position,
                        s
                    );
                }
            }
        }
        Ok(true)
    })
}

/// Random plain steps restricted by `keep`, checking `check` after each.
fn random_rewrites<R: Rng>(
    rng: &mut R,
    trs: &Trs,
    mut t: Term,
    steps: usize,
    keep: impl Fn(&Position) -> bool,
    mut check: impl FnMut(&Term) -> Result<(), TestCaseError>,
) -> Result<(), TestCaseError> {
    for _ in 0..steps {
        let candidates: Vec<_> = oracle::all_steps(trs, &t)
            .into_iter()
            .filter(|(p, _, _)| keep(&oracle::to_position(p)))
            .collect();
        let Some((_, _, next)) = candidates.choose(rng) else { break };
        t = next.clone();
        check(&t)?;
    }
    Ok(())
}

pub fn orth_persistence(cases: u32) -> Result<usize, String> {
    let strategy = (gen::trs(3, 2), any::<u64>(), 2usize..=3);
    run(cases, strategy, |(trs, seed, n)| {
        let problem = build_cdps(&trs, &PatternSet::new(), Mode::Strict).unwrap();
        if problem.is_empty() {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let graph = dependency_graph(&problem);
        let start = rng.random_range(0..problem.pairs().len());
        let Some(walks) = graph.walks(start, n, 200) else { return Ok(false) };
        let Some(walk) = walks.choose(&mut rng) else { return Ok(false) };
        let seq: Vec<ContextualRule> = walk.iter().map(|&i| problem.pairs()[i].clone()).collect();
        let nested = nested_context(&seq, problem.marking()).unwrap();
        let raw = ForbiddenPattern::new(nested.term.clone(), nested.position.clone(), Flag::Here).unwrap();
        let pi = generalize(&raw, &trs).unwrap();
        prop_assert!(in_pi_orth(&pi, &trs));
        let only = [pi.clone()];
        let symbols: Vec<_> = trs.signature().iter().cloned().collect();
        let theta = ground_substitution(&mut rng, &nested.term.vars(), &symbols, 2);
        let ground = theta.apply(&nested.term);
        let hole = nested.position.clone();
        prop_assert!(forbidding_pattern(&only, &ground, &hole).is_some());
        random_rewrites(
            &mut rng,
            &trs,
            ground,
            5,
            |p| p.is_parallel_to(&hole) || p.is_below(&hole),
            |t| {
                prop_assert!(forbidding_pattern(&only, t, &hole).is_some(), "{} no longer forbids {} in {}", pi, hole, t);
                Ok(())
            },
        )?;
        Ok(true)
    })
}

fn abstract_term<R: Rng>(rng: &mut R, u: &Term) -> Term {
    let mut t = u.clone();
    for _ in 0..rng.random_range(0..=3) {
        let ps = t.positions();
        let p = ps.choose(rng).unwrap().clone();
        let v = *gen::VARS.choose(rng).unwrap();
        t = t.replace_at(&p, Term::var(v)).unwrap();
    }
    t
}

pub fn match_unify(cases: u32) -> Result<usize, String> {
    run(cases, (gen::term(3, true), gen::term(3, true), gen::term(3, false), any::<u64>()), |(p, s, u, seed)| {
        match match_term(&p, &s) {
            Some(sigma) => prop_assert_eq!(sigma.apply(&p), s.clone()),
            None => prop_assert!(oracle::matches(&p, &s).is_none()),
        }
        if let Some(sigma) = unify(&p, &s) {
            prop_assert_eq!(sigma.apply(&p), sigma.apply(&s));
            prop_assert!(sigma.is_idempotent());
        }
        // two abstractions of the same ground term always unify, and the
        // unifier is more general than the grounding
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (abstract_term(&mut rng, &u), abstract_term(&mut rng, &u));
        let (Some(ra), Some(rb)) = (oracle::matches(&a, &u), oracle::matches(&b, &u)) else {
            return Ok(false);
        };
        if ra.iter().any(|(k, v)| rb.get(k).is_some_and(|w| w != v)) {
            return Ok(false);
        }
        let mut ground = ra.clone();
        ground.extend(rb);
        let sigma = unify(&a, &b);
        prop_assert!(sigma.is_some(), "{} and {} have a common instance {}", a, b, u);
        let sigma = sigma.unwrap();
        let vars: Vec<Var> = ground.keys().map(|k| Var::new(k.as_str())).collect();
        let general = Term::app(fpterm::term::Symbol::plain("tuple", vars.len()), vars.iter().map(|v| sigma.apply(&Term::Var(v.clone()))).collect());
        let specific = Term::app(
            fpterm::term::Symbol::plain("tuple", vars.len()),
            vars.iter().map(|v| ground[v.name()].clone()).collect(),
        );
        prop_assert!(oracle::matches(&general, &specific).is_some(), "{} does not factor {}", general, specific);
        Ok(true)
    })
}

fn random_problem(trs: &Trs, pi: &[ForbiddenPattern]) -> CdpProblem {
    let pats: PatternSet = pi.iter().cloned().collect();
    build_cdps(trs, &pats, Mode::Strict).unwrap()
}

/// Plain-step successors of `term` that stay off the tracked path.
fn interludes(problem: &CdpProblem, term: &Term, tracked: &Position, max: usize) -> Vec<(Term, Vec<(Position, fpterm::term::Rule)>)> {
    let mut out = vec![(term.clone(), Vec::new())];
    let mut frontier = out.clone();
    for _ in 0..max {
        let mut next = Vec::new();
        for (t, trail) in &frontier {
            let erased = problem.erase(t).unwrap();
            for st in pi_step(problem.rules(), problem.patterns(), &erased) {
                if st.position.is_prefix_of(tracked) {
                    continue;
                }
                let u = t.replace_at(&st.position, st.result.get(&st.position).unwrap().clone()).unwrap();
                let mut trail = trail.clone();
                trail.push((st.position.clone(), st.rule.clone()));
                next.push((u, trail));
            }
        }
        next.truncate(60);
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn graph_over_approximation(cases: u32) -> Result<usize, String> {
    let strategy = (gen::trs(3, 2), patterns(2, false), any::<u64>());
    run(cases, strategy, |(trs, pi, seed)| {
        let problem = random_problem(&trs, &pi);
        if problem.is_empty() {
            return Ok(false);
        }
        let graph = dependency_graph(&problem);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols = plain_symbols(&problem);
        let mut checked = false;
        for _ in 0..4 {
            let i = rng.random_range(0..problem.pairs().len());
            let first = &problem.pairs()[i];
            let sigma = ground_substitution(&mut rng, &first.lhs().vars(), &symbols, 3);
            let start = sigma.apply(first.lhs());
            let after = sigma.apply(&first.plugged_rhs());
            let tracked = first.hole_position().clone();
            let token = first.rhs().root().is_some_and(|f| f.is_token());
            let reach = interludes(&problem, &after, &tracked, if token { 0 } else { 3 });
            for (t, plain) in reach {
                let here = t.get(&tracked).unwrap();
                for (j, second) in problem.pairs().iter().enumerate() {
                    let Some(tau) = match_term(second.lhs(), here) else { continue };
                    let steps = [
                        ChainStep { pair: first.clone(), substitution: sigma.clone(), plain: plain.clone() },
                        ChainStep { pair: second.clone(), substitution: tau, plain: vec![] },
                    ];
                    if fpterm::cdp::validate_chain(&problem, &steps) {
                        prop_assert!(graph.has_edge(i, j), "chain {} ; {} from {} without an edge", first, second, start);
                        checked = true;
                    }
                }
            }
        }
        Ok(checked)
    })
}

/// Synthesizes patterns for a random pair so the context processor has
/// something to delete, then checks no deleted pair starts a chain with
/// `n + 1` pair applications.
pub fn scp_keeps_chain_starters(cases: u32) -> Result<usize, String> {
    let strategy = (gen::trs(3, 2), patterns(2, false), any::<u64>(), 2usize..=3);
    run(cases, strategy, |(trs, pi, seed, n)| {
        let mut problem = random_problem(&trs, &pi);
        if problem.is_empty() {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let graph = dependency_graph(&problem);
        let target = rng.random_range(0..problem.pairs().len());
        if let Ok(found) = synthesize_for_pair(&problem, &graph, target, n, 200, 25) {
            let mut pats = problem.patterns().clone();
            pats.extend(found.patterns.into_iter().map(|s| s.pattern));
            problem = problem.with_patterns(pats).unwrap();
        }
        let graph = dependency_graph(&problem);
        let deleted: BTreeSet<usize> = scp_deletions(&problem, &graph, n, 2000).unwrap().into_iter().map(|d| d.pair).collect();
        let deleted: Vec<usize> = deleted.into_iter().collect();
        for _ in 0..8 {
            let Some(&start) = deleted.choose(&mut rng) else { break };
            if let Some(chain) = random_chain(&mut rng, &problem, start, n + 1, 2, 2) {
                prop_assert!(fpterm::cdp::validate_chain(&problem, &chain.steps));
                prop_assert!(!deleted.contains(&start), "deleted {} starts a chain", problem.pairs()[start]);
            }
        }
        Ok(!deleted.is_empty())
    })
}

pub fn orientation_soundness(cases: u32) -> Result<usize, String> {
    run(cases, (gen::trs(3, 2), any::<u64>()), |(trs, seed)| {
        let problem = random_problem(&trs, &[]);
        let Some(o) = find_orientation(&problem, 2, 20_000) else { return Ok(false) };
        let coeffs = o.interpretation.coefficients();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols = plain_symbols(&problem);
        let mut constraints: Vec<(&Term, &Term, bool)> = problem.rules().rules().iter().map(|r| (r.lhs(), r.rhs(), false)).collect();
        for (i, p) in problem.pairs().iter().enumerate() {
            constraints.push((p.lhs(), p.rhs(), o.strict.contains(&i)));
        }
        for (l, r, strict) in constraints {
            for _ in 0..500 {
                let sigma: Substitution = ground_substitution(&mut rng, &l.vars(), &symbols, 2);
                let (vl, vr) = (oracle::poly_value(coeffs, &sigma.apply(l)), oracle::poly_value(coeffs, &sigma.apply(r)));
                if strict {
                    prop_assert!(vl > vr, "{} > {} fails: {} vs {}", l, r, vl, vr);
                } else {
                    prop_assert!(vl >= vr, "{} >= {} fails: {} vs {}", l, r, vl, vr);
                }
            }
        }
        Ok(true)
    })
}

pub fn generalize_properties(cases: u32) -> Result<usize, String> {
    run(cases, (gen::trs(3, 2), gen::pattern(3, false), prop::collection::vec(gen::term(3, false), 8)), |(trs, pi, grounds)| {
        let g = generalize(&pi, &trs).unwrap();
        prop_assert!(in_pi_orth(&g, &trs));
        prop_assert_eq!(g.position(), pi.position());
        prop_assert_eq!(g.flag(), pi.flag());
        prop_assert!(oracle::matches(g.term(), pi.term()).is_some());
        for s in grounds {
            if oracle::matches(pi.term(), &s).is_some() {
                prop_assert!(oracle::matches(g.term(), &s).is_some());
            }
        }
        Ok(true)
    })
}

pub fn subsequence_closure(cases: u32) -> Result<usize, String> {
    run(cases, (gen::trs(3, 2), patterns(2, false), any::<u64>()), |(trs, pi, seed)| {
        let problem = random_problem(&trs, &pi);
        if problem.is_empty() {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = rng.random_range(0..problem.pairs().len());
        let Some(chain) = random_chain(&mut rng, &problem, start, 4, 2, 2) else { return Ok(false) };
        prop_assert!(fpterm::cdp::validate_chain(&problem, &chain.steps));
        for i in 0..chain.steps.len() {
            let base = &chain.tracked[i];
            for j in i + 1..=chain.steps.len() {
                let sub: Vec<ChainStep> = chain.steps[i..j]
                    .iter()
                    .map(|s| ChainStep {
                        pair: s.pair.clone(),
                        substitution: s.substitution.clone(),
                        plain: s.plain.iter().filter_map(|(q, r)| q.strip_prefix(base).map(|q| (q, r.clone()))).collect(),
                    })
                    .collect();
                let replay = fpterm::cdp::replay_chain(&problem, &sub);
                prop_assert!(replay.is_ok(), "steps {}..{}: {:?}", i, j, replay.err());
            }
        }
        Ok(true)
    })
}

pub fn erase_simulation(cases: u32) -> Result<usize, String> {
    use fpterm::cdp::{Origin, StepKind};
    run(cases, (gen::trs(3, 2), patterns(2, false), any::<u64>()), |(trs, pi, seed)| {
        let problem = random_problem(&trs, &pi);
        if problem.is_empty() {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = rng.random_range(0..problem.pairs().len());
        let Some(chain) = random_chain(&mut rng, &problem, start, 4, 2, 2) else { return Ok(false) };
        for step in fpterm::cdp::replay_chain(&problem, &chain.steps).unwrap() {
            let before = problem.erase(&step.before).unwrap();
            let after = problem.erase(&step.after).unwrap();
            match step.kind {
                StepKind::Pair(Origin::Ac) | StepKind::Pair(Origin::Sc) => prop_assert_eq!(before, after),
                _ => {
                    let results = oracle::all_steps(problem.rules(), &before);
                    prop_assert!(
                        results.iter().any(|(p, _, t)| *p == step.position.path() && *t == after),
                        "{} -> {} is not one rule step at {}",
                        before,
                        after,
                        step.position
                    );
                }
            }
        }
        Ok(true)
    })
}

pub fn synthesized_patterns_delete(cases: u32) -> Result<usize, String> {
    run(cases, (gen::trs(3, 2), any::<Index>(), 2usize..=3), |(trs, i, n)| {
        let problem = random_problem(&trs, &[]);
        if problem.is_empty() {
            return Ok(false);
        }
        let graph = dependency_graph(&problem);
        let target = i.index(problem.pairs().len());
        let found = synthesize_for_pair(&problem, &graph, target, n, 500, 25).unwrap();
        for s in &found.patterns {
            prop_assert!(in_pi_orth(&s.pattern, &trs), "{} is not orthogonal", s.pattern);
            prop_assert_eq!(s.pattern.flag(), Flag::Here);
        }
        if found.complete && !found.patterns.is_empty() {
            let mut pats = problem.patterns().clone();
            pats.extend(found.patterns.iter().map(|s| s.pattern.clone()));
            let extended = problem.with_patterns(pats).unwrap();
            let deleted = scp_deletions(&extended, &dependency_graph(&extended), n, 500).unwrap();
            prop_assert!(deleted.iter().any(|d| d.pair == target));
            return Ok(true);
        }
        Ok(false)
    })
}

pub fn construction_shapes(cases: u32) -> Result<usize, String> {
    use fpterm::cdp::Origin;
    run(cases, (gen::trs(3, 2), patterns(2, false)), |(trs, pi)| {
        let pats: PatternSet = pi.into_iter().collect();
        let strict = build_cdps(&trs, &pats, Mode::Strict).unwrap();
        let compat = build_cdps(&trs, &pats, Mode::Compat).unwrap();
        for p in strict.pairs() {
            prop_assert!(compat.index_of(p).is_some(), "{} only in strict mode", p);
            match p.origin() {
                Origin::Ac => prop_assert_eq!(p.context(), &Term::hole()),
                Origin::Sc => prop_assert_eq!(p.hole_position().depth(), 1),
                _ => {
                    let lhs = strict.erase(p.lhs()).unwrap();
                    let rhs = p.context().replace_at(p.hole_position(), strict.erase(p.rhs()).unwrap()).unwrap();
                    prop_assert!(
                        trs.rules().iter().any(|r| r.lhs() == &lhs && r.rhs() == &rhs),
                        "{} does not come from a rule",
                        p
                    );
                }
            }
        }
        Ok(true)
    })
}
