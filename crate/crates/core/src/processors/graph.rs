use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::cdp::CdpProblem;
use crate::term::{rename_away, unify, FreshVars, Term, Trs};

/// An over-approximation of which pair can follow which in a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    successors: Vec<Vec<usize>>,
}

impl DependencyGraph {
    pub fn len(&self) -> usize {
        self.successors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successors.is_empty()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors[from].binary_search(&to).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(i, succ)| succ.iter().map(move |&j| (i, j)))
    }

    /// Strongly connected components with at least one edge, each sorted,
    /// ordered by smallest member.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (i, j) in self.edges() {
            g.add_edge(nodes[i], nodes[j], ());
        }
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                c.sort_unstable();
                c
            })
            .filter(|c| c.len() > 1 || self.has_edge(c[0], c[0]))
            .collect();
        comps.sort();
        comps
    }

    /// The graph restricted to `keep` (in the given order), re-indexed.
    pub fn restrict(&self, keep: &[usize]) -> DependencyGraph {
        let index = |j: usize| keep.iter().position(|&k| k == j);
        DependencyGraph {
            successors: keep
                .iter()
                .map(|&i| self.successors[i].iter().filter_map(|&j| index(j)).collect())
                .collect(),
        }
    }

    /// All walks with `nodes` vertices starting at `start`, in lexicographic
    /// order; `None` if there are more than `cap`.
    pub fn walks(&self, start: usize, nodes: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut walk = vec![start];
        if self.extend(&mut walk, nodes, cap, &mut out) {
            Some(out)
        } else {
            None
        }
    }

    fn extend(&self, walk: &mut Vec<usize>, nodes: usize, cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
        if walk.len() >= nodes {
            out.push(walk.clone());
            return out.len() <= cap;
        }
        let last = *walk.last().expect("non-empty");
        for &next in &self.successors[last] {
            walk.push(next);
            let ok = self.extend(walk, nodes, cap, out);
            walk.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Replaces subterms with a defined root by fresh variables.
fn cap(t: &Term, trs: &Trs, fresh: &mut FreshVars) -> Term {
    match t {
        Term::App(f, _) if f.is_plain() && trs.is_defined(f) => Term::Var(fresh.fresh("c")),
        Term::App(f, args) => Term::app(f.clone(), args.iter().map(|a| cap(a, trs, fresh)).collect()),
        Term::Var(_) => t.clone(),
    }
}

/// Gives every variable occurrence its own variable.
fn linearize(t: &Term, fresh: &mut FreshVars) -> Term {
    t.map_vars(&mut |v| Term::Var(fresh.fresh(v.name())))
}

/// Estimates the possible successors of pairs.
///
/// After a token-rooted right-hand side no rule steps may happen, so it must
/// unify with the next left-hand side directly. Otherwise rules may rewrite
/// below the root: defined subterms are capped and variables linearized first.
pub fn dependency_graph(problem: &CdpProblem) -> DependencyGraph {
    let pairs = problem.pairs();
    let trs = problem.rules();
    let successors = pairs
        .iter()
        .map(|alpha| {
            let rhs = alpha.rhs();
            let mut fresh = FreshVars::new(rhs.vars());
            let estimate = match rhs {
                Term::App(f, _) if f.is_token() => rhs.clone(),
                Term::App(f, args) => {
                    let capped: Vec<Term> = args.iter().map(|a| cap(a, trs, &mut fresh)).collect();
                    linearize(&Term::app(f.clone(), capped), &mut fresh)
                }
                Term::Var(_) => Term::Var(fresh.fresh("c")),
            };
            let avoid = estimate.var_set();
            (0..pairs.len())
                .filter(|&j| {
                    let beta = rename_away(&pairs[j], &avoid);
                    unify(&estimate, beta.lhs()).is_some()
                })
                .collect()
        })
        .collect();
    DependencyGraph { successors }
}
