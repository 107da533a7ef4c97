use std::collections::{HashMap, VecDeque};

use super::{pi_step, ForbiddenPattern};
use crate::term::{Position, Rule, Term, Trs};

pub const DEFAULT_DEPTH: usize = 50;
pub const DEFAULT_WIDTH: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreLimits {
    /// Maximal derivation length.
    pub depth: usize,
    /// Maximal number of nodes in the tree.
    pub width: usize,
}

impl Default for ExploreLimits {
    fn default() -> ExploreLimits {
        ExploreLimits {
            depth: DEFAULT_DEPTH,
            width: DEFAULT_WIDTH,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub position: Position,
    pub rule: Rule,
    pub child: DerivationNode,
}

/// A node of a Π-derivation tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationNode {
    pub term: Term,
    pub steps: Vec<DerivationStep>,
}

impl DerivationNode {
    /// Whether some branch starting here spells out `terms` (the first of
    /// which must be this node's term).
    pub fn has_path(&self, terms: &[Term]) -> bool {
        match terms {
            [] => true,
            [first, rest @ ..] => {
                *first == self.term
                    && (rest.is_empty() || self.steps.iter().any(|s| s.child.has_path(rest)))
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.steps.iter().map(|s| s.child.size()).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub root: DerivationNode,
    /// Some expanded node had no Π-step.
    pub reached_normal_form: bool,
    /// Longest derivation in the tree.
    pub max_length: usize,
    /// Some node was left unexpanded because the node budget ran out.
    pub budget_exceeded: bool,
}

struct Slot {
    term: Term,
    depth: usize,
    children: Vec<(Position, Rule, usize)>,
}

/// Breadth-first Π-derivation tree from `t`, expanding successors in
/// (position, rule) order and cut at `limits`.
pub fn explore<'a>(
    trs: &Trs,
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern> + Clone,
    t: &Term,
    limits: ExploreLimits,
) -> Exploration {
    let mut arena = vec![Slot {
        term: t.clone(),
        depth: 0,
        children: Vec::new(),
    }];
    let mut queue = VecDeque::from([0usize]);
    let mut reached_normal_form = false;
    let mut budget_exceeded = false;
    let mut max_length = 0;
    while let Some(i) = queue.pop_front() {
        if arena[i].depth >= limits.depth {
            continue;
        }
        let steps = pi_step(trs, patterns.clone(), &arena[i].term);
        if steps.is_empty() {
            reached_normal_form = true;
            continue;
        }
        if arena.len() + steps.len() > limits.width {
            budget_exceeded = true;
            break;
        }
        let depth = arena[i].depth + 1;
        max_length = max_length.max(depth);
        for step in steps {
            let j = arena.len();
            arena.push(Slot {
                term: step.result,
                depth,
                children: Vec::new(),
            });
            arena[i].children.push((step.position, step.rule, j));
            queue.push_back(j);
        }
    }
    Exploration {
        root: build(&mut arena, 0),
        reached_normal_form,
        max_length,
        budget_exceeded,
    }
}

fn build(arena: &mut [Slot], i: usize) -> DerivationNode {
    let children = std::mem::take(&mut arena[i].children);
    let term = arena[i].term.clone();
    DerivationNode {
        term,
        steps: children
            .into_iter()
            .map(|(position, rule, j)| DerivationStep {
                position,
                rule,
                child: build(arena, j),
            })
            .collect(),
    }
}

/// Summary of the Π-reduction graph reachable from a set of start terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    pub states: usize,
    /// A term reachable from itself in one or more steps.
    pub cycle: Option<Term>,
    /// Length of the longest derivation; meaningful only without a cycle and
    /// when the graph is complete.
    pub longest: usize,
    /// The state cap was hit, so the graph is partial.
    pub truncated: bool,
}

/// Builds the Π-reduction graph reachable from `starts` (at most `max_states`
/// distinct terms) and checks it for cycles and long derivations.
pub fn reachability<'a>(
    trs: &Trs,
    patterns: impl IntoIterator<Item = &'a ForbiddenPattern> + Clone,
    starts: &[Term],
    max_states: usize,
) -> Reachability {
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut terms: Vec<Term> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;
    let mut intern = |t: Term, terms: &mut Vec<Term>, succ: &mut Vec<Vec<usize>>, queue: &mut VecDeque<usize>| {
        *index.entry(t.clone()).or_insert_with(|| {
            terms.push(t);
            succ.push(Vec::new());
            queue.push_back(terms.len() - 1);
            terms.len() - 1
        })
    };
    for t in starts {
        intern(t.clone(), &mut terms, &mut succ, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        if terms.len() > max_states {
            truncated = true;
            break;
        }
        let term = terms[i].clone();
        let mut next: Vec<usize> = pi_step(trs, patterns.clone(), &term)
            .into_iter()
            .map(|s| intern(s.result, &mut terms, &mut succ, &mut queue))
            .collect();
        next.sort_unstable();
        next.dedup();
        succ[i] = next;
    }

    // Iterative DFS: colour 0 = new, 1 = on stack, 2 = done.
    let n = terms.len();
    let mut colour = vec![0u8; n];
    let mut longest = vec![0usize; n];
    let mut cycle = None;
    for s in 0..n {
        if colour[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        colour[s] = 1;
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if let Some(&w) = succ[v].get(*k) {
                *k += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        cycle.get_or_insert_with(|| terms[w].clone());
                    }
                    _ => {}
                }
            } else {
                colour[v] = 2;
                longest[v] = succ[v]
                    .iter()
                    .filter(|&&w| colour[w] == 2)
                    .map(|&w| longest[w] + 1)
                    .max()
                    .unwrap_or(0);
                stack.pop();
            }
        }
    }
    Reachability {
        states: n,
        cycle,
        longest: longest.into_iter().max().unwrap_or(0),
        truncated,
    }
}
