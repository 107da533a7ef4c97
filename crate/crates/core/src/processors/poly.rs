use std::collections::BTreeMap;
use std::fmt;

use crate::cdp::CdpProblem;
use crate::term::{Symbol, Term, Var};

/// A linear polynomial over natural-number variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearPoly {
    pub constant: u64,
    pub coeffs: BTreeMap<Var, u64>,
}

impl LinearPoly {
    fn add_scaled(&mut self, other: &LinearPoly, k: u64) {
        self.constant += k * other.constant;
        for (v, c) in &other.coeffs {
            if k * c > 0 {
                *self.coeffs.entry(v.clone()).or_insert(0) += k * c;
            }
        }
    }

    fn dominates(&self, other: &LinearPoly) -> bool {
        other
            .coeffs
            .iter()
            .all(|(v, c)| self.coeffs.get(v).copied().unwrap_or(0) >= *c)
    }

    /// `self ≥ other` for all natural values of the variables, decided
    /// coefficient-wise.
    pub fn weakly_greater(&self, other: &LinearPoly) -> bool {
        self.constant >= other.constant && self.dominates(other)
    }

    /// `self ≥ other + 1`, decided coefficient-wise.
    pub fn strictly_greater(&self, other: &LinearPoly) -> bool {
        self.constant > other.constant && self.dominates(other)
    }

    pub fn eval(&self, values: &BTreeMap<Var, u64>) -> u64 {
        self.constant
            + self
                .coeffs
                .iter()
                .map(|(v, c)| c * values.get(v).copied().unwrap_or(0))
                .sum::<u64>()
    }
}

/// `[f](x1, …, xn) = c0 + c1·x1 + … + cn·xn` for each interpreted symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyInterpretation {
    coefficients: BTreeMap<Symbol, Vec<u64>>,
}

impl PolyInterpretation {
    pub fn new(coefficients: BTreeMap<Symbol, Vec<u64>>) -> PolyInterpretation {
        for (f, c) in &coefficients {
            assert_eq!(c.len(), f.arity() + 1, "one constant and one coefficient per argument");
        }
        PolyInterpretation { coefficients }
    }

    pub fn coefficients(&self) -> &BTreeMap<Symbol, Vec<u64>> {
        &self.coefficients
    }

    /// Uninterpreted symbols count as `x1 + … + xn`.
    pub fn interpret(&self, t: &Term) -> LinearPoly {
        match t {
            Term::Var(v) => LinearPoly {
                constant: 0,
                coeffs: BTreeMap::from([(v.clone(), 1)]),
            },
            Term::App(f, args) => {
                let default;
                let c = match self.coefficients.get(f) {
                    Some(c) => c,
                    None => {
                        default = std::iter::once(0).chain(std::iter::repeat_n(1, args.len())).collect::<Vec<_>>();
                        &default
                    }
                };
                let mut out = LinearPoly {
                    constant: c[0],
                    coeffs: BTreeMap::new(),
                };
                for (a, k) in args.iter().zip(&c[1..]) {
                    out.add_scaled(&self.interpret(a), *k);
                }
                out
            }
        }
    }

    /// Value of a ground term, or of a term under a variable assignment.
    pub fn eval(&self, t: &Term, values: &BTreeMap<Var, u64>) -> u64 {
        self.interpret(t).eval(values)
    }
}

impl fmt::Display for PolyInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sym, c)) in self.coefficients.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let params: Vec<String> = (1..=sym.arity()).map(|k| format!("x{k}")).collect();
            let mut parts: Vec<String> = Vec::new();
            if c[0] > 0 || c[1..].iter().all(|&k| k == 0) {
                parts.push(c[0].to_string());
            }
            for (k, coeff) in c[1..].iter().enumerate() {
                match coeff {
                    0 => {}
                    1 => parts.push(params[k].clone()),
                    n => parts.push(format!("{n}*{}", params[k])),
                }
            }
            if params.is_empty() {
                write!(f, "[{sym}] = {}", parts.join(" + "))?;
            } else {
                write!(f, "[{sym}]({}) = {}", params.join(","), parts.join(" + "))?;
            }
        }
        Ok(())
    }
}

/// An interpretation orienting all rules weakly and some pairs strictly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub interpretation: PolyInterpretation,
    /// Indices of the strictly oriented pairs.
    pub strict: Vec<usize>,
}

/// A term with symbols and variables replaced by indices, so the search can
/// evaluate it without maps.
enum Compiled {
    Var(usize),
    App(usize, Vec<Compiled>),
}

fn compile(t: &Term, symbols: &[Symbol], vars: &mut Vec<Var>) -> Compiled {
    match t {
        Term::Var(v) => {
            let i = vars.iter().position(|w| w == v).unwrap_or_else(|| {
                vars.push(v.clone());
                vars.len() - 1
            });
            Compiled::Var(i)
        }
        Term::App(f, args) => {
            let i = symbols.iter().position(|g| g == f).expect("every symbol is searched");
            Compiled::App(i, args.iter().map(|a| compile(a, symbols, vars)).collect())
        }
    }
}

/// Adds `k` times the polynomial of `t` to `out` (constant first, then one
/// slot per variable).
fn accumulate(t: &Compiled, k: u64, coefficients: &[&[u64]], out: &mut [u64]) {
    match t {
        Compiled::Var(i) => out[1 + i] += k,
        Compiled::App(f, args) => {
            let c = coefficients[*f];
            out[0] += k * c[0];
            for (a, m) in args.iter().zip(&c[1..]) {
                if *m > 0 {
                    accumulate(a, k * m, coefficients, out);
                }
            }
        }
    }
}

/// `l ≥ r` (or `l > r`) as a pair of compiled sides over `vars` variables.
struct Constraint {
    lhs: Compiled,
    rhs: Compiled,
    vars: usize,
}

impl Constraint {
    fn new(l: &Term, r: &Term, symbols: &[Symbol]) -> Constraint {
        let mut vars = Vec::new();
        let lhs = compile(l, symbols, &mut vars);
        let rhs = compile(r, symbols, &mut vars);
        Constraint {
            lhs,
            rhs,
            vars: vars.len(),
        }
    }

    /// Whether `l` under `upper` can be at least (or above) `r` under `lower`.
    fn holds(&self, upper: &[&[u64]], lower: &[&[u64]], strict: bool, buf: &mut Vec<u64>) -> bool {
        let n = self.vars + 1;
        buf.clear();
        buf.resize(2 * n, 0);
        let (l, r) = buf.split_at_mut(n);
        accumulate(&self.lhs, 1, upper, l);
        accumulate(&self.rhs, 1, lower, r);
        let constant = if strict { l[0] > r[0] } else { l[0] >= r[0] };
        constant && l[1..].iter().zip(&r[1..]).all(|(a, b)| a >= b)
    }
}

struct Search {
    symbols: Vec<Symbol>,
    /// Candidate coefficient vectors per symbol, in enumeration order.
    candidates: Vec<Vec<Vec<u64>>>,
    rules: Vec<Constraint>,
    pairs: Vec<Constraint>,
    /// All-zero and all-maximal vectors per symbol, for unassigned symbols.
    zeros: Vec<Vec<u64>>,
    maxima: Vec<Vec<u64>>,
    budget: usize,
    nodes: usize,
    buf: Vec<u64>,
}

fn vectors(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    all.sort_by_key(|v| (v.iter().sum::<u64>(), v.clone()));
    all
}

impl Search {
    fn completed<'b>(&'b self, assigned: &'b [Vec<u64>], fill: &'b [Vec<u64>]) -> Vec<&'b [u64]> {
        (0..self.symbols.len())
            .map(|i| assigned.get(i).unwrap_or(&fill[i]).as_slice())
            .collect()
    }

    /// Whether some completion of `assigned` might still orient everything.
    fn feasible(&mut self, assigned: &[Vec<u64>]) -> bool {
        let mut buf = std::mem::take(&mut self.buf);
        let upper = self.completed(assigned, &self.maxima);
        let lower = self.completed(assigned, &self.zeros);
        let ok = self.rules.iter().chain(&self.pairs).all(|c| c.holds(&upper, &lower, false, &mut buf))
            && self.pairs.iter().any(|c| c.holds(&upper, &lower, true, &mut buf));
        self.buf = buf;
        ok
    }

    fn run(&mut self, assigned: &mut Vec<Vec<u64>>) -> Option<Orientation> {
        if assigned.len() == self.symbols.len() {
            let mut buf = std::mem::take(&mut self.buf);
            let exact: Vec<&[u64]> = assigned.iter().map(Vec::as_slice).collect();
            let weak = self.rules.iter().chain(&self.pairs).all(|c| c.holds(&exact, &exact, false, &mut buf));
            let strict: Vec<usize> = (0..self.pairs.len())
                .filter(|&i| self.pairs[i].holds(&exact, &exact, true, &mut buf))
                .collect();
            self.buf = buf;
            let interpretation = PolyInterpretation {
                coefficients: self.symbols.iter().cloned().zip(assigned.iter().cloned()).collect(),
            };
            return (weak && !strict.is_empty()).then_some(Orientation { interpretation, strict });
        }
        let i = assigned.len();
        for k in 0..self.candidates[i].len() {
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            assigned.push(self.candidates[i][k].clone());
            if self.feasible(assigned) {
                if let Some(found) = self.run(assigned) {
                    return Some(found);
                }
            }
            assigned.pop();
        }
        None
    }
}

/// Searches linear interpretations with coefficients in `0..=coeff_max`
/// orienting every rule and every pair (contexts stripped) weakly and at
/// least one pair strictly. At most `budget` partial assignments are tried.
pub fn find_orientation(problem: &CdpProblem, coeff_max: u64, budget: usize) -> Option<Orientation> {
    let rules: Vec<(&Term, &Term)> = problem.rules().rules().iter().map(|r| (r.lhs(), r.rhs())).collect();
    let pairs: Vec<(&Term, &Term)> = problem.pairs().iter().map(|p| (p.lhs(), p.rhs())).collect();
    if pairs.is_empty() {
        return None;
    }
    let mut freq: BTreeMap<Symbol, usize> = BTreeMap::new();
    for (l, r) in rules.iter().chain(&pairs) {
        for t in [l, r] {
            for (_, sub) in t.subterms() {
                if let Some(f) = sub.root() {
                    *freq.entry(f.clone()).or_insert(0) += 1;
                }
            }
        }
    }
    let mut symbols: Vec<(Symbol, usize)> = freq.into_iter().collect();
    symbols.sort_by(|(f, a), (g, b)| b.cmp(a).then_with(|| f.cmp(g)));
    let symbols: Vec<Symbol> = symbols.into_iter().map(|(f, _)| f).collect();
    let compile_all = |cs: &[(&Term, &Term)]| cs.iter().map(|(l, r)| Constraint::new(l, r, &symbols)).collect();
    let mut search = Search {
        candidates: symbols.iter().map(|f| vectors(f.arity() + 1, coeff_max)).collect(),
        rules: compile_all(&rules),
        pairs: compile_all(&pairs),
        zeros: symbols.iter().map(|f| vec![0; f.arity() + 1]).collect(),
        maxima: symbols.iter().map(|f| vec![coeff_max; f.arity() + 1]).collect(),
        symbols,
        budget,
        nodes: 0,
        buf: Vec::new(),
    };
    if !search.feasible(&[]) {
        return None;
    }
    search.run(&mut Vec::new())
}
