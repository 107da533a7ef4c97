use std::collections::{BTreeMap, BTreeSet};

use super::{Term, Var};

/// Values that carry variables and can be consistently renamed.
pub trait Renameable: Sized {
    /// Variables in order of first occurrence.
    fn variables(&self) -> Vec<Var>;

    /// Replaces every variable `v` by `rename(v)`.
    fn rename_vars(&self, rename: &mut dyn FnMut(&Var) -> Var) -> Self;

    fn rename_with(&self, map: &BTreeMap<Var, Var>) -> Self {
        self.rename_vars(&mut |v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
    }

    /// Renames variables to `v1, v2, …` in order of first occurrence; two
    /// values are variants of each other iff their canonical forms are equal.
    fn canonical(&self) -> Self {
        let map: BTreeMap<Var, Var> = self
            .variables()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, Var::new(format!("v{}", i + 1))))
            .collect();
        self.rename_with(&map)
    }

    /// Renames variables to `x, y, z, u, v, w, x1, y1, …` in order of first occurrence.
    fn prettified(&self) -> Self {
        const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
        let map: BTreeMap<Var, Var> = self
            .variables()
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let base = NAMES[i % NAMES.len()];
                let name = match i / NAMES.len() {
                    0 => base.to_string(),
                    k => format!("{base}{k}"),
                };
                (v, Var::new(name))
            })
            .collect();
        self.rename_with(&map)
    }

    fn is_variant_of(&self, other: &Self) -> bool
    where
        Self: PartialEq,
    {
        self.canonical() == other.canonical()
    }
}

impl Renameable for Term {
    fn variables(&self) -> Vec<Var> {
        self.vars()
    }

    fn rename_vars(&self, rename: &mut dyn FnMut(&Var) -> Var) -> Term {
        self.map_vars(&mut |v| Term::Var(rename(v)))
    }
}

/// Renames the items so that no two of them share a variable: every variable
/// `v` of the `i`-th item (counting from 1) becomes `v_i`.
///
/// The suffix after the last underscore is the item index, so the renaming is
/// injective across items whatever the original names are.
pub fn rename_apart<T: Renameable>(items: &[T]) -> Vec<T> {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| item.rename_vars(&mut |v| Var::new(format!("{}_{}", v.name(), i + 1))))
        .collect()
}

/// Renames `item` so that it shares no variable with `avoid`.
pub fn rename_away<T: Renameable>(item: &T, avoid: &BTreeSet<Var>) -> T {
    let vars = item.variables();
    let mut fresh = FreshVars::new(avoid.iter().chain(&vars).cloned());
    let map: BTreeMap<Var, Var> = vars
        .into_iter()
        .filter(|v| avoid.contains(v))
        .map(|v| {
            let w = fresh.fresh(v.name());
            (v, w)
        })
        .collect();
    item.rename_with(&map)
}

/// Deterministic supply of variables not clashing with a reserved set.
#[derive(Clone, Debug, Default)]
pub struct FreshVars {
    used: BTreeSet<Var>,
}

impl FreshVars {
    pub fn new(used: impl IntoIterator<Item = Var>) -> FreshVars {
        FreshVars {
            used: used.into_iter().collect(),
        }
    }

    pub fn reserve(&mut self, v: &Var) {
        self.used.insert(v.clone());
    }

    /// `base'`, `base''`, … is tried first, then numbered names.
    pub fn fresh(&mut self, base: &str) -> Var {
        let mut candidate = format!("{base}'");
        for _ in 0..2 {
            if !self.used.contains(&Var::new(candidate.as_str())) {
                let v = Var::new(candidate);
                self.used.insert(v.clone());
                return v;
            }
            candidate.push('\'');
        }
        (1..)
            .map(|k| Var::new(format!("{base}{k}")))
            .find(|v| !self.used.contains(v))
            .inspect(|v| {
                self.used.insert(v.clone());
            })
            .expect("unbounded supply")
    }
}
