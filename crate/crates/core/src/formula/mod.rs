//! Monotone formulas as parse trees.
//!
//! A [`Formula`] is a tree of variable leaves under `+` ([`Formula::Sum`]) and
//! `*` ([`Formula::Prod`]) nodes. Most operations expect the normalized shape
//! produced by [`Formula::normalize`]: every internal node has at least two
//! children, node kinds alternate along every root-to-leaf path, and children
//! are kept in a canonical order so that structural equality is equality up
//! to commutativity.

mod handle;
mod parse;
mod rewrite;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::names::natural_cmp;

pub use handle::Handle;
pub use parse::parse_formula;
pub use rewrite::{
    find_redundancy, find_redundancy_by_subformulas, fresh_name, make_nonredundant, substitute_const,
    substitute_many, substitute_subformula, substitute_true, Redundancy, Simplified,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formula {
    Var(String),
    Sum(Vec<Formula>),
    Prod(Vec<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    /// Builds a `+` node without normalizing. Panics on an empty child list.
    pub fn sum(children: Vec<Formula>) -> Self {
        assert!(!children.is_empty(), "sum needs at least one child");
        Formula::Sum(children)
    }

    /// Builds a `*` node without normalizing. Panics on an empty child list.
    pub fn prod(children: Vec<Formula>) -> Self {
        assert!(!children.is_empty(), "product needs at least one child");
        Formula::Prod(children)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    pub fn children(&self) -> &[Formula] {
        match self {
            Formula::Var(_) => &[],
            Formula::Sum(c) | Formula::Prod(c) => c,
        }
    }

    /// Collapses unary nodes, flattens same-kind parent/child pairs and sorts
    /// children canonically. Leaf counts are preserved exactly.
    pub fn normalize(self) -> Formula {
        match self {
            Formula::Var(_) => self,
            Formula::Sum(children) => normalize_node(children, true),
            Formula::Prod(children) => normalize_node(children, false),
        }
    }

    pub fn is_normalized(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Sum(c) | Formula::Prod(c) => {
                c.len() >= 2
                    && c.windows(2).all(|w| w[0] <= w[1])
                    && c.iter().all(|ch| !same_kind(self, ch) && ch.is_normalized())
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Sum(c) | Formula::Prod(c) => c.iter().map(Formula::leaf_count).sum(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Formula::size).sum::<usize>()
    }

    pub fn occurrences(&self) -> OccurrenceProfile {
        let mut counts = BTreeMap::new();
        self.count_into(&mut counts);
        OccurrenceProfile::from_counts(counts)
    }

    fn count_into<'a>(&'a self, counts: &mut BTreeMap<&'a str, usize>) {
        match self {
            Formula::Var(v) => *counts.entry(v.as_str()).or_default() += 1,
            Formula::Sum(c) | Formula::Prod(c) => c.iter().for_each(|ch| ch.count_into(counts)),
        }
    }

    /// Distinct variable names in natural order.
    pub fn variables(&self) -> Vec<String> {
        self.occurrences().counts.into_iter().map(|(v, _)| v).collect()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Formula::Var(v) => v == name,
            Formula::Sum(c) | Formula::Prod(c) => c.iter().any(|ch| ch.contains_var(name)),
        }
    }

    /// Variables `a` for which this formula has the shape `a + ψ`, plus the
    /// variable itself for a bare leaf (read as `a + ψ` with empty `ψ`).
    pub fn isolating_vars(&self) -> Vec<&str> {
        match self {
            Formula::Var(v) => vec![v.as_str()],
            Formula::Sum(c) => c
                .iter()
                .filter_map(|ch| match ch {
                    Formula::Var(v) => Some(v.as_str()),
                    _ => None,
                })
                .collect(),
            Formula::Prod(_) => Vec::new(),
        }
    }

    pub fn isolates(&self, var: &str) -> bool {
        self.isolating_vars().contains(&var)
    }

    /// Evaluates the formula under an assignment given as a predicate.
    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Var(v) => value(v),
            Formula::Sum(c) => c.iter().any(|ch| ch.eval(value)),
            Formula::Prod(c) => c.iter().all(|ch| ch.eval(value)),
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&Formula> {
        path.iter().try_fold(self, |node, &i| node.children().get(i))
    }

    /// Materializes the subformula addressed by `h`: the node at `h.path`,
    /// restricted to the selected children when `h` carries a selection.
    pub fn subformula(&self, h: &Handle) -> Option<Formula> {
        let node = self.at(&h.path)?;
        match &h.children {
            None => Some(node.clone()),
            Some(sel) => {
                let kids = node.children();
                if sel.len() < 2 || sel.iter().any(|&i| i >= kids.len()) || !strictly_increasing(sel)
                {
                    return None;
                }
                let picked = sel.iter().map(|&i| kids[i].clone()).collect();
                Some(match node {
                    Formula::Sum(_) => Formula::Sum(picked),
                    Formula::Prod(_) => Formula::Prod(picked),
                    Formula::Var(_) => unreachable!("leaves have no children"),
                })
            }
        }
    }

    /// Handles of all `*` nodes with exactly two children.
    pub fn two_mult_handles(&self) -> Vec<Handle> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |path, node| {
            if matches!(node, Formula::Prod(c) if c.len() == 2) {
                out.push(Handle::node(path.to_vec()));
            }
        });
        out
    }

    /// Every subformula: each node, and for internal nodes every selection of
    /// at least two (but not all) of its children.
    pub fn subformula_handles(&self) -> Vec<Handle> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |path, node| {
            out.push(Handle::node(path.to_vec()));
            let m = node.children().len();
            if (3..=20).contains(&m) {
                for mask in 0u32..(1 << m) {
                    let ones = mask.count_ones() as usize;
                    if ones >= 2 && ones < m {
                        let sel = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                        out.push(Handle::selection(path.to_vec(), sel));
                    }
                }
            }
        });
        out
    }

    /// Pre-order traversal with the root-to-node path.
    pub fn walk(&self, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize], &Formula)) {
        visit(path, self);
        for (i, ch) in self.children().iter().enumerate() {
            path.push(i);
            ch.walk(path, visit);
            path.pop();
        }
    }

    /// Structural rendering such as `Prod[a1, Sum[a2, a5]]`.
    pub fn tree_string(&self) -> String {
        match self {
            Formula::Var(v) => v.clone(),
            Formula::Sum(c) | Formula::Prod(c) => {
                let tag = if matches!(self, Formula::Sum(_)) { "Sum" } else { "Prod" };
                let inner: Vec<String> = c.iter().map(Formula::tree_string).collect();
                format!("{tag}[{}]", inner.join(", "))
            }
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Formula::Var(_) => 0,
            Formula::Prod(_) => 1,
            Formula::Sum(_) => 2,
        }
    }
}

fn strictly_increasing(sel: &[usize]) -> bool {
    sel.windows(2).all(|w| w[0] < w[1])
}

fn same_kind(a: &Formula, b: &Formula) -> bool {
    matches!((a, b), (Formula::Sum(_), Formula::Sum(_)) | (Formula::Prod(_), Formula::Prod(_)))
}

fn normalize_node(children: Vec<Formula>, is_sum: bool) -> Formula {
    let mut flat = Vec::with_capacity(children.len());
    for ch in children {
        match ch.normalize() {
            Formula::Sum(g) if is_sum => flat.extend(g),
            Formula::Prod(g) if !is_sum => flat.extend(g),
            other => flat.push(other),
        }
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    flat.sort();
    if is_sum {
        Formula::Sum(flat)
    } else {
        Formula::Prod(flat)
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Formula::Var(a), Formula::Var(b)) => natural_cmp(a, b),
            (Formula::Sum(a), Formula::Sum(b)) | (Formula::Prod(a), Formula::Prod(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical text with minimal parentheses: `a1*(a2+a3*a4)`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Sum(c) => {
                for (i, ch) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{ch}")?;
                }
                Ok(())
            }
            Formula::Prod(c) => {
                for (i, ch) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match ch {
                        Formula::Sum(g) if g.len() > 1 => write!(f, "({ch})")?,
                        _ => write!(f, "{ch}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Leaf counts per variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceProfile {
    /// `(variable, count)` in natural variable order; every count is at least 1.
    pub counts: Vec<(String, usize)>,
    pub read_index: usize,
}

impl OccurrenceProfile {
    fn from_counts(counts: BTreeMap<&str, usize>) -> Self {
        let mut counts: Vec<(String, usize)> =
            counts.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        counts.sort_by(|a, b| natural_cmp(&a.0, &b.0));
        let read_index = counts.iter().map(|&(_, c)| c).max().unwrap_or(0);
        OccurrenceProfile { counts, read_index }
    }

    pub fn get(&self, var: &str) -> usize {
        self.counts.iter().find(|(v, _)| v == var).map_or(0, |&(_, c)| c)
    }
}

/// True iff the root is a `+` node with the leaf `var` among its children.
pub fn is_isolated(var: &str, f: &Formula) -> bool {
    matches!(f, Formula::Sum(_)) && f.isolates(var)
}
