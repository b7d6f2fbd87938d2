//! Sum-of-products forms.
//!
//! [`csop`] is the complete expansion of a formula by distributivity and
//! per-term idempotency; [`sop`] removes absorbed terms, leaving the minterms
//! of the function. Both run on index bit sets and report an explicit error
//! once a configurable term budget is exceeded.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formula::Formula;
use crate::graph::Graph;
use crate::names::{natural_cmp, sort_names};
use crate::truth_table::{self, TruthTable};
use crate::varset::{minimize, VarSet};

pub const DEFAULT_TERM_BUDGET: usize = 1 << 20;

/// A product of distinct variables, kept in natural name order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Term(Vec<String>);

impl Term {
    /// Panics on an empty list; duplicates are merged.
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Term {
        let mut v: Vec<String> = vars.into_iter().map(Into::into).collect();
        assert!(!v.is_empty(), "a term needs at least one variable");
        sort_names(&mut v);
        Term(v)
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, var: &str) -> bool {
        self.0.iter().any(|v| v == var)
    }

    pub fn is_subset(&self, other: &Term) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match natural_cmp(a, b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("*"))
    }
}

/// An antichain of terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Term>", try_from = "Vec<Term>")]
pub struct SopForm {
    terms: Vec<Term>,
}

impl SopForm {
    /// Applies absorption and sorts.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> SopForm {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        terms.sort();
        terms.dedup();
        let mut kept: Vec<Term> = Vec::with_capacity(terms.len());
        let mut by_size = terms.clone();
        by_size.sort_by_key(Term::len);
        for t in by_size {
            if !kept.iter().any(|k| k.is_subset(&t)) {
                kept.push(t);
            }
        }
        kept.sort();
        SopForm { terms: kept }
    }

    pub fn from_name_lists<S: Into<String>>(lists: impl IntoIterator<Item = Vec<S>>) -> SopForm {
        SopForm::from_terms(lists.into_iter().map(Term::new))
    }

    /// Parses `a*b + c` style text (any formula text is accepted).
    pub fn parse(text: &str) -> Result<SopForm> {
        sop(&crate::formula::parse_formula(text)?)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.binary_search(t).is_ok()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.iter().flat_map(|t| t.0.iter().cloned()).collect();
        sort_names(&mut v);
        v
    }

    /// The sum of the terms as a formula; `None` for the empty form.
    pub fn to_formula(&self) -> Option<Formula> {
        let prods: Vec<Formula> = self
            .terms
            .iter()
            .map(|t| Formula::prod(t.0.iter().cloned().map(Formula::Var).collect()))
            .collect();
        if prods.is_empty() {
            None
        } else {
            Some(Formula::sum(prods).normalize())
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("sop json")
    }
}

impl From<SopForm> for Vec<Term> {
    fn from(s: SopForm) -> Self {
        s.terms
    }
}

impl TryFrom<Vec<Term>> for SopForm {
    type Error = String;

    fn try_from(v: Vec<Term>) -> Result<Self, String> {
        if v.iter().any(Term::is_empty) {
            return Err("empty term".into());
        }
        Ok(SopForm::from_terms(v.into_iter().map(|t| Term::new(t.0))))
    }
}

/// Terms joined by ` + `, variables by `*`.
impl fmt::Display for SopForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(Term::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SopConfig {
    pub term_budget: usize,
    /// Largest variable count for the truth-table fallback in [`equivalent_with`].
    pub table_vars: usize,
}

impl Default for SopConfig {
    fn default() -> Self {
        SopConfig { term_budget: DEFAULT_TERM_BUDGET, table_vars: truth_table::MAX_VARS }
    }
}

struct Expander<'a> {
    index: HashMap<&'a str, usize>,
    universe: usize,
    budget: usize,
    absorb: bool,
}

impl<'a> Expander<'a> {
    fn new(vars: &'a [String], budget: usize, absorb: bool) -> Self {
        let index = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        Expander { index, universe: vars.len(), budget, absorb }
    }

    fn expand(&self, f: &Formula) -> Result<Vec<VarSet>> {
        let terms = match f {
            Formula::Var(v) => vec![VarSet::singleton(self.universe, self.index[v.as_str()])],
            Formula::Sum(c) => {
                let mut acc = Vec::new();
                for ch in c {
                    acc.extend(self.expand(ch)?);
                    self.check(acc.len())?;
                }
                acc
            }
            Formula::Prod(c) => {
                let mut acc = vec![VarSet::new(self.universe)];
                for ch in c {
                    let rhs = self.expand(ch)?;
                    self.check(acc.len().saturating_mul(rhs.len()))?;
                    let mut next = Vec::with_capacity(acc.len() * rhs.len());
                    for a in &acc {
                        for b in &rhs {
                            next.push(a.union(b));
                        }
                    }
                    acc = self.tidy(next);
                }
                acc
            }
        };
        Ok(self.tidy(terms))
    }

    fn tidy(&self, mut terms: Vec<VarSet>) -> Vec<VarSet> {
        if self.absorb {
            minimize(terms)
        } else {
            terms.sort();
            terms.dedup();
            terms
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.budget {
            Err(Error::TermBudget { budget: self.budget })
        } else {
            Ok(())
        }
    }
}

fn to_terms(sets: Vec<VarSet>, vars: &[String]) -> Vec<Term> {
    sets.into_iter()
        .map(|s| Term(s.iter().map(|i| vars[i].clone()).collect()))
        .collect()
}

/// Complete sum of products: distributive expansion with idempotency inside
/// each term, duplicates merged, absorbable terms kept.
pub fn csop(f: &Formula) -> Result<Vec<Term>> {
    csop_with(f, &SopConfig::default())
}

pub fn csop_with(f: &Formula, cfg: &SopConfig) -> Result<Vec<Term>> {
    let vars = f.variables();
    let sets = Expander::new(&vars, cfg.term_budget, false).expand(f)?;
    let mut terms = to_terms(sets, &vars);
    terms.sort();
    Ok(terms)
}

/// Minterms of `f`: the absorption-free CSOP.
pub fn sop(f: &Formula) -> Result<SopForm> {
    sop_with(f, &SopConfig::default())
}

pub fn sop_with(f: &Formula, cfg: &SopConfig) -> Result<SopForm> {
    let vars = f.variables();
    let sets = Expander::new(&vars, cfg.term_budget, true).expand(f)?;
    let mut terms = to_terms(sets, &vars);
    terms.sort();
    Ok(SopForm { terms })
}

/// Logical equivalence by SOP comparison, falling back to truth tables when
/// expansion exceeds its budget.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    equivalent_with(f, g, &SopConfig::default())
}

pub fn equivalent_with(f: &Formula, g: &Formula, cfg: &SopConfig) -> Result<bool> {
    match (sop_with(f, cfg), sop_with(g, cfg)) {
        (Ok(a), Ok(b)) => Ok(a == b),
        (Err(e @ Error::TermBudget { .. }), _) | (_, Err(e @ Error::TermBudget { .. })) => {
            let mut vars = f.variables();
            vars.extend(g.variables());
            sort_names(&mut vars);
            if vars.len() > cfg.table_vars {
                return Err(e);
            }
            truth_table::tables_equal(f, g)
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

/// SOP computed from the truth table (minimal true points).
pub fn sop_by_truth_table(f: &Formula, exec: Exec) -> Result<SopForm> {
    let t = TruthTable::new(f)?;
    Ok(SopForm::from_name_lists(t.minterms(exec)))
}

/// Co-occurrence graph: variables of `s`, joined when they share a term.
pub fn graph_of_function(s: &SopForm) -> Graph {
    let mut edges = Vec::new();
    for t in &s.terms {
        for (i, u) in t.0.iter().enumerate() {
            for v in &t.0[i + 1..] {
                edges.push((u.clone(), v.clone()));
            }
        }
    }
    Graph::new(s.variables(), edges).expect("term variables are valid vertices")
}

/// The form whose terms are the maximal cliques of `g`.
pub fn phi_of_graph(g: &Graph) -> SopForm {
    SopForm::from_terms(
        g.maximal_cliques()
            .into_iter()
            .map(|c| Term(c.into_iter().map(|i| g.name(i).to_string()).collect())),
    )
}

/// True iff `s` equals the clique form of its own co-occurrence graph.
pub fn is_normal(s: &SopForm) -> bool {
    phi_of_graph(&graph_of_function(s)) == *s
}

/// The function has a read-1 formula iff it is normal and its co-occurrence
/// graph has no induced `P4`.
pub fn read1_check(s: &SopForm) -> bool {
    is_normal(s) && graph_of_function(s).is_cograph()
}

/// Why a formula fails to extend `G(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionViolation {
    /// A chain edge `xi*yj` absent from the SOP.
    MissingEdge(Term),
    /// A SOP term that is neither a chain edge nor a pure product of two or
    /// more `x` (or `y`) variables.
    ForeignTerm(Term),
}

impl ExtensionViolation {
    pub fn term(&self) -> &Term {
        match self {
            ExtensionViolation::MissingEdge(t) | ExtensionViolation::ForeignTerm(t) => t,
        }
    }
}

impl fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionViolation::MissingEdge(t) => write!(f, "missing edge {t}"),
            ExtensionViolation::ForeignTerm(t) => write!(f, "contains the term {t}"),
        }
    }
}

/// Side (`'x'` or `'y'`) and index of a chain vertex name such as `x3`.
pub fn chain_index(name: &str) -> Option<(char, usize)> {
    let side = name.chars().next()?;
    if side != 'x' && side != 'y' {
        return None;
    }
    let digits = &name[1..];
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((side, digits.parse().ok()?))
}

/// Classifies a SOP against the extension definition for `G(n)`.
pub fn extension_violation(s: &SopForm, n: usize) -> Result<Option<ExtensionViolation>> {
    for v in s.variables() {
        match chain_index(&v) {
            Some((_, i)) if (1..=n).contains(&i) => {}
            _ => return Err(Error::Precondition(format!("`{v}` is not a vertex of G({n})"))),
        }
    }
    for t in &s.terms {
        let idx: Vec<(char, usize)> = t.0.iter().map(|v| chain_index(v).unwrap()).collect();
        let xs = idx.iter().filter(|(c, _)| *c == 'x').count();
        let ys = idx.len() - xs;
        let ok = match (xs, ys) {
            (1, 1) => {
                let i = idx.iter().find(|(c, _)| *c == 'x').unwrap().1;
                let j = idx.iter().find(|(c, _)| *c == 'y').unwrap().1;
                i <= j
            }
            (a, 0) | (0, a) => a >= 2,
            _ => false,
        };
        if !ok {
            return Ok(Some(ExtensionViolation::ForeignTerm(t.clone())));
        }
    }
    for i in 1..=n {
        for j in i..=n {
            let e = Term(vec![format!("x{i}"), format!("y{j}")]);
            if !s.contains(&e) {
                return Ok(Some(ExtensionViolation::MissingEdge(e)));
            }
        }
    }
    Ok(None)
}

pub fn is_extension_of_chain(f: &Formula, n: usize) -> Result<bool> {
    Ok(extension_violation(&sop(f)?, n)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::graph::{chain_graph, complete_bipartite};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn texts(terms: &[Term]) -> Vec<String> {
        terms.iter().map(Term::to_string).collect()
    }

    #[test]
    fn csop_keeps_absorbable_terms() {
        assert_eq!(texts(&csop(&p("a1*(a1+a2)")).unwrap()), vec!["a1", "a1*a2"]);
        assert_eq!(texts(&csop(&p("a1+a2")).unwrap()), vec!["a1", "a2"]);
        assert_eq!(
            texts(&csop(&p("(a1+a2)*(a3+a4)")).unwrap()),
            vec!["a1*a3", "a1*a4", "a2*a3", "a2*a4"]
        );
    }

    #[test]
    fn sop_absorbs() {
        assert_eq!(sop(&p("a1*(a1+a2)")).unwrap().to_string(), "a1");
        assert_eq!(sop(&p("a1*a2*a3")).unwrap().to_string(), "a1*a2*a3");
        let ext = p("x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x1*x2*x3+y1*y3");
        assert_eq!(
            sop(&ext).unwrap().to_string(),
            "x1*x2*x3 + x1*y1 + x1*y2 + x1*y3 + x2*y2 + x2*y3 + x3*y3 + y1*y3"
        );
    }

    #[test]
    fn term_budget_is_explicit() {
        let f = p("(a+b)*(c+d)*(e+g)");
        let cfg = SopConfig { term_budget: 4, ..SopConfig::default() };
        assert_eq!(csop_with(&f, &cfg), Err(Error::TermBudget { budget: 4 }));
        // falls back to truth tables
        assert!(equivalent_with(&f, &f.clone(), &cfg).unwrap());
    }

    #[test]
    fn equivalence() {
        assert!(equivalent(&p("(a1+a2)*(a1+a3)"), &p("a1+a2*a3")).unwrap());
        assert!(!equivalent(&p("a1"), &p("a2")).unwrap());
        assert!(equivalent(&p("(a1+a2)*(b1+b2)"), &p("a1*b1+a1*b2+a2*b1+a2*b2")).unwrap());
    }

    #[test]
    fn graph_correspondence() {
        let f1 = SopForm::parse("a1*a2*a3").unwrap();
        let f2 = SopForm::parse("a1*a2+a2*a3+a3*a1").unwrap();
        let g = graph_of_function(&f1);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(graph_of_function(&f2), g);
        assert_eq!(phi_of_graph(&g), f1);
        let single = graph_of_function(&SopForm::parse("a1").unwrap());
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        assert_eq!(phi_of_graph(&single).to_string(), "a1");
        assert_eq!(phi_of_graph(&chain_graph(2).unwrap()).to_string(), "x1*y1 + x1*y2 + x2*y2");
    }

    #[test]
    fn normality() {
        assert!(is_normal(&SopForm::parse("a1*a2*a3").unwrap()));
        assert!(!is_normal(&SopForm::parse("a1*a2+a2*a3+a3*a1").unwrap()));
        assert!(is_normal(&phi_of_graph(&complete_bipartite(3, 2).unwrap())));
    }

    #[test]
    fn chain_extensions() {
        let ext = p("x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x1*x2*x3+y1*y3");
        assert!(is_extension_of_chain(&ext, 3).unwrap());
        let psi = p("x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x2*y1*(x2+y3)");
        let v = extension_violation(&sop(&psi).unwrap(), 3).unwrap().unwrap();
        assert_eq!(v, ExtensionViolation::ForeignTerm(Term::new(["x2", "y1"])));
        assert!(is_extension_of_chain(&p("x1*y1"), 1).unwrap());
        assert_eq!(
            extension_violation(&SopForm::parse("x1*y1").unwrap(), 2).unwrap(),
            Some(ExtensionViolation::MissingEdge(Term::new(["x1", "y2"])))
        );
        assert!(is_extension_of_chain(&p("x1*y1+z"), 1).is_err());
        assert!(!is_extension_of_chain(&p("x1*y1+x1"), 1).unwrap());
    }

    #[test]
    fn json_form() {
        let s = SopForm::parse("b*a + c").unwrap();
        assert_eq!(s.to_json_string(), r#"[["a","b"],["c"]]"#);
        let back: SopForm = serde_json::from_str(r#"[["c"],["b","a"],["a","b","c"]]"#).unwrap();
        assert_eq!(back, s);
    }
}
