//! Rewrites on normalized formulas: the non-redundancy rewrite and
//! substitutions of fresh variables and constants.

use std::collections::HashMap;
use std::fmt;

use super::{Formula, Handle};
use crate::error::{Error, Result};
use crate::names::{is_valid_name, natural_cmp};

/// Result of a substitution that may collapse to a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Simplified {
    True,
    False,
    Formula(Formula),
}

impl Simplified {
    pub fn into_formula(self) -> Option<Formula> {
        match self {
            Simplified::Formula(f) => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for Simplified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simplified::True => f.write_str("TRUE"),
            Simplified::False => f.write_str("FALSE"),
            Simplified::Formula(g) => write!(f, "{g}"),
        }
    }
}

/// A subformula of the shape `(a + φ1) * (a + φ2)`: two factors of one `*`
/// node that both isolate `var`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redundancy {
    pub handle: Handle,
    pub var: String,
}

/// Scans `*` nodes for a pair of factors isolating the same variable.
pub fn find_redundancy(f: &Formula) -> Option<Redundancy> {
    let mut found = None;
    f.walk(&mut Vec::new(), &mut |path, node| {
        if found.is_none() {
            if let Some((i, j, var)) = redundant_pair(node) {
                found = Some(Redundancy {
                    handle: Handle::selection(path.to_vec(), vec![i, j]),
                    var: var.to_string(),
                });
            }
        }
    });
    found
}

/// Same question as [`find_redundancy`], answered by materializing every
/// subformula (all nodes and all child selections, of `+` and `*` nodes).
pub fn find_redundancy_by_subformulas(f: &Formula) -> Option<Redundancy> {
    f.subformula_handles().into_iter().find_map(|h| {
        let sub = f.subformula(&h)?;
        let (l, r) = match &sub {
            Formula::Prod(c) if c.len() == 2 => (&c[0], &c[1]),
            _ => return None,
        };
        let var = l.isolating_vars().into_iter().find(|v| r.isolates(v))?.to_string();
        let handle = match h.children {
            Some(_) => h,
            None => Handle::selection(h.path, vec![0, 1]),
        };
        Some(Redundancy { handle, var })
    })
}

fn redundant_pair(node: &Formula) -> Option<(usize, usize, &str)> {
    let Formula::Prod(c) = node else { return None };
    let iso: Vec<Vec<&str>> = c.iter().map(Formula::isolating_vars).collect();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let mut shared: Vec<&str> =
                iso[i].iter().copied().filter(|v| iso[j].contains(v)).collect();
            shared.sort_by(|a, b| natural_cmp(a, b));
            if let Some(v) = shared.first() {
                return Some((i, j, v));
            }
        }
    }
    None
}

/// Rewrites `(a+φ1)*(a+φ2)` to `a + φ1*φ2` (and `a*(a+φ)` to `a`),
/// innermost first, until no such subformula remains.
///
/// The output is logically equivalent and no variable occurs more often
/// than in the input.
pub fn make_nonredundant(f: &Formula) -> Formula {
    let mut cur = f.clone().normalize();
    let budget = cur.size() * cur.size() + 1;
    for _ in 0..budget {
        match rewrite_innermost(&cur) {
            Some(next) => cur = next.normalize(),
            None => return cur,
        }
    }
    // every step removes at least one leaf
    unreachable!("non-redundancy rewrite exceeded its step budget")
}

fn rewrite_innermost(node: &Formula) -> Option<Formula> {
    let children = node.children();
    for (idx, ch) in children.iter().enumerate() {
        if let Some(new_child) = rewrite_innermost(ch) {
            let mut kids = children.to_vec();
            kids[idx] = new_child;
            return Some(rebuild(node, kids));
        }
    }
    let (i, j, var) = redundant_pair(node)?;
    let var = var.to_string();
    let c = node.children();
    let merged = match (remainder(&c[i], &var), remainder(&c[j], &var)) {
        (Some(r1), Some(r2)) => {
            Formula::Sum(vec![Formula::Var(var), Formula::Prod(vec![r1, r2])])
        }
        _ => Formula::Var(var),
    };
    let mut kids: Vec<Formula> = c
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, ch)| ch.clone())
        .collect();
    kids.push(merged);
    Some(Formula::Prod(kids))
}

/// `φ` for a factor `a + φ`; `None` when the factor is the bare leaf `a`.
fn remainder(factor: &Formula, var: &str) -> Option<Formula> {
    match factor {
        Formula::Var(_) => None,
        Formula::Sum(c) => {
            let pos = c.iter().position(|ch| matches!(ch, Formula::Var(v) if v == var))?;
            let mut rest = c.clone();
            rest.remove(pos);
            Some(if rest.len() == 1 { rest.pop().unwrap() } else { Formula::Sum(rest) })
        }
        Formula::Prod(_) => unreachable!("products never isolate a variable"),
    }
}

fn rebuild(node: &Formula, kids: Vec<Formula>) -> Formula {
    match node {
        Formula::Sum(_) => Formula::Sum(kids),
        Formula::Prod(_) => Formula::Prod(kids),
        Formula::Var(_) => unreachable!(),
    }
}

/// Replaces the subformula at `h` by the fresh leaf `z`.
pub fn substitute_subformula(f: &Formula, h: &Handle, z: &str) -> Result<Formula> {
    if !is_valid_name(z) {
        return Err(Error::InvalidName(z.to_string()));
    }
    if f.contains_var(z) {
        return Err(Error::NameClash(z.to_string()));
    }
    if f.subformula(h).is_none() {
        return Err(Error::StaleHandle(h.to_string()));
    }
    Ok(replace_at(f, &h.path, &h.children, Formula::Var(z.to_string())).normalize())
}

fn replace_at(node: &Formula, path: &[usize], sel: &Option<Vec<usize>>, with: Formula) -> Formula {
    match path.split_first() {
        Some((&i, rest)) => {
            let mut kids = node.children().to_vec();
            kids[i] = replace_at(&kids[i], rest, sel, with);
            rebuild(node, kids)
        }
        None => match sel {
            None => with,
            Some(sel) => {
                let mut kids: Vec<Formula> = node
                    .children()
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !sel.contains(k))
                    .map(|(_, ch)| ch.clone())
                    .collect();
                kids.push(with);
                rebuild(node, kids)
            }
        },
    }
}

/// Replaces the subformula at `h` by the constant TRUE and simplifies.
pub fn substitute_true(f: &Formula, h: &Handle) -> Result<Simplified> {
    let z = fresh_name(f, "z");
    let g = substitute_subformula(f, h, &z)?;
    Ok(substitute_const(&g, &z, true))
}

/// A name of the form `{stem}`, `{stem}_1`, ... not occurring in `f`.
pub fn fresh_name(f: &Formula, stem: &str) -> String {
    std::iter::once(stem.to_string())
        .chain((1..).map(|i| format!("{stem}_{i}")))
        .find(|n| !f.contains_var(n))
        .unwrap()
}

/// Sets every leaf `var` to `value` and simplifies with `x+1=1`, `x*1=x`,
/// `x+0=x`, `x*0=0`.
pub fn substitute_const(f: &Formula, var: &str, value: bool) -> Simplified {
    let mut map = HashMap::new();
    map.insert(var.to_string(), value);
    substitute_many(f, &map)
}

pub fn substitute_many(f: &Formula, values: &HashMap<String, bool>) -> Simplified {
    match simplify(f, values) {
        Simplified::Formula(g) => Simplified::Formula(g.normalize()),
        c => c,
    }
}

fn simplify(f: &Formula, values: &HashMap<String, bool>) -> Simplified {
    match f {
        Formula::Var(v) => match values.get(v) {
            Some(true) => Simplified::True,
            Some(false) => Simplified::False,
            None => Simplified::Formula(f.clone()),
        },
        Formula::Sum(c) | Formula::Prod(c) => {
            let is_sum = matches!(f, Formula::Sum(_));
            let (absorbing, neutral) = if is_sum {
                (Simplified::True, Simplified::False)
            } else {
                (Simplified::False, Simplified::True)
            };
            let mut kept = Vec::with_capacity(c.len());
            for ch in c {
                match simplify(ch, values) {
                    Simplified::Formula(g) => kept.push(g),
                    s if s == absorbing => return absorbing,
                    _ => {}
                }
            }
            match kept.len() {
                0 => neutral,
                1 => Simplified::Formula(kept.pop().unwrap()),
                _ => Simplified::Formula(if is_sum { Formula::Sum(kept) } else { Formula::Prod(kept) }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn nonredundant_examples() {
        assert_eq!(make_nonredundant(&p("(a1+a2)*(a1+a3)")), p("a1+a2*a3"));
        assert_eq!(make_nonredundant(&p("a1*a2")), p("a1*a2"));
        assert_eq!(make_nonredundant(&p("(a1+a2)*(a1+a3)*(a1+a4)")), p("a1+a2*a3*a4"));
        assert_eq!(make_nonredundant(&p("a1*(a1+a2)")), p("a1"));
        assert_eq!(make_nonredundant(&p("a*a")), p("a"));
    }

    #[test]
    fn redundancy_scans_agree() {
        for s in ["(a+b)*(a+c)", "x*(a+b)*(c+a)", "a1*(a2+a3*a4)*(a2+a5)", "a+b", "(a+b)*(c+d)"] {
            let f = p(s);
            assert_eq!(
                find_redundancy(&f).is_some(),
                find_redundancy_by_subformulas(&f).is_some(),
                "{s}"
            );
        }
        assert!(find_redundancy(&p("a1*(a2+a3*a4)*(a2+a5)")).is_some());
        assert!(find_redundancy(&p("(a+b)*(c+d)")).is_none());
    }

    #[test]
    fn subformula_substitution() {
        let f = p("(x1+x2)*(y1+y2)+x1*x2");
        let h = f
            .two_mult_handles()
            .into_iter()
            .find(|h| f.subformula(h).unwrap() == p("(x1+x2)*(y1+y2)"))
            .unwrap();
        assert_eq!(substitute_subformula(&f, &h, "z").unwrap(), p("z+x1*x2"));
        assert_eq!(substitute_subformula(&f, &Handle::root(), "z").unwrap(), p("z"));

        let fig = p("a1*(a2+a3*a4)*(a2+a5)");
        let h = fig.two_mult_handles().pop().unwrap();
        let out = substitute_subformula(&fig, &h, "z").unwrap();
        assert_eq!(out.to_string(), "a1*(a2+a5)*(a2+z)");

        assert_eq!(substitute_subformula(&fig, &h, "a1"), Err(Error::NameClash("a1".into())));
        let stale = Handle::node(vec![7]);
        assert!(matches!(substitute_subformula(&fig, &stale, "z"), Err(Error::StaleHandle(_))));
    }

    #[test]
    fn selection_substitution() {
        let f = p("x1*x2*(x1+x2)*(y1+y2)+x1*y1");
        let k = f.children().iter().position(|c| c.children().len() == 4).unwrap();
        let prod_path = vec![k];
        let node = f.at(&prod_path).unwrap();
        let i = node.children().iter().position(|c| *c == p("x1+x2")).unwrap();
        let j = node.children().iter().position(|c| *c == p("y1+y2")).unwrap();
        let (i, j) = (i.min(j), i.max(j));
        let h = Handle::selection(prod_path, vec![i, j]);
        let g = substitute_subformula(&f, &h, "z").unwrap();
        assert_eq!(g, p("x1*y1+x1*x2*z"));
    }

    #[test]
    fn constants() {
        assert_eq!(substitute_const(&p("(x1+x2)*y1"), "x2", false), Simplified::Formula(p("x1*y1")));
        assert_eq!(substitute_const(&p("x1*(y1+y2)"), "x1", true), Simplified::Formula(p("y1+y2")));
        assert_eq!(substitute_const(&p("x1*y1"), "y1", false), Simplified::False);
        assert_eq!(substitute_const(&p("x1+y1"), "y1", true), Simplified::True);
        assert_eq!(substitute_const(&p("x1"), "y1", true), Simplified::Formula(p("x1")));
    }
}
