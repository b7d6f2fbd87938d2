//! Operations on extensions of chain graphs: locating the product node
//! that joins a given edge, and peeling a `(Σx + φ1) * (Σy + φ2)` factor.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::formula::{find_redundancy, fresh_name, substitute_subformula, substitute_true, Formula, Handle, Simplified};
use crate::sop::{self, chain_index, extension_violation};

/// A two-factor product node whose factors isolate `x_i` and `y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMult {
    pub handle: Handle,
    /// Index of the factor isolating `x_i`.
    pub x_factor: usize,
    pub y_factor: usize,
}

/// Largest index `n` among the `x`/`y` variables of `f`; other names are
/// rejected.
fn chain_order(f: &Formula) -> Result<usize> {
    let mut n = 0;
    for v in f.variables() {
        match chain_index(&v) {
            Some((_, i)) => n = n.max(i),
            None => return Err(Error::Precondition(format!("`{v}` is not a chain variable"))),
        }
    }
    Ok(n)
}

/// Finds the 2-mult subformula `(x_i + φ1) * (y_j + φ2)` that a
/// non-redundant extension of `G(n)` must contain for the edge `x_i y_j`.
///
/// Starting at the root, which is true on `{x_i, y_j}` and false on each
/// of the two singletons, the descent keeps that invariant: at a sum it
/// moves to a true child, at a product to the one factor (if any) that is
/// false on both singletons. A product where no such factor exists has
/// exactly two factors, one true on `{x_i}` and one on `{y_j}`.
pub fn find_2mult_for_edge(f: &Formula, i: usize, j: usize) -> Result<TwoMult> {
    let n = chain_order(f)?;
    if i < 1 || i > j || j > n {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= j <= {n}, got ({i}, {j})")));
    }
    if let Some(r) = find_redundancy(f) {
        return Err(Error::Precondition(format!("formula is redundant at {} on `{}`", r.handle, r.var)));
    }
    if let Some(v) = extension_violation(&sop::sop(f)?, n)? {
        return Err(Error::Precondition(format!("not an extension of G({n}): {v}")));
    }
    let (x, y) = (format!("x{i}"), format!("y{j}"));
    let on_pair = |v: &str| v == x || v == y;
    let on_x = |v: &str| v == x;
    let on_y = |v: &str| v == y;

    let mut node = f;
    let mut path = Vec::new();
    loop {
        match node {
            Formula::Var(_) => return Err(Error::Internal("descent reached a leaf".into())),
            Formula::Sum(c) => {
                let (k, next) = c
                    .iter()
                    .enumerate()
                    .find(|(_, ch)| ch.eval(&on_pair))
                    .ok_or_else(|| Error::Internal("no true summand".into()))?;
                path.push(k);
                node = next;
            }
            Formula::Prod(c) => {
                if let Some(k) = c.iter().position(|ch| !ch.eval(&on_x) && !ch.eval(&on_y)) {
                    path.push(k);
                    node = &c[k];
                    continue;
                }
                let xf = c.iter().position(|ch| ch.eval(&on_x));
                let yf = c.iter().position(|ch| ch.eval(&on_y));
                return match (c.len(), xf, yf) {
                    (2, Some(a), Some(b)) if a != b && c[a].isolates(&x) && c[b].isolates(&y) => {
                        Ok(TwoMult { handle: Handle::node(path), x_factor: a, y_factor: b })
                    }
                    _ => Err(Error::Internal(format!("descent stopped at `{node}` without a 2-mult"))),
                };
            }
        }
    }
}

/// All 2-mult subformulas whose factors isolate `x_i` and `y_j`, by
/// scanning every product node. No preconditions.
pub fn find_2mult_by_scan(f: &Formula, i: usize, j: usize) -> Vec<TwoMult> {
    let (x, y) = (format!("x{i}"), format!("y{j}"));
    f.two_mult_handles()
        .into_iter()
        .filter_map(|h| {
            let c = f.at(&h.path)?.children();
            if c[0].isolates(&x) && c[1].isolates(&y) {
                Some(TwoMult { handle: h, x_factor: 0, y_factor: 1 })
            } else if c[1].isolates(&x) && c[0].isolates(&y) {
                Some(TwoMult { handle: h, x_factor: 1, y_factor: 0 })
            } else {
                None
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelOutcome {
    /// `psi` extends `G(n)` and every variable occurs in it less often.
    Peeled { psi: Formula, read_before: usize, read_after: usize },
    /// The handle covered the whole formula, so the substitution left the
    /// constant TRUE and no formula remains.
    Degenerate,
}

/// Replaces the subformula `(x1+...+xn+φ1) * (y1+...+yn+φ2)` at `h` by
/// TRUE, after checking that putting a fresh `z` there leaves no SOP term
/// `z*x_i` or `z*y_j`.
pub fn peel_step(f: &Formula, h: &Handle, n: usize) -> Result<PeelOutcome> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if let Some(v) = extension_violation(&sop::sop(f)?, n)? {
        return Err(Error::Precondition(format!("not an extension of G({n}): {v}")));
    }
    let sub = f.subformula(h).ok_or_else(|| Error::StaleHandle(h.to_string()))?;
    let factors = match &sub {
        Formula::Prod(c) if c.len() == 2 => c,
        _ => return Err(Error::Precondition(format!("subformula `{sub}` is not a product of two factors"))),
    };
    let all = |ch: &Formula, side: char| (1..=n).all(|i| ch.isolates(&format!("{side}{i}")));
    let shaped = (all(&factors[0], 'x') && all(&factors[1], 'y')) || (all(&factors[1], 'x') && all(&factors[0], 'y'));
    if !shaped {
        return Err(Error::Precondition(format!(
            "subformula `{sub}` does not have the form (x1+..+x{n}+φ1)*(y1+..+y{n}+φ2)"
        )));
    }
    let z = fresh_name(f, "z");
    let with_z = substitute_subformula(f, h, &z)?;
    let bad = sop::sop(&with_z)?.terms().iter().find(|t| t.len() == 2 && t.contains(&z)).cloned();
    if let Some(t) = bad {
        return Err(Error::Precondition(format!("substituting `{z}` leaves the SOP term {t}")));
    }
    let psi = match substitute_true(f, h)? {
        Simplified::True => return Ok(PeelOutcome::Degenerate),
        Simplified::False => return Err(Error::Internal("monotone substitution of TRUE gave FALSE".into())),
        Simplified::Formula(p) => p,
    };
    let before = f.occurrences();
    let after = psi.occurrences();
    let vars: HashSet<String> = f.variables().into_iter().collect();
    if vars.iter().any(|v| after.get(v) >= before.get(v)) {
        return Err(Error::Internal("peeling did not lower every occurrence count".into()));
    }
    if let Some(v) = extension_violation(&sop::sop(&psi)?, n)? {
        return Err(Error::Internal(format!("peeled formula is not an extension: {v}")));
    }
    Ok(PeelOutcome::Peeled { psi, read_before: before.read_index, read_after: after.read_index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn sub_at(f: &Formula, t: &TwoMult) -> String {
        f.subformula(&t.handle).unwrap().to_string()
    }

    #[test]
    fn edge_is_its_own_product() {
        let f = p("x1*(y1+y2)+x2*y2");
        let t = find_2mult_for_edge(&f, 2, 2).unwrap();
        assert_eq!(sub_at(&f, &t), "x2*y2");
        let t = find_2mult_for_edge(&f, 1, 2).unwrap();
        assert_eq!(sub_at(&f, &t), "x1*(y1+y2)");
    }

    #[test]
    fn shared_biclique() {
        let f = p("(x1+x2)*(y2+y3)+x1*y1+x3*y3");
        let t = find_2mult_for_edge(&f, 1, 2).unwrap();
        assert_eq!(sub_at(&f, &t), "(x1+x2)*(y2+y3)");
        assert_eq!(find_2mult_by_scan(&f, 1, 2), vec![t]);
    }

    #[test]
    fn extension_example() {
        let f = p("x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x1*x2*x3+y1*y3");
        let t = find_2mult_for_edge(&f, 1, 1).unwrap();
        assert_eq!(sub_at(&f, &t), "x1*(y1+y2+y3)");
        let t = find_2mult_for_edge(&f, 3, 3).unwrap();
        assert_eq!(sub_at(&f, &t), "y3*(x2+x3)");
        assert_eq!(t.x_factor, 1);
    }

    #[test]
    fn nested_descent() {
        let f = p("(x1+x2)*(y2+x1*y1)");
        let t = find_2mult_for_edge(&f, 1, 1).unwrap();
        assert_eq!(sub_at(&f, &t), "x1*y1");
        assert_eq!(t.handle.to_string(), "1.1");
        assert_eq!(find_2mult_by_scan(&f, 1, 1), vec![t]);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(find_2mult_for_edge(&p("x1*y1 + x2*y1"), 1, 1), Err(Error::Precondition(_))));
        assert!(matches!(find_2mult_for_edge(&p("(x1+y1)*(x1+y2)"), 1, 1), Err(Error::Precondition(_))));
        assert!(find_2mult_for_edge(&p("x1*(y1+y2)+x2*y2"), 2, 1).is_err());
        assert!(find_2mult_for_edge(&p("a*b"), 1, 1).is_err());
    }

    #[test]
    fn valid_peel() {
        let f = p("(x1+x2)*(y1+y2)*(x1*x2) + x1*(y1+y2) + x2*y2");
        let node = f.children().iter().position(|c| c.children().len() == 4).unwrap();
        let prod = &f.children()[node];
        let sel: Vec<usize> = (0..4).filter(|&k| matches!(prod.children()[k], Formula::Sum(_))).collect();
        let h = Handle::selection(vec![node], sel);
        match peel_step(&f, &h, 2).unwrap() {
            PeelOutcome::Peeled { psi, read_before, read_after } => {
                assert_eq!(psi, p("x1*x2 + x1*(y1+y2) + x2*y2"));
                assert_eq!((read_before, read_after), (3, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejected_peels() {
        let f = p("(x1+x2+y1)*(y1+y2+x2) + x1*(y1+y2) + x2*y2");
        let err = peel_step(&f, &Handle::node(vec![0]), 2).unwrap_err().to_string();
        assert!(err.contains("x2"), "{err}");

        let f = p("(x1+x2)*(y1+y2) + x1*(y1+y2) + x2*y2");
        let err = peel_step(&f, &Handle::node(vec![0]), 2).unwrap_err().to_string();
        assert!(err.contains("x2*y1"), "{err}");

        assert!(peel_step(&f, &Handle::root(), 2).is_err());
    }

    #[test]
    fn degenerate_peel() {
        assert_eq!(peel_step(&p("x1*y1"), &Handle::root(), 1).unwrap(), PeelOutcome::Degenerate);
    }

    #[test]
    fn hypothesis_failure_names_term() {
        let f = p("x1*(y1+x1*y1)");
        let err = peel_step(&f, &"1.1".parse().unwrap(), 1).unwrap_err().to_string();
        assert!(err.contains("x1*z"), "{err}");
    }
}
