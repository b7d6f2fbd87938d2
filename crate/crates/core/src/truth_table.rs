//! Dense truth tables for formulas over at most [`MAX_VARS`] variables.
//!
//! This is an evaluation route fully independent of term expansion: it is
//! used as the cross-check for SOP computation and as the fallback for
//! equivalence when expansion blows past its term budget.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formula::Formula;
use crate::names::sort_names;

pub const MAX_VARS: usize = 24;

/// Bit `a` of the table is the value at the assignment whose bit `i` is the
/// value of `vars[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    vars: Vec<String>,
    bits: Vec<u64>,
}

impl TruthTable {
    pub fn new(f: &Formula) -> Result<Self> {
        Self::over(f, &f.variables())
    }

    /// Table of `f` over an explicit variable order (a superset of its
    /// variables).
    pub fn over(f: &Formula, vars: &[String]) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::VariableBudget { vars: vars.len(), budget: MAX_VARS });
        }
        if let Some(v) = f.variables().into_iter().find(|v| !vars.contains(v)) {
            return Err(Error::InvalidArgument(format!("variable `{v}` missing from table order")));
        }
        let words = (1usize << vars.len()).div_ceil(64);
        let bits = eval(f, vars, words);
        Ok(TruthTable { vars: vars.to_vec(), bits })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn get(&self, assignment: usize) -> bool {
        self.bits[assignment / 64] >> (assignment % 64) & 1 == 1
    }

    /// Minimal true points as bit masks over [`TruthTable::vars`], ascending.
    pub fn minimal_true_points(&self, exec: Exec) -> Vec<u64> {
        let n = self.vars.len();
        let points = 1usize << n;
        let chunk = 1usize << n.saturating_sub(6).min(12);
        let chunks = points.div_ceil(chunk);
        exec.map_range(chunks, |c| {
            (c * chunk..((c + 1) * chunk).min(points))
                .filter(|&a| self.get(a) && (0..n).all(|i| a >> i & 1 == 0 || !self.get(a ^ (1 << i))))
                .map(|a| a as u64)
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Minimal true points as sorted name lists.
    pub fn minterms(&self, exec: Exec) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .minimal_true_points(exec)
            .into_iter()
            .map(|m| {
                (0..self.vars.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| self.vars[i].clone())
                    .collect()
            })
            .collect();
        out.sort();
        out
    }
}

/// Truth-table equality of two formulas over the union of their variables.
pub fn tables_equal(f: &Formula, g: &Formula) -> Result<bool> {
    let mut vars = f.variables();
    vars.extend(g.variables());
    sort_names(&mut vars);
    Ok(TruthTable::over(f, &vars)? == TruthTable::over(g, &vars)?)
}

fn eval(f: &Formula, vars: &[String], words: usize) -> Vec<u64> {
    match f {
        Formula::Var(v) => {
            let i = vars.iter().position(|x| x == v).expect("checked by caller");
            var_pattern(i, vars.len(), words)
        }
        Formula::Sum(c) | Formula::Prod(c) => {
            let is_sum = matches!(f, Formula::Sum(_));
            let mut acc = eval(&c[0], vars, words);
            for ch in &c[1..] {
                let t = eval(ch, vars, words);
                for (a, b) in acc.iter_mut().zip(t) {
                    if is_sum {
                        *a |= b
                    } else {
                        *a &= b
                    }
                }
            }
            acc
        }
    }
}

fn var_pattern(i: usize, n: usize, words: usize) -> Vec<u64> {
    const LOW: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let valid = if n >= 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    (0..words)
        .map(|w| {
            let word = if i < 6 {
                LOW[i]
            } else if (w >> (i - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
            word & valid
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    #[test]
    fn minimal_points() {
        let f = parse_formula("a1*(a1+a2)").unwrap();
        let t = TruthTable::new(&f).unwrap();
        assert_eq!(t.minterms(Exec::Sequential), vec![vec!["a1".to_string()]]);
        let f = parse_formula("(a+b)*(c+d)").unwrap();
        assert_eq!(TruthTable::new(&f).unwrap().minterms(Exec::Parallel).len(), 4);
    }

    #[test]
    fn wide_tables_use_high_variables() {
        let names: Vec<String> = (0..9).map(|i| format!("v{i}")).collect();
        let f = parse_formula("v8*v0+v7").unwrap();
        let t = TruthTable::over(&f, &names).unwrap();
        assert!(t.get((1 << 8) | 1));
        assert!(!t.get(1 << 8));
        assert!(t.get(1 << 7));
        assert_eq!(
            t.minterms(Exec::Sequential),
            vec![vec!["v0".to_string(), "v8".to_string()], vec!["v7".to_string()]]
        );
    }

    #[test]
    fn equality() {
        let f = parse_formula("(a1+a2)*(a1+a3)").unwrap();
        let g = parse_formula("a1+a2*a3").unwrap();
        assert!(tables_equal(&f, &g).unwrap());
        assert!(!tables_equal(&parse_formula("a1").unwrap(), &parse_formula("a2").unwrap()).unwrap());
    }
}
