//! Function-level readability oracle.
//!
//! Works with functions rather than formulas: for every monotone function
//! on `nvars` variables it records the minimal occurrence vectors of the
//! binary formulas computing it, grown by joining two smaller entries with
//! `+` or `*`. An entry is dropped when another formula for the same
//! function uses each variable at most as often. Built once per `(nvars, k)`
//! and queried for any number of graphs on that many vertices.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::sop::phi_of_graph;

use super::{Decision, Meter, SearchBudget};

pub const MAX_ORACLE_VARS: usize = 6;

const HIGH: u64 = 0x8080_8080_8080_8080;

pub struct FunctionOracle {
    nvars: usize,
    k: usize,
    best: HashMap<u64, Vec<u64>>,
}

/// `a <= b` in every byte. Bytes stay below 128.
fn dominated_by(b: u64, a: u64) -> bool {
    (b | HIGH).wrapping_sub(a) & HIGH == HIGH
}

fn fits(u: u64, k: usize, nvars: usize) -> bool {
    (0..nvars).all(|i| (u >> (8 * i) & 0xff) as usize <= k)
}

impl FunctionOracle {
    pub fn build(nvars: usize, k: usize, budget: &SearchBudget, exec: Exec) -> Result<Decision<FunctionOracle>> {
        if nvars == 0 || nvars > MAX_ORACLE_VARS {
            return Err(Error::InvalidArgument(format!("oracle supports 1..={MAX_ORACLE_VARS} variables")));
        }
        if k == 0 || k > 15 {
            return Err(Error::InvalidArgument("k must be in 1..=15".into()));
        }
        let meter = Meter::new(budget);
        let points = 1usize << nvars;
        let full = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
        let var = |i: usize| (0..points).filter(|m| m >> i & 1 == 1).fold(0u64, |t, m| t | 1 << m);

        let mut best: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut layers: Vec<Vec<(u64, u64)>> = vec![Vec::new(); k * nvars + 1];
        for i in 0..nvars {
            let e = (var(i) & full, 1u64 << (8 * i));
            best.entry(e.0).or_default().push(e.1);
            layers[1].push(e);
        }
        for total in 2..=k * nvars {
            for small in 1..=total / 2 {
                let big = total - small;
                let (a, b) = (&layers[small], &layers[big]);
                let found: Vec<Vec<(u64, u64)>> = exec.map_range(a.len(), |i| {
                    let (t1, u1) = a[i];
                    let start = if small == big { i + 1 } else { 0 };
                    let mut out = Vec::new();
                    for &(t2, u2) in &b[start..] {
                        let u = u1 + u2;
                        if !fits(u, k, nvars) {
                            continue;
                        }
                        for t in [t1 | t2, t1 & t2] {
                            if t != t1 && t != t2 {
                                out.push((t, u));
                            }
                        }
                    }
                    meter.tick(b.len() as u64);
                    out
                });
                if meter.tripped() {
                    return Ok(Decision::Unknown(meter.reason()));
                }
                for (t, u) in found.into_iter().flatten() {
                    let slot = best.entry(t).or_default();
                    if slot.iter().any(|&v| dominated_by(u, v)) {
                        continue;
                    }
                    slot.push(u);
                    layers[total].push((t, u));
                }
            }
        }
        Ok(Decision::Yes(FunctionOracle { nvars, k, best }))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of distinct functions reachable within the occurrence bound.
    pub fn function_count(&self) -> usize {
        self.best.len()
    }

    /// Whether the function with truth table `t` (bit `m` = value at the
    /// assignment whose true variables are the set bits of `m`) is read-`k`.
    pub fn is_read_k(&self, t: u64) -> bool {
        self.best.contains_key(&t)
    }

    /// Readability test for the maximal-clique function of `g`, whose
    /// vertices take the variable positions in their sorted order.
    pub fn graph_is_read_k(&self, g: &Graph) -> Result<bool> {
        if g.vertex_count() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "oracle built for {} variables, graph has {}",
                self.nvars,
                g.vertex_count()
            )));
        }
        let phi = phi_of_graph(g);
        let points = 1usize << self.nvars;
        let mut t = 0u64;
        for m in 0..points {
            let on = |v: &String| m >> g.index_of(v).expect("own vertex") & 1 == 1;
            if phi.terms().iter().any(|term| term.vars().iter().all(on)) {
                t |= 1 << m;
            }
        }
        Ok(self.is_read_k(t))
    }

    /// Whether some read-`k` function on `x1..xn, y1..yn` (positions
    /// `0..n` and `n..2n`) extends `G(n)`.
    pub fn has_chain_extension(&self, n: usize) -> bool {
        if 2 * n != self.nvars {
            return false;
        }
        self.best.keys().any(|&t| is_chain_extension(t, n))
    }
}

fn is_chain_extension(t: u64, n: usize) -> bool {
    let val = |m: usize| t >> m & 1 == 1;
    for m in 1..1usize << (2 * n) {
        let minimal = val(m) && (0..2 * n).all(|i| m >> i & 1 == 0 || !val(m & !(1 << i)));
        let x = m & ((1 << n) - 1);
        let y = m >> n;
        let is_edge = x.count_ones() == 1 && y.count_ones() == 1 && x.trailing_zeros() <= y.trailing_zeros();
        if is_edge != minimal && (is_edge || x != 0 && y != 0 || m.count_ones() < 2) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain_graph, complete_bipartite};

    fn oracle(n: usize, k: usize) -> FunctionOracle {
        match FunctionOracle::build(n, k, &SearchBudget::default(), Exec::default()).unwrap() {
            Decision::Yes(o) => o,
            d => panic!("oracle not built: {d}"),
        }
    }

    #[test]
    fn read_once_counts() {
        // read-once functions on exactly n variables: 1, 2, 8, 52
        let o = oracle(4, 1);
        let all = o.best.keys().filter(|&&t| {
            (0..4).all(|i| (0..16).any(|m: usize| m >> i & 1 == 0 && (t >> m & 1) != (t >> (m | 1 << i) & 1)))
        });
        assert_eq!(all.count(), 52);
        assert_eq!(oracle(3, 1).function_count(), 3 + 3 * 2 + 8);
    }

    #[test]
    fn small_graphs() {
        let o = oracle(4, 1);
        assert!(!o.graph_is_read_k(&chain_graph(2).unwrap()).unwrap());
        assert!(o.graph_is_read_k(&complete_bipartite(2, 2).unwrap()).unwrap());
        assert!(!o.has_chain_extension(2));
        let o = oracle(4, 2);
        assert!(o.graph_is_read_k(&chain_graph(2).unwrap()).unwrap());
        assert!(o.has_chain_extension(2));
        assert!(oracle(2, 1).has_chain_extension(1));
    }

    #[test]
    fn extension_predicate() {
        // over x1 x2 y1 y2 at bit positions 0..4
        let edges = [0b0101usize, 0b1001, 0b1010];
        let table = |terms: &[usize]| {
            (0..16usize).filter(|&m| terms.iter().any(|&t| t & !m == 0)).fold(0u64, |t, m| t | 1 << m)
        };
        assert!(is_chain_extension(table(&edges), 2));
        assert!(is_chain_extension(table(&[0b0101, 0b1001, 0b1010, 0b0011]), 2));
        assert!(!is_chain_extension(table(&[0b0101, 0b1001, 0b1010, 0b0110]), 2));
        assert!(!is_chain_extension(table(&[0b0101, 0b1001]), 2));
        assert!(!is_chain_extension(table(&[0b0001, 0b1010]), 2));
    }
}
