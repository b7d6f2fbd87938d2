//! Exhaustive search over canonical formulas, smallest first.
//!
//! Nodes are built layer by layer in leaf count. A node is kept only if it
//! is normalized (kinds alternate, at least two children), its children are
//! strictly increasing by id, its children are pairwise incomparable as
//! functions, and, for products, no two factors isolate the same variable.
//! Every read-`k` formula with the fewest leaves passes all of these tests,
//! because each violation can be rewritten away without adding an
//! occurrence. Nodes with the same kind, function and occurrence vector are
//! interchangeable, so only the first is kept.

use std::collections::HashMap;

use crate::cover::cover_to_formula;
use crate::cover_search::local_cover_any;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formula::Formula;
use crate::graph::{chain_graph, Graph};
use crate::sop::{self, phi_of_graph};

use super::{Decision, Meter, SearchBudget, SearchResult, SearchStats};

/// Variables the packed truth tables can hold.
pub const MAX_ENUM_VARS: usize = 8;

type Table = [u64; 4];

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Try a biclique cover of multiplicity `k` first; a hit is a witness.
    pub use_cover_witness: bool,
    pub exec: Exec,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { use_cover_witness: true, exec: Exec::default() }
    }
}

/// Decides whether the triangle-free graph `g` has a read-`k` formula,
/// i.e. one whose SOP is exactly the maximal cliques of `g`.
pub fn decide_readability(g: &Graph, k: usize, budget: &SearchBudget) -> Result<SearchResult<Formula>> {
    decide_readability_with(g, k, budget, &EnumerateOptions::default())
}

pub fn decide_readability_with(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
    opts: &EnumerateOptions,
) -> Result<SearchResult<Formula>> {
    if !g.is_triangle_free() {
        return Err(Error::NotTriangleFree);
    }
    check_args(g, k, budget)?;
    let target = phi_of_graph(g);
    let vars = g.vertices().to_vec();
    let mut prior = SearchStats::default();
    if opts.use_cover_witness {
        let res = local_cover_any(g, k, budget, opts.exec)?;
        prior = res.stats;
        if let Decision::Yes(c) = res.decision {
            let isolated: Vec<Formula> = (0..g.vertex_count())
                .filter(|&i| g.adjacency(i).is_empty())
                .map(|i| Formula::var(g.name(i)))
                .collect();
            let mut parts = isolated;
            if !c.bicliques.is_empty() {
                parts.push(cover_to_formula(&c)?);
            }
            let f = Formula::sum(parts).normalize();
            verify(sop::sop(&f)? == target && f.occurrences().read_index <= k, "cover witness")?;
            return Ok(SearchResult { decision: Decision::Yes(f), stats: prior });
        }
    }
    let tt = table_of_sop(&target, &vars);
    let mut res = run(&vars, k, budget, opts.exec, &|t: &Table| *t == tt)?;
    if let Decision::Yes(f) = &res.decision {
        verify(sop::sop(f)? == target && f.occurrences().read_index <= k, "enumeration witness")?;
    }
    res.stats.candidates += prior.candidates;
    res.stats.elapsed += prior.elapsed;
    Ok(res)
}

/// Decides whether `G(n)` has a read-`k` extension: a formula whose SOP is
/// the chain edges plus any pure-`x` or pure-`y` products of size two or
/// more.
pub fn has_read_k_extension(n: usize, k: usize, budget: &SearchBudget) -> Result<SearchResult<Formula>> {
    has_read_k_extension_with(n, k, budget, &EnumerateOptions::default())
}

pub fn has_read_k_extension_with(
    n: usize,
    k: usize,
    budget: &SearchBudget,
    opts: &EnumerateOptions,
) -> Result<SearchResult<Formula>> {
    let g = chain_graph(n)?;
    check_args(&g, k, budget)?;
    let vars = g.vertices().to_vec();
    let mut prior = SearchStats::default();
    if opts.use_cover_witness {
        let res = local_cover_any(&g, k, budget, opts.exec)?;
        prior = res.stats;
        if let Decision::Yes(c) = res.decision {
            let f = cover_to_formula(&c)?;
            verify(sop::is_extension_of_chain(&f, n)? && f.occurrences().read_index <= k, "cover witness")?;
            return Ok(SearchResult { decision: Decision::Yes(f), stats: prior });
        }
    }
    let accept = ExtensionShape::new(n);
    let mut res = run(&vars, k, budget, opts.exec, &|t: &Table| accept.matches(t))?;
    if let Decision::Yes(f) = &res.decision {
        verify(sop::is_extension_of_chain(f, n)? && f.occurrences().read_index <= k, "enumeration witness")?;
    }
    res.stats.candidates += prior.candidates;
    res.stats.elapsed += prior.elapsed;
    Ok(res)
}

fn check_args(g: &Graph, k: usize, budget: &SearchBudget) -> Result<()> {
    budget.validate()?;
    if k == 0 || k > 15 {
        return Err(Error::InvalidArgument("k must be in 1..=15".into()));
    }
    if g.vertex_count() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    Ok(())
}

fn verify(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("{what} does not match its target")))
    }
}

fn var_table(i: usize) -> Table {
    let mut t = [0u64; 4];
    for (a, word) in t.iter_mut().enumerate() {
        for b in 0..64 {
            if (a * 64 + b) >> i & 1 == 1 {
                *word |= 1 << b;
            }
        }
    }
    t
}

fn get(t: &Table, m: usize) -> bool {
    t[m >> 6] >> (m & 63) & 1 == 1
}

fn table_of_sop(s: &sop::SopForm, vars: &[String]) -> Table {
    let mut t = [0u64; 4];
    for term in s.terms() {
        let tv = term
            .vars()
            .iter()
            .map(|v| var_table(vars.iter().position(|w| w == v).expect("term over graph vertices")))
            .fold([u64::MAX; 4], and);
        t = or(t, tv);
    }
    mask(t, vars.len())
}

fn mask(mut t: Table, nvars: usize) -> Table {
    let size = 1usize << nvars;
    for (a, word) in t.iter_mut().enumerate() {
        let lo = a * 64;
        if lo >= size {
            *word = 0;
        } else if size - lo < 64 {
            *word &= (1u64 << (size - lo)) - 1;
        }
    }
    t
}

fn or(a: Table, b: Table) -> Table {
    [a[0] | b[0], a[1] | b[1], a[2] | b[2], a[3] | b[3]]
}

fn and(a: Table, b: Table) -> Table {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]]
}

fn implies(a: &Table, b: &Table) -> bool {
    (0..4).all(|i| a[i] & !b[i] == 0)
}

/// Minimal-true-point test for extensions of `G(n)` over `x1..xn, y1..yn`.
struct ExtensionShape {
    n: usize,
    edges: Vec<usize>,
}

impl ExtensionShape {
    fn new(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i..n).map(move |j| 1 << i | 1 << (n + j))).collect();
        ExtensionShape { n, edges }
    }

    fn matches(&self, t: &Table) -> bool {
        let n = self.n;
        if (0..2 * n).any(|i| get(t, 1 << i)) || !self.edges.iter().all(|&m| get(t, m)) {
            return false;
        }
        let xs = (1usize << n) - 1;
        for m in 1..1usize << (2 * n) {
            if !get(t, m) || (0..2 * n).any(|i| m >> i & 1 == 1 && get(t, m ^ 1 << i)) {
                continue;
            }
            let (x, y) = (m & xs, m >> n);
            if x != 0 && y != 0 {
                let ok = x.count_ones() == 1 && y.count_ones() == 1 && x.trailing_zeros() <= y.trailing_zeros();
                if !ok {
                    return false;
                }
            } else if m.count_ones() < 2 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Var,
    Sum,
    Prod,
}

struct Node {
    kind: Kind,
    table: Table,
    /// One byte per variable.
    usage: u64,
    leaves: usize,
    /// Variables this node isolates (itself for a leaf, leaf summands for a sum).
    iso: u8,
    children: Vec<u32>,
}

/// A freshly built node before deduplication.
struct Fresh {
    kind: Kind,
    table: Table,
    usage: u64,
    iso: u8,
    children: Vec<u32>,
}

const ONES: u64 = 0x0101_0101_0101_0101;
const HIGH: u64 = 0x8080_8080_8080_8080;

fn within(usage: u64, k: usize) -> bool {
    usage.wrapping_add(ONES * (127 - k as u64)) & HIGH == 0
}

fn run(
    vars: &[String],
    k: usize,
    budget: &SearchBudget,
    exec: Exec,
    accept: &(dyn Fn(&Table) -> bool + Sync),
) -> Result<SearchResult<Formula>> {
    let meter = Meter::new(budget);
    let nv = vars.len();
    if nv > MAX_ENUM_VARS {
        let reason = format!("{nv} variables exceed the enumeration limit of {MAX_ENUM_VARS}");
        return Ok(SearchResult { decision: Decision::Unknown(reason), stats: meter.stats() });
    }
    let needed = k * nv;
    let max_leaves = needed.min(budget.max_leaves);
    let mut arena: Vec<Node> = Vec::new();
    let mut seen: HashMap<(Kind, Table, u64), u32> = HashMap::new();
    for i in 0..nv {
        let table = mask(var_table(i), nv);
        arena.push(Node { kind: Kind::Var, table, usage: 1 << (8 * i), leaves: 1, iso: 1 << i, children: Vec::new() });
        seen.insert((Kind::Var, table, 1 << (8 * i)), i as u32);
        if accept(&table) {
            return Ok(found(&arena, i as u32, vars, &meter));
        }
    }
    for leaves in 2..=max_leaves {
        for kind in [Kind::Sum, Kind::Prod] {
            let pool: Vec<u32> = (0..arena.len() as u32)
                .filter(|&id| {
                    let nd = &arena[id as usize];
                    nd.kind != kind && nd.leaves < leaves
                })
                .collect();
            let batches = exec.map_range(pool.len(), |a| {
                let mut out = Vec::new();
                let mut gen = Gen { arena: &arena, pool: &pool, kind, k, meter: &meter, steps: 0, out: &mut out };
                let first = &arena[pool[a] as usize];
                if first.leaves < leaves {
                    let mut chosen = vec![pool[a]];
                    gen.extend(a + 1, leaves - first.leaves, first.usage, first.iso, &mut chosen);
                }
                meter.tick(gen.steps);
                out
            });
            if meter.tripped() {
                return Ok(SearchResult { decision: Decision::Unknown(meter.reason()), stats: meter.stats() });
            }
            for fresh in batches.into_iter().flatten() {
                let key = (fresh.kind, fresh.table, fresh.usage);
                if seen.contains_key(&key) {
                    continue;
                }
                let id = arena.len() as u32;
                seen.insert(key, id);
                let accepted = accept(&fresh.table);
                arena.push(Node {
                    kind: fresh.kind,
                    table: fresh.table,
                    usage: fresh.usage,
                    leaves,
                    iso: fresh.iso,
                    children: fresh.children,
                });
                if accepted {
                    return Ok(found(&arena, id, vars, &meter));
                }
            }
        }
    }
    let decision = if max_leaves < needed {
        Decision::Unknown(format!("leaf budget {} below the {needed} leaves needed to rule out", budget.max_leaves))
    } else {
        Decision::No
    };
    Ok(SearchResult { decision, stats: meter.stats() })
}

fn found(arena: &[Node], id: u32, vars: &[String], meter: &Meter) -> SearchResult<Formula> {
    SearchResult { decision: Decision::Yes(build(arena, id, vars).normalize()), stats: meter.stats() }
}

fn build(arena: &[Node], id: u32, vars: &[String]) -> Formula {
    let nd = &arena[id as usize];
    let kids = || nd.children.iter().map(|&c| build(arena, c, vars)).collect();
    match nd.kind {
        Kind::Var => Formula::var(vars[nd.usage.trailing_zeros() as usize / 8].clone()),
        Kind::Sum => Formula::Sum(kids()),
        Kind::Prod => Formula::Prod(kids()),
    }
}

struct Gen<'a> {
    arena: &'a [Node],
    pool: &'a [u32],
    kind: Kind,
    k: usize,
    meter: &'a Meter,
    steps: u64,
    out: &'a mut Vec<Fresh>,
}

impl Gen<'_> {
    fn extend(&mut self, from: usize, remaining: usize, usage: u64, iso: u8, chosen: &mut Vec<u32>) {
        self.steps += 1;
        if self.steps >= 4096 {
            if !self.meter.tick(self.steps) {
                self.steps = 0;
                return;
            }
            self.steps = 0;
        }
        for p in from..self.pool.len() {
            let id = self.pool[p];
            let c = &self.arena[id as usize];
            if c.leaves > remaining {
                break;
            }
            let rest = remaining - c.leaves;
            if rest != 0 && rest < c.leaves {
                continue;
            }
            let u = usage + c.usage;
            if !within(u, self.k) {
                continue;
            }
            if self.kind == Kind::Prod && iso & c.iso != 0 {
                continue;
            }
            let comparable = chosen.iter().any(|&o| {
                let t = &self.arena[o as usize].table;
                implies(t, &c.table) || implies(&c.table, t)
            });
            if comparable {
                continue;
            }
            let iso2 = match self.kind {
                Kind::Prod => iso | c.iso,
                _ => iso,
            };
            chosen.push(id);
            if rest == 0 {
                self.emit(chosen, u);
            } else {
                self.extend(p + 1, rest, u, iso2, chosen);
            }
            chosen.pop();
        }
    }

    fn emit(&mut self, chosen: &[u32], usage: u64) {
        let tables = chosen.iter().map(|&c| self.arena[c as usize].table);
        let (table, iso) = match self.kind {
            Kind::Sum => {
                let t = tables.fold([0; 4], or);
                let iso = chosen
                    .iter()
                    .map(|&c| &self.arena[c as usize])
                    .filter(|c| c.kind == Kind::Var)
                    .fold(0, |m, c| m | c.iso);
                (t, iso)
            }
            _ => (tables.fold([u64::MAX; 4], and), 0),
        };
        self.out.push(Fresh { kind: self.kind, table, usage, iso, children: chosen.to_vec() });
    }
}
