//! Exact search for local biclique covers of bounded multiplicity.
//!
//! Branching always targets the first uncovered edge `uv` and tries every
//! biclique `L x R` with `u in L`, `v in R` in which each vertex covers at
//! least one new edge. Restricting to such bicliques loses nothing: dropping
//! a vertex that covers no new edge keeps a biclique and only frees
//! capacity. Failed states are memoised on (covered edges, capacities).

use std::collections::HashSet;

use crate::cover::{Biclique, BicliqueCover};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::search::{Decision, Meter, SearchBudget, SearchResult};

/// Vertex and edge limits of the packed search state.
pub const MAX_COVER_VERTICES: usize = 16;
pub const MAX_COVER_EDGES: usize = 128;

/// Biclique as (left mask, right mask) over vertex indices.
type Block = (u32, u32);

/// Decides whether the bipartite graph `g` has a local biclique cover of
/// multiplicity at most `k`, returning one if so.
pub fn min_local_cover_decide(g: &Graph, k: usize) -> Result<Decision<BicliqueCover>> {
    Ok(min_local_cover_decide_with(g, k, &SearchBudget::default(), Exec::default())?.decision)
}

pub fn min_local_cover_decide_with(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
    exec: Exec,
) -> Result<SearchResult<BicliqueCover>> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    local_cover_any(g, k, budget, exec)
}

/// Same search for any triangle-free graph. In a triangle-free graph both
/// sides of a biclique are independent, so the branching is unchanged.
pub(crate) fn local_cover_any(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
    exec: Exec,
) -> Result<SearchResult<BicliqueCover>> {
    budget.validate()?;
    if k == 0 {
        return Err(Error::InvalidArgument("multiplicity bound must be >= 1".into()));
    }
    if !g.is_triangle_free() {
        return Err(Error::NotTriangleFree);
    }
    let meter = Meter::new(budget);
    let n = g.vertex_count();
    let edges = g.edge_indices();
    if n > MAX_COVER_VERTICES || edges.len() > MAX_COVER_EDGES {
        return Ok(SearchResult {
            decision: Decision::Unknown(format!(
                "{n} vertices / {} edges exceed the exact-search limits of {MAX_COVER_VERTICES} / {MAX_COVER_EDGES}",
                edges.len()
            )),
            stats: meter.stats(),
        });
    }
    if edges.is_empty() {
        return Ok(SearchResult { decision: Decision::Yes(BicliqueCover::default()), stats: meter.stats() });
    }
    let k = k.min(15) as u8;
    let s = Searcher::new(g, &edges);
    let full: u128 = if edges.len() == 128 { u128::MAX } else { (1u128 << edges.len()) - 1 };
    let caps = vec![k; n];
    let first = s.branches(0, &caps);
    let found = exec.find_first(&first, |&blk| {
        let mut memo = HashSet::new();
        let mut chosen = vec![blk];
        let mut caps = caps.clone();
        s.apply(blk, &mut caps);
        let covered = s.cover_mask(blk);
        if s.dfs(covered, full, &mut caps, &mut chosen, &mut memo, &meter) {
            Some(chosen)
        } else {
            None
        }
    });
    let decision = match found {
        Some(blocks) => Decision::Yes(s.to_cover(g, &blocks)),
        None if meter.tripped() => Decision::Unknown(meter.reason()),
        None => Decision::No,
    };
    Ok(SearchResult { decision, stats: meter.stats() })
}

/// Smallest `k` for which a cover exists, trying `k = 1, 2, ...` up to
/// `max_k`, with the witness.
pub fn local_cover_number(
    g: &Graph,
    max_k: usize,
    budget: &SearchBudget,
    exec: Exec,
) -> Result<Decision<(usize, BicliqueCover)>> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    for k in 1..=max_k {
        match local_cover_any(g, k, budget, exec)?.decision {
            Decision::Yes(c) => return Ok(Decision::Yes((k, c))),
            Decision::No => {}
            Decision::Unknown(r) => return Ok(Decision::Unknown(r)),
        }
    }
    Ok(Decision::No)
}

struct Searcher {
    n: usize,
    adj: Vec<u32>,
    edges: Vec<(usize, usize)>,
    edge_id: Vec<Option<u8>>,
}

impl Searcher {
    fn new(g: &Graph, edges: &[(usize, usize)]) -> Self {
        let n = g.vertex_count();
        let adj = (0..n).map(|i| g.adjacency(i).iter().fold(0u32, |m, j| m | 1 << j)).collect();
        let mut edge_id = vec![None; n * n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            edge_id[u * n + v] = Some(e as u8);
            edge_id[v * n + u] = Some(e as u8);
        }
        Searcher { n, adj, edges: edges.to_vec(), edge_id }
    }

    fn cover_mask(&self, (l, r): Block) -> u128 {
        let mut m = 0u128;
        for a in bits(l) {
            for b in bits(r) {
                m |= 1u128 << self.edge_id[a * self.n + b].expect("biclique spans an edge") as u32;
            }
        }
        m
    }

    fn apply(&self, (l, r): Block, caps: &mut [u8]) {
        for v in bits(l | r) {
            caps[v] -= 1;
        }
    }

    fn undo(&self, (l, r): Block, caps: &mut [u8]) {
        for v in bits(l | r) {
            caps[v] += 1;
        }
    }

    /// Bicliques covering edge `e` in which every vertex has capacity left
    /// and covers some edge not yet in `covered` (checked by the caller via
    /// [`Self::useful`]).
    fn branches(&self, e: usize, caps: &[u8]) -> Vec<Block> {
        let (u, v) = self.edges[e];
        let avail: u32 = (0..self.n).filter(|&i| caps[i] > 0).fold(0, |m, i| m | 1 << i);
        if avail & (1 << u) == 0 || avail & (1 << v) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let l_pool = self.adj[v] & avail & !(1 << u);
        for l_extra in subsets(l_pool) {
            let l = l_extra | 1 << u;
            let common = bits(l).fold(u32::MAX, |m, a| m & self.adj[a]);
            let r_pool = common & avail & !(1 << v);
            for r_extra in subsets(r_pool) {
                out.push((l, r_extra | 1 << v));
            }
        }
        out
    }

    /// Each vertex of the block covers an edge outside `covered`.
    fn useful(&self, (l, r): Block, covered: u128) -> bool {
        let fresh = |a: usize, other: u32| {
            bits(other).any(|b| covered >> self.edge_id[a * self.n + b].unwrap() as u32 & 1 == 0)
        };
        bits(l).all(|a| fresh(a, r)) && bits(r).all(|b| fresh(b, l))
    }

    fn dead(&self, covered: u128, full: u128, caps: &[u8]) -> bool {
        let mut rest = full & !covered;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (u, v) = self.edges[e];
            if caps[u] == 0 || caps[v] == 0 {
                return true;
            }
        }
        false
    }

    fn dfs(
        &self,
        covered: u128,
        full: u128,
        caps: &mut [u8],
        chosen: &mut Vec<Block>,
        memo: &mut HashSet<(u128, u64)>,
        meter: &Meter,
    ) -> bool {
        if covered == full {
            return true;
        }
        if !meter.tick(1) || self.dead(covered, full, caps) {
            return false;
        }
        let key = (covered, pack(caps));
        if memo.contains(&key) {
            return false;
        }
        let e = (full & !covered).trailing_zeros() as usize;
        for blk in self.branches(e, caps) {
            if !self.useful(blk, covered) {
                continue;
            }
            self.apply(blk, caps);
            chosen.push(blk);
            if self.dfs(covered | self.cover_mask(blk), full, caps, chosen, memo, meter) {
                return true;
            }
            chosen.pop();
            self.undo(blk, caps);
            if meter.tripped() {
                return false;
            }
        }
        memo.insert(key);
        false
    }

    fn to_cover(&self, g: &Graph, blocks: &[Block]) -> BicliqueCover {
        let left_side: u32 = g
            .bipartition()
            .map(|(l, _)| l.iter().fold(0, |m, &i| m | 1 << i))
            .unwrap_or(0);
        let names = |m: u32| bits(m).map(|i| g.name(i).to_string()).collect::<Vec<_>>();
        BicliqueCover::new(
            blocks
                .iter()
                .map(|&(l, r)| {
                    let (l, r) = if r & left_side != 0 && l & left_side == 0 { (r, l) } else { (l, r) };
                    Biclique::new(names(l), names(r))
                })
                .collect(),
        )
    }
}

fn bits(m: u32) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// All submasks of `m`, the empty set first.
fn subsets(m: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some(((cur | !m).wrapping_add(1)) & m) };
        Some(cur)
    })
}

fn pack(caps: &[u8]) -> u64 {
    caps.iter().enumerate().fold(0, |p, (i, &c)| p | (c as u64) << (4 * i))
}
