//! Local biclique covers of a host graph.
//!
//! A cover is a list of bicliques (complete bipartite subgraphs) whose edges
//! together are exactly the host's edges. Its multiplicity is the largest
//! number of bicliques sharing one vertex; a cover of multiplicity `k`
//! compiles to a read-`k` formula for the host.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::graph::{grid_vertex, Graph};
use crate::names::{natural_cmp, sort_names};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Biclique {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Biclique {
    pub fn new<S: Into<String>>(left: impl IntoIterator<Item = S>, right: impl IntoIterator<Item = S>) -> Self {
        let mut left: Vec<String> = left.into_iter().map(Into::into).collect();
        let mut right: Vec<String> = right.into_iter().map(Into::into).collect();
        sort_names(&mut left);
        sort_names(&mut right);
        Biclique { left, right }
    }

    pub fn contains(&self, v: &str) -> bool {
        self.left.iter().chain(&self.right).any(|w| w == v)
    }

    fn sides_formula(side: &[String]) -> Formula {
        Formula::sum(side.iter().cloned().map(Formula::Var).collect())
    }
}

impl fmt::Display for Biclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}x{{{}}}", self.left.join(","), self.right.join(","))
    }
}

/// Wire form: `[{"left":["x1","x2"],"right":["y2","y3"]}, ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BicliqueCover {
    pub bicliques: Vec<Biclique>,
}

impl BicliqueCover {
    pub fn new(bicliques: Vec<Biclique>) -> Self {
        BicliqueCover { bicliques }
    }

    /// Number of bicliques containing each vertex, in natural name order.
    pub fn profile(&self) -> Vec<(String, usize)> {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for b in &self.bicliques {
            for v in b.left.iter().chain(&b.right) {
                *counts.entry(v.as_str()).or_default() += 1;
            }
        }
        let mut out: Vec<(String, usize)> = counts.into_iter().map(|(k, c)| (k.to_string(), c)).collect();
        out.sort_by(|a, b| natural_cmp(&a.0, &b.0));
        out
    }

    pub fn multiplicity(&self) -> usize {
        self.profile().iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("cover json")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for BicliqueCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bicliques.iter().map(Biclique::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// First defect found by [`validate_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverDefect {
    EmptySide(usize),
    /// A biclique spans a pair that is not an edge of the host.
    NonEdge(String, String),
    UncoveredEdge(String, String),
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverDefect::EmptySide(i) => write!(f, "biclique {i} has an empty side"),
            CoverDefect::NonEdge(u, v) => write!(f, "spans non-edge {u}{v}"),
            CoverDefect::UncoveredEdge(u, v) => write!(f, "edge {u}{v} is not covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub valid: bool,
    pub multiplicity: usize,
    pub defect: Option<CoverDefect>,
}

/// Checks that every biclique spans only host edges and that together they
/// cover every host edge. Unknown vertex names are an error.
pub fn validate_cover(g: &Graph, c: &BicliqueCover) -> Result<CoverReport> {
    let n = g.vertex_count();
    let mut covered = vec![false; n * n];
    let mut defect = None;
    for (bi, b) in c.bicliques.iter().enumerate() {
        let idx = |side: &[String]| -> Result<Vec<usize>> {
            side.iter()
                .map(|v| g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.clone())))
                .collect()
        };
        let (l, r) = (idx(&b.left)?, idx(&b.right)?);
        if l.is_empty() || r.is_empty() {
            defect.get_or_insert(CoverDefect::EmptySide(bi));
        }
        for &u in &l {
            for &v in &r {
                if g.adjacency(u).contains(v) {
                    covered[u * n + v] = true;
                    covered[v * n + u] = true;
                } else {
                    defect.get_or_insert_with(|| CoverDefect::NonEdge(g.name(u).into(), g.name(v).into()));
                }
            }
        }
    }
    if defect.is_none() {
        defect = g
            .edge_indices()
            .into_iter()
            .find(|&(u, v)| !covered[u * n + v])
            .map(|(u, v)| CoverDefect::UncoveredEdge(g.name(u).into(), g.name(v).into()));
    }
    Ok(CoverReport { valid: defect.is_none(), multiplicity: c.multiplicity(), defect })
}

/// Cover of `G(n)` by halving: cover `G(ceil(n/2))` and the shifted
/// `G(floor(n/2))` separately, then add the cross biclique from the first
/// half's `x` vertices to the second half's `y` vertices. After each level,
/// bicliques whose union is still a biclique of `G(n)` are merged, which
/// never raises any vertex's count.
///
/// Multiplicity is at most `1 + ceil(log2 n)`.
pub fn chain_cover_recursive(n: usize) -> Result<BicliqueCover> {
    if n < 1 {
        return Err(Error::InvalidArgument("chain cover needs n >= 1".into()));
    }
    let blocks = chain_blocks(1, n);
    Ok(BicliqueCover::new(
        blocks
            .into_iter()
            .map(|(xs, ys)| {
                Biclique::new(xs.iter().map(|i| format!("x{i}")), ys.iter().map(|j| format!("y{j}")))
            })
            .collect(),
    ))
}

type IndexBlock = (Vec<usize>, Vec<usize>);

/// Covers the chain on indices `lo..=hi`.
fn chain_blocks(lo: usize, hi: usize) -> Vec<IndexBlock> {
    if lo == hi {
        return vec![(vec![lo], vec![lo])];
    }
    let len = hi - lo + 1;
    let mid = lo + len.div_ceil(2) - 1;
    let mut blocks = chain_blocks(lo, mid);
    blocks.extend(chain_blocks(mid + 1, hi));
    blocks.push(((lo..=mid).collect(), (mid + 1..=hi).collect()));
    merge_chain_blocks(blocks)
}

fn merge_chain_blocks(mut blocks: Vec<IndexBlock>) -> Vec<IndexBlock> {
    // (X, Y) is a biclique of the chain iff max X <= min Y
    let fits = |a: &IndexBlock, b: &IndexBlock| {
        let max_x = a.0.iter().chain(&b.0).max().unwrap();
        let min_y = a.1.iter().chain(&b.1).min().unwrap();
        max_x <= min_y
    };
    let mut changed = true;
    while changed {
        changed = false;
        'scan: for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if fits(&blocks[i], &blocks[j]) {
                    let b = blocks.remove(j);
                    let a = &mut blocks[i];
                    a.0.extend(b.0);
                    a.1.extend(b.1);
                    a.0.sort_unstable();
                    a.0.dedup();
                    a.1.sort_unstable();
                    a.1.dedup();
                    changed = true;
                    break 'scan;
                }
            }
        }
    }
    blocks
}

/// Chessboard cover of the grid: the bounding 4-cycle of every black square
/// (square `(i, j)` is black iff `i + j` is even), then boundary edges left
/// uncovered are patched, preferring one `K_{1,2}` for two uncovered edges
/// meeting at a vertex. Multiplicity is at most 2.
pub fn grid_chessboard_cover(rows: usize, cols: usize) -> Result<BicliqueCover> {
    if rows < 1 || cols < 1 {
        return Err(Error::InvalidArgument("grid needs rows, cols >= 1".into()));
    }
    let mut bicliques = Vec::new();
    let mut covered = std::collections::HashSet::new();
    let key = |a: (usize, usize), b: (usize, usize)| if a <= b { (a, b) } else { (b, a) };
    for i in 0..rows {
        for j in 0..cols {
            if (i + j) % 2 == 0 {
                let (tl, tr, bl, br) = ((i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1));
                bicliques.push(Biclique::new(
                    [grid_vertex(tl.0, tl.1), grid_vertex(br.0, br.1)],
                    [grid_vertex(tr.0, tr.1), grid_vertex(bl.0, bl.1)],
                ));
                for (a, b) in [(tl, tr), (tr, br), (br, bl), (bl, tl)] {
                    covered.insert(key(a, b));
                }
            }
        }
    }
    let mut uncovered: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for r in 0..=rows {
        for c in 0..=cols {
            if c < cols && !covered.contains(&key((r, c), (r, c + 1))) {
                uncovered.push(((r, c), (r, c + 1)));
            }
            if r < rows && !covered.contains(&key((r, c), (r + 1, c))) {
                uncovered.push(((r, c), (r + 1, c)));
            }
        }
    }
    let mut done = vec![false; uncovered.len()];
    for r in 0..=rows {
        for c in 0..=cols {
            let v = (r, c);
            let at: Vec<usize> = (0..uncovered.len())
                .filter(|&e| !done[e] && (uncovered[e].0 == v || uncovered[e].1 == v))
                .collect();
            if at.len() >= 2 {
                let others: Vec<(usize, usize)> = at[..2]
                    .iter()
                    .map(|&e| if uncovered[e].0 == v { uncovered[e].1 } else { uncovered[e].0 })
                    .collect();
                bicliques.push(Biclique::new(
                    [grid_vertex(v.0, v.1)],
                    others.iter().map(|o| grid_vertex(o.0, o.1)).collect::<Vec<_>>(),
                ));
                done[at[0]] = true;
                done[at[1]] = true;
            }
        }
    }
    for (e, &(a, b)) in uncovered.iter().enumerate() {
        if !done[e] {
            bicliques.push(Biclique::new([grid_vertex(a.0, a.1)], [grid_vertex(b.0, b.1)]));
        }
    }
    for b in &mut bicliques {
        // keep the even-parity (x) class on the left
        if b.left.first().is_some_and(|v| v.starts_with('y')) {
            std::mem::swap(&mut b.left, &mut b.right);
        }
    }
    Ok(BicliqueCover::new(bicliques))
}

/// `sum over bicliques of (sum of left) * (sum of right)`, normalized.
pub fn cover_to_formula(c: &BicliqueCover) -> Result<Formula> {
    if c.bicliques.is_empty() {
        return Err(Error::InvalidArgument("empty cover has no formula".into()));
    }
    if let Some(i) = c.bicliques.iter().position(|b| b.left.is_empty() || b.right.is_empty()) {
        return Err(Error::InvalidArgument(format!("biclique {i} has an empty side")));
    }
    let prods = c
        .bicliques
        .iter()
        .map(|b| Formula::prod(vec![Biclique::sides_formula(&b.left), Biclique::sides_formula(&b.right)]))
        .collect();
    Ok(Formula::sum(prods).normalize())
}

/// Like [`cover_to_formula`] but first checks the cover against its host.
pub fn cover_to_formula_checked(g: &Graph, c: &BicliqueCover) -> Result<Formula> {
    let report = validate_cover(g, c)?;
    match report.defect {
        Some(d) => Err(Error::Precondition(format!("invalid cover: {d}"))),
        None => cover_to_formula(c),
    }
}

/// Adds `fresh` to every biclique side containing `v`, giving a cover of
/// the graph with `v` duplicated.
pub fn extend_cover_to_duplicate(c: &BicliqueCover, v: &str, fresh: &str) -> Result<BicliqueCover> {
    if c.bicliques.iter().any(|b| b.contains(fresh)) {
        return Err(Error::NameClash(fresh.to_string()));
    }
    let mut out = c.clone();
    for b in &mut out.bicliques {
        for side in [&mut b.left, &mut b.right] {
            if side.iter().any(|w| w == v) {
                side.push(fresh.to_string());
                sort_names(side);
            }
        }
    }
    Ok(out)
}

/// `1 + ceil(log2 n)`, an upper bound on the local biclique cover number of `G(n)`.
pub fn r_upper_bound(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(1 + n.next_power_of_two().trailing_zeros() as usize)
}

/// Largest `k` with `(2k-1)!! <= n`, a lower bound on the local biclique
/// cover number of `G(n)`.
pub fn r_lower_bound(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let (mut k, mut dfact) = (1usize, 1u128);
    loop {
        let next = dfact * (2 * k as u128 + 1);
        if next > n as u128 {
            return Ok(k);
        }
        dfact = next;
        k += 1;
    }
}
