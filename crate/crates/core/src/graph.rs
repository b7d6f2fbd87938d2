//! Simple undirected graphs over named vertices, the chain, grid and complete
//! bipartite families, and the structural predicates used for read-1
//! recognition.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::names::{is_valid_name, natural_cmp, sort_names};
use crate::varset::VarSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VarSet>,
    /// Optional bipartition tags, as vertex indices.
    sides: Option<(Vec<usize>, Vec<usize>)>,
}

/// Wire form: `{"vertices":[..],"edges":[["u","v"],..],"x_side":[..],"y_side":[..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_side: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_side: Option<Vec<String>>,
}

impl Graph {
    /// Builds a simple graph. Vertex names are sorted naturally; repeated
    /// edges are merged; loops and dangling endpoints are rejected.
    pub fn new<S, E>(vertices: impl IntoIterator<Item = S>, edges: impl IntoIterator<Item = (E, E)>) -> Result<Graph>
    where
        S: Into<String>,
        E: AsRef<str>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let given = names.len();
        sort_names(&mut names);
        if names.len() != given {
            return Err(Error::InvalidGraph("duplicate vertex name".into()));
        }
        if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
            return Err(Error::InvalidName(bad.clone()));
        }
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let n = names.len();
        let mut adj = vec![VarSet::new(n); n];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index.get(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let iv = *index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
            if iu == iv {
                return Err(Error::InvalidGraph(format!("loop at `{u}`")));
            }
            adj[iu].insert(iv);
            adj[iv].insert(iu);
        }
        Ok(Graph { names, index, adj, sides: None })
    }

    /// Attaches bipartition tags. Every vertex must be on exactly one side
    /// and every edge must cross.
    pub fn with_sides<S: AsRef<str>>(mut self, x_side: &[S], y_side: &[S]) -> Result<Graph> {
        let lookup = |names: &[S]| -> Result<Vec<usize>> {
            let mut idx = names
                .iter()
                .map(|s| self.index_of(s.as_ref()).ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string())))
                .collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            idx.dedup();
            Ok(idx)
        };
        let (xs, ys) = (lookup(x_side)?, lookup(y_side)?);
        let mut side = vec![None; self.names.len()];
        for (s, list) in [(0u8, &xs), (1u8, &ys)] {
            for &i in list {
                if side[i].replace(s).is_some() {
                    return Err(Error::InvalidGraph(format!("`{}` is on both sides", self.names[i])));
                }
            }
        }
        if let Some(i) = side.iter().position(Option::is_none) {
            return Err(Error::InvalidGraph(format!("`{}` has no side", self.names[i])));
        }
        for (u, v) in self.edge_indices() {
            if side[u] == side[v] {
                return Err(Error::InvalidGraph(format!(
                    "edge {}{} does not cross the bipartition",
                    self.names[u], self.names[v]
                )));
            }
        }
        self.sides = Some((xs, ys));
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VarSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Neighbourhood of vertex `i` as a bit set over vertex indices.
    pub fn adjacency(&self, i: usize) -> &VarSet {
        &self.adj[i]
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.adj[a].contains(b),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: &str) -> Option<Vec<&str>> {
        let i = self.index_of(v)?;
        Some(self.adj[i].iter().map(|j| self.names[j].as_str()).collect())
    }

    /// Edges `(u, v)` with `u < v` by index, in lexicographic order.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        (0..self.names.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        self.edge_indices()
            .into_iter()
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect()
    }

    pub fn sides(&self) -> Option<(Vec<&str>, Vec<&str>)> {
        self.sides.as_ref().map(|(x, y)| {
            (
                x.iter().map(|&i| self.names[i].as_str()).collect(),
                y.iter().map(|&i| self.names[i].as_str()).collect(),
            )
        })
    }

    /// A 2-colouring as index lists: the tagged sides when present, otherwise
    /// one found by search (the lowest vertex of each component goes left).
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        if let Some(s) = &self.sides {
            return Some(s.clone());
        }
        let n = self.names.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for v in self.adj[u].iter() {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            stack.push(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let left = (0..n).filter(|&i| color[i] == Some(false)).collect();
        let right = (0..n).filter(|&i| color[i] == Some(true)).collect();
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edge_indices()
            .into_iter()
            .all(|(u, v)| !self.adj[u].intersects(&self.adj[v]))
    }

    /// True iff no four vertices induce a path, checked over all quadruples.
    pub fn is_cograph(&self) -> bool {
        self.is_cograph_with(Exec::default())
    }

    pub fn is_cograph_with(&self, exec: Exec) -> bool {
        self.find_induced_p4_with(exec).is_none()
    }

    /// Some induced `P4` as `(a, b, c, d)` with path edges `ab`, `bc`, `cd`.
    pub fn find_induced_p4(&self) -> Option<[String; 4]> {
        self.find_induced_p4_with(Exec::default())
            .map(|q| q.map(|i| self.names[i].clone()))
    }

    fn find_induced_p4_with(&self, exec: Exec) -> Option<[usize; 4]> {
        let n = self.names.len();
        let hits = exec.map_range(n, |a| {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if let Some(path) = self.p4_order([a, b, c, d]) {
                            return Some(path);
                        }
                    }
                }
            }
            None
        });
        hits.into_iter().flatten().next()
    }

    /// Orders a quadruple as a path when it induces exactly `P4`.
    fn p4_order(&self, q: [usize; 4]) -> Option<[usize; 4]> {
        let mut deg = [0usize; 4];
        let mut edges = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.adj[q[i]].contains(q[j]) {
                    deg[i] += 1;
                    deg[j] += 1;
                    edges += 1;
                }
            }
        }
        let mut sorted = deg;
        sorted.sort_unstable();
        if edges != 3 || sorted != [1, 1, 2, 2] {
            return None;
        }
        let start = (0..4).find(|&i| deg[i] == 1)?;
        let mut order = [q[start]; 4];
        let mut prev = usize::MAX;
        for slot in 1..4 {
            let cur = order[slot - 1];
            let next = q.iter().copied().find(|&w| w != cur && w != prev && self.adj[cur].contains(w))?;
            prev = cur;
            order[slot] = next;
        }
        Some(order)
    }

    /// Maximal cliques, each sorted by vertex index, in lexicographic order.
    /// Isolated vertices are singleton cliques.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.names.len();
        let mut out = Vec::new();
        if self.is_triangle_free() {
            out.extend((0..n).filter(|&i| self.adj[i].is_empty()).map(|i| vec![i]));
            out.extend(self.edge_indices().into_iter().map(|(u, v)| vec![u, v]));
        } else {
            let all = VarSet::from_indices(n, 0..n);
            self.bron_kerbosch(&mut Vec::new(), all, VarSet::new(n), &mut out);
            for c in &mut out {
                c.sort_unstable();
            }
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: VarSet, mut x: VarSet, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .union(&x)
            .iter()
            .max_by_key(|&u| p.intersection(&self.adj[u]).len())
            .expect("p is nonempty");
        let mut p = p;
        for v in p.difference(&self.adj[pivot]).iter().collect::<Vec<_>>() {
            r.push(v);
            self.bron_kerbosch(r, p.intersection(&self.adj[v]), x.intersection(&self.adj[v]), out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    pub fn to_json(&self) -> GraphJson {
        let sides = self.sides();
        GraphJson {
            vertices: self.names.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            x_side: sides.as_ref().map(|(x, _)| x.iter().map(|s| s.to_string()).collect()),
            y_side: sides.as_ref().map(|(_, y)| y.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let g = Graph::new(j.vertices.iter().cloned(), j.edges.iter().map(|[u, v]| (u, v)))?;
        match (&j.x_side, &j.y_side) {
            (Some(x), Some(y)) => g.with_sides(x, y),
            (None, None) => Ok(g),
            _ => Err(Error::InvalidGraph("only one side tagged".into())),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json")
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        Graph::from_json(&serde_json::from_str(s)?)
    }

    /// Induced subgraph on the named vertices (tags restricted accordingly).
    pub fn induced<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|s| self.index_of(s.as_ref()).ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string())))
            .collect::<Result<_>>()?;
        let names: Vec<String> = idx.iter().map(|&i| self.names[i].clone()).collect();
        let edges: Vec<(String, String)> = self
            .edge_indices()
            .into_iter()
            .filter(|(u, v)| idx.contains(u) && idx.contains(v))
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect();
        let g = Graph::new(names, edges)?;
        match self.sides() {
            Some((x, y)) => {
                let x: Vec<&str> = x.into_iter().filter(|v| g.contains(v)).collect();
                let y: Vec<&str> = y.into_iter().filter(|v| g.contains(v)).collect();
                g.with_sides(&x, &y)
            }
            None => Ok(g),
        }
    }
}

/// Chain graph `G(n)`: vertices `x1..xn`, `y1..yn`, edge `xi yj` iff `i <= j`.
pub fn chain_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidArgument("chain graph needs n >= 1".into()));
    }
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|j| format!("y{j}")).collect();
    let edges = (1..=n).flat_map(|i| (i..=n).map(move |j| (format!("x{i}"), format!("y{j}"))));
    Graph::new(xs.iter().chain(&ys).cloned(), edges)?.with_sides(&xs, &ys)
}

/// Rectangular grid counted in squares: `(rows+1) x (cols+1)` lattice points.
///
/// Point `(r, c)` is named `x{r}_{c}` when `r + c` is even and `y{r}_{c}`
/// otherwise, so the two prefixes are the colour classes.
pub fn grid_graph(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 1 || cols < 1 {
        return Err(Error::InvalidArgument("grid needs rows, cols >= 1".into()));
    }
    let mut edges = Vec::new();
    for r in 0..=rows {
        for c in 0..=cols {
            if c < cols {
                edges.push((grid_vertex(r, c), grid_vertex(r, c + 1)));
            }
            if r < rows {
                edges.push((grid_vertex(r, c), grid_vertex(r + 1, c)));
            }
        }
    }
    let points: Vec<(usize, usize)> =
        (0..=rows).flat_map(|r| (0..=cols).map(move |c| (r, c))).collect();
    let xs: Vec<String> =
        points.iter().filter(|(r, c)| (r + c).is_multiple_of(2)).map(|&(r, c)| grid_vertex(r, c)).collect();
    let ys: Vec<String> =
        points.iter().filter(|(r, c)| (r + c) % 2 == 1).map(|&(r, c)| grid_vertex(r, c)).collect();
    Graph::new(points.iter().map(|&(r, c)| grid_vertex(r, c)), edges)?.with_sides(&xs, &ys)
}

pub fn grid_vertex(r: usize, c: usize) -> String {
    let prefix = if (r + c).is_multiple_of(2) { 'x' } else { 'y' };
    format!("{prefix}{r}_{c}")
}

/// `K_{m,n}` on `a1..am` and `b1..bn`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument("complete bipartite graph needs m, n >= 1".into()));
    }
    let a: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=n).map(|j| format!("b{j}")).collect();
    let edges: Vec<(String, String)> =
        a.iter().flat_map(|u| b.iter().map(move |v| (u.clone(), v.clone()))).collect();
    Graph::new(a.iter().chain(&b).cloned(), edges)?.with_sides(&a, &b)
}

/// Adds `fresh` with exactly the neighbourhood of `v` (not adjacent to `v`).
pub fn duplicate_vertex(g: &Graph, v: &str, fresh: &str) -> Result<Graph> {
    let i = g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    if g.contains(fresh) {
        return Err(Error::NameClash(fresh.to_string()));
    }
    let mut names = g.vertices().to_vec();
    names.push(fresh.to_string());
    let mut edges = g.edges();
    edges.extend(g.adj[i].iter().map(|j| (fresh.to_string(), g.names[j].clone())));
    let out = Graph::new(names, edges)?;
    match g.sides() {
        Some((x, y)) => {
            let (mut x, mut y): (Vec<&str>, Vec<&str>) = (x, y);
            if x.contains(&v) {
                x.push(fresh);
            } else {
                y.push(fresh);
            }
            out.with_sides(&x, &y)
        }
        None => Ok(out),
    }
}

/// Vertex names sorted naturally; convenience for callers building sets.
pub fn sorted_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut v: Vec<String> = names.into_iter().map(str::to_string).collect();
    v.sort_by(|a, b| natural_cmp(a, b));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(["a1", "a2", "a3"], [("a1", "a2"), ("a2", "a3"), ("a1", "a3")]).unwrap()
    }

    #[test]
    fn chain_edges() {
        let g1 = chain_graph(1).unwrap();
        assert_eq!(g1.edges(), vec![("x1".to_string(), "y1".to_string())]);
        let g2 = chain_graph(2).unwrap();
        let e: Vec<String> = g2.edges().iter().map(|(u, v)| format!("{u}{v}")).collect();
        assert_eq!(e, vec!["x1y1", "x1y2", "x2y2"]);
        let g3 = chain_graph(3).unwrap();
        assert_eq!(g3.edge_count(), 6);
        assert!(!g3.has_edge("x2", "y1"));
        assert!(chain_graph(0).is_err());
    }

    #[test]
    fn grid_counts() {
        let g = grid_graph(1, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert!(g.is_cograph());
        let g = grid_graph(2, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 7));
        let g = grid_graph(2, 2).unwrap();
        assert!(g.is_triangle_free());
        assert!(!g.is_cograph());
        assert!(grid_graph(0, 3).is_err());
    }

    #[test]
    fn complete_bipartite_graphs() {
        assert_eq!(complete_bipartite(2, 3).unwrap().edge_count(), 6);
        assert_eq!(complete_bipartite(1, 1).unwrap().edge_count(), 1);
        let c4 = complete_bipartite(2, 2).unwrap();
        assert!(c4.vertices().iter().all(|v| c4.neighbors(v).unwrap().len() == 2));
        assert!(complete_bipartite(0, 1).is_err());
    }

    #[test]
    fn predicates() {
        assert!(!triangle().is_triangle_free());
        assert!(chain_graph(5).unwrap().is_triangle_free());
        assert!(complete_bipartite(3, 4).unwrap().is_cograph());
        let g2 = chain_graph(2).unwrap();
        assert!(!g2.is_cograph());
        let p4 = g2.find_induced_p4().unwrap();
        assert_eq!(p4.len(), 4);
        assert!(g2.has_edge(&p4[0], &p4[1]) && g2.has_edge(&p4[1], &p4[2]) && g2.has_edge(&p4[2], &p4[3]));
        assert!(!g2.has_edge(&p4[0], &p4[2]) && !g2.has_edge(&p4[0], &p4[3]));
    }

    #[test]
    fn duplication() {
        let g = chain_graph(2).unwrap();
        let d = duplicate_vertex(&g, "x1", "x1b").unwrap();
        assert_eq!(d.neighbors("x1b").unwrap(), vec!["y1", "y2"]);
        assert!(!d.has_edge("x1", "x1b"));
        let d = duplicate_vertex(&g, "y2", "y2b").unwrap();
        assert_eq!(d.neighbors("y2b").unwrap(), vec!["x1", "x2"]);
        assert!(d.sides().unwrap().1.contains(&"y2b"));
        let lone = Graph::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        let d = duplicate_vertex(&lone, "a", "b").unwrap();
        assert!(d.neighbors("b").unwrap().is_empty());
        assert!(duplicate_vertex(&g, "x1", "y1").is_err());
    }

    #[test]
    fn cliques() {
        assert_eq!(triangle().maximal_cliques(), vec![vec![0, 1, 2]]);
        let g = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")]).unwrap();
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn json_round_trip() {
        let g = chain_graph(3).unwrap();
        let back = Graph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back, g);
        assert!(Graph::from_json_str(r#"{"vertices":["a"],"edges":[["a","b"]]}"#).is_err());
        assert!(Graph::new(["a"], [("a", "a")]).is_err());
    }
}
