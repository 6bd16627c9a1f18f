//! Undirected simple graphs over dense vertex indices `0..n`.
//!
//! Adjacency is stored as one bit row per vertex, which keeps edge queries
//! O(1) and lets the oracles lift rows straight into machine-word masks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{n} vertices exceeds the limit of {limit} for serialized graphs")]
    TooLarge { n: usize, limit: usize },
}

/// Undirected simple graph.
///
/// Invariants: adjacency is symmetric and irreflexive, and every stored
/// neighbour index is below `n`. Values are immutable once built except
/// through [`Graph::add_edge`], which preserves both properties.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(r: RawGraph) -> Result<Self, Self::Error> {
        if r.n > crate::io::MAX_VERTICES {
            return Err(GraphError::TooLarge {
                n: r.n,
                limit: crate::io::MAX_VERTICES,
            });
        }
        Graph::from_edges(r.n, &r.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges(),
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set(u, v);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    /// Neighbours of `u` in increasing order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|u| self.degree(u)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|u| self.degree(u)).max()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Adjacency of `u` as a 64-bit mask. Only meaningful when `n <= 64`.
    pub fn mask(&self, u: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[u * self.words]
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v);
                }
            }
        }
        g
    }

    /// `self + other`: vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for (u, v) in other.edges() {
            g.set(u + self.n, v + self.n);
        }
        g
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set(u, self.n + v);
            }
        }
        g
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    /// Line graph; vertex `i` is the `i`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let mut l = Graph::empty(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    l.set(i, j);
                }
            }
        }
        l
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j);
                }
            }
        }
        g
    }

    /// `self - S`, returning the graph and the surviving original indices.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        (self.induced(&keep), keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Components of the complement. Distinct co-components are complete
    /// to each other in `self`.
    pub fn co_components(&self) -> Vec<Vec<usize>> {
        // BFS over non-neighbours without materialising the complement.
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for (v, s) in seen.iter_mut().enumerate() {
                    if !*s && v != u && !self.has_edge(u, v) {
                        *s = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|u| self.degree(u) == d)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    /// A proper 2-colouring (`false`/`true` sides) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_acyclic(&self) -> bool {
        self.components()
            .iter()
            .all(|c| self.induced(c).edge_count() + 1 == c.len())
    }

    /// Disjoint union of paths: maximum degree at most two and no cycle.
    pub fn is_linear_forest(&self) -> bool {
        self.max_degree().unwrap_or(0) <= 2 && self.is_acyclic()
    }

    /// Vertices adjacent to every other vertex.
    pub fn dominating_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| self.degree(u) + 1 == self.n)
            .collect()
    }

    /// Outer boundary: neighbours of `set` that lie outside it.
    pub fn outer_boundary(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        for &u in set {
            inside[u] = true;
        }
        let mut hit = vec![false; self.n];
        for &u in set {
            for v in self.neighbors(u) {
                if !inside[v] {
                    hit[v] = true;
                }
            }
        }
        (0..self.n).filter(|&v| hit[v]).collect()
    }

    /// Size of a largest clique, by plain branch and bound.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, cand: Vec<usize>, size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            if cand.is_empty() {
                *best = size;
                return;
            }
            for (i, &v) in cand.iter().enumerate() {
                if size + cand.len() - i <= *best {
                    return;
                }
                let next: Vec<usize> = cand[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(v, w))
                    .collect();
                grow(g, next, size + 1, best);
            }
        }
        let mut best = 0;
        grow(self, (0..self.n).collect(), 0, &mut best);
        best
    }

    pub fn independence_number(&self) -> usize {
        self.complement().clique_number()
    }
}

/// Result of the m-degree analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightAnalysis {
    /// Largest `k` with at least `k` vertices of degree at least `k - 1`.
    pub m: usize,
    /// Dense vertices: degree at least `m - 1`.
    pub dense: Vec<usize>,
    /// Outer boundary of the dense set.
    pub boundary: Vec<usize>,
    pub is_tight: bool,
}

/// m-degree, dense set, its outer boundary and tightness.
///
/// The empty graph has `m = 0` and is not tight.
pub fn analyze_tight(g: &Graph) -> TightAnalysis {
    let mut degs = g.degrees();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    // degs[k-1] >= k-1 means the k largest degrees are all >= k-1.
    let m = (1..=g.n())
        .take_while(|&k| degs[k - 1] + 1 >= k)
        .last()
        .unwrap_or(0);
    if m == 0 {
        return TightAnalysis {
            m,
            dense: Vec::new(),
            boundary: Vec::new(),
            is_tight: false,
        };
    }
    let dense: Vec<usize> = (0..g.n()).filter(|&u| g.degree(u) + 1 >= m).collect();
    let is_tight = dense.len() == m && dense.iter().all(|&u| g.degree(u) + 1 == m);
    let boundary = g.outer_boundary(&dense);
    TightAnalysis {
        m,
        dense,
        boundary,
        is_tight,
    }
}

/// Shorthand constructors for the small graphs used throughout tests,
/// fixtures and pattern tables.
pub mod named {
    use super::Graph;

    pub fn path(r: usize) -> Graph {
        let mut g = Graph::empty(r);
        for i in 1..r {
            g.set(i - 1, i);
        }
        g
    }

    pub fn cycle(r: usize) -> Graph {
        let mut g = path(r);
        if r >= 3 {
            g.set(0, r - 1);
        }
        g
    }

    pub fn complete(r: usize) -> Graph {
        Graph::complete(r)
    }

    /// `K_{1,r}` with centre 0.
    pub fn star(r: usize) -> Graph {
        let mut g = Graph::empty(r + 1);
        for i in 1..=r {
            g.set(0, i);
        }
        g
    }

    pub fn claw() -> Graph {
        star(3)
    }

    /// Triangle 0-1-2 with pendant 3 attached to 0.
    pub fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
    }

    pub fn empty(k: usize) -> Graph {
        Graph::empty(k)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in 0..b {
                g.set(u, a + v);
            }
        }
        g
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.set(i, (i + 1) % 5);
            g.set(5 + i, 5 + (i + 2) % 5);
            g.set(i, i + 5);
        }
        g
    }

    /// Triangular prism: triangles 0-1-2 and 3-4-5 with rungs i -- i+3.
    pub fn prism() -> Graph {
        let mut g = Graph::empty(6);
        for i in 0..3 {
            g.set(i, (i + 1) % 3);
            g.set(3 + i, 3 + (i + 1) % 3);
            g.set(i, i + 3);
        }
        g
    }

    /// Disjoint union of a list of graphs, in order.
    pub fn sum(parts: &[Graph]) -> Graph {
        parts
            .iter()
            .fold(Graph::empty(0), |acc, p| acc.disjoint_union(p))
    }
}
