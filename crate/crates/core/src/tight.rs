//! Tight b-colourings: partial b-colourings of the dense set plus part of its
//! boundary, the matching-based extension decision, and the polynomial
//! algorithms for `(2P2+P1)`-free and `(P3+P1)`-free tight graphs.

use thiserror::Error;

use crate::colouring::{is_tight_b_colouring, Colouring};
use crate::graph::{analyze_tight, Graph, TightAnalysis};
use crate::matching::max_bipartite_matching;
use crate::pattern::{is_free_of, olariu_kind, OlariuKind, PatternName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TightError {
    #[error("graph is not tight")]
    NotTight,
    #[error("graph is not {0}-free")]
    NotFree(String),
    #[error("a component is not complete")]
    NotCliqueUnion,
    #[error(transparent)]
    Partial(#[from] PartialError),
}

/// Why a colouring of `T ∪ S'` is not a valid partial b-colouring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialError {
    #[error("graph is not tight")]
    NotTight,
    #[error("colour vector has {got} entries for {expected} vertices")]
    Length { expected: usize, got: usize },
    #[error("vertex {0} is in S' but not on the boundary of the dense set")]
    NotBoundary(usize),
    #[error("vertex {0} must be coloured exactly when it lies in T or S'")]
    Domain(usize),
    #[error("vertex {vertex} has colour {colour} outside 1..={m}")]
    Range {
        vertex: usize,
        colour: u32,
        m: usize,
    },
    #[error("dense vertices {0} and {1} share a colour")]
    DenseRepeat(usize, usize),
    #[error("adjacent vertices {0} and {1} share a colour")]
    Improper(usize, usize),
    #[error(
        "dense vertex {vertex} has {count} neighbours of colour {colour}, expected exactly one"
    )]
    UniqueNeighbour {
        vertex: usize,
        colour: u32,
        count: usize,
    },
}

/// Why a partial b-colouring has no b-precolouring extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NoExtension {
    #[error("every dense vertex is dominating or shares its colour, but part of the boundary is uncoloured")]
    UncolouredBoundary,
    #[error("{t2} free dense vertices against {s} uncoloured boundary vertices")]
    SideMismatch { t2: usize, s: usize },
    #[error("the pairing graph has no perfect matching")]
    NoPerfectMatching,
}

/// A validated `S'`-partial b-colouring of a tight graph.
#[derive(Debug, Clone)]
pub struct PartialBColouring<'g> {
    graph: &'g Graph,
    analysis: TightAnalysis,
    s_prime: Vec<usize>,
    colours: Vec<Option<u32>>,
}

/// Split of the dense set and boundary used by the extension decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePartition {
    /// Dense vertices dominating the dense set.
    pub t1: Vec<usize>,
    /// Dense vertices whose colour also appears on `S'`.
    pub t_prime: Vec<usize>,
    /// The remaining dense vertices.
    pub t2: Vec<usize>,
    /// Uncoloured boundary vertices.
    pub s: Vec<usize>,
}

impl<'g> PartialBColouring<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn analysis(&self) -> &TightAnalysis {
        &self.analysis
    }

    pub fn s_prime(&self) -> &[usize] {
        &self.s_prime
    }

    pub fn colours(&self) -> &[Option<u32>] {
        &self.colours
    }

    pub fn partition(&self) -> DensePartition {
        let g = self.graph;
        let dense = &self.analysis.dense;
        let t1: Vec<usize> = dense
            .iter()
            .copied()
            .filter(|&u| dense.iter().all(|&w| w == u || g.has_edge(u, w)))
            .collect();
        let shared: Vec<u32> = self
            .s_prime
            .iter()
            .map(|&s| self.colours[s].unwrap())
            .collect();
        let t_prime: Vec<usize> = dense
            .iter()
            .copied()
            .filter(|&u| shared.contains(&self.colours[u].unwrap()))
            .collect();
        let t2 = dense
            .iter()
            .copied()
            .filter(|u| !t1.contains(u) && !t_prime.contains(u))
            .collect();
        let s = self
            .analysis
            .boundary
            .iter()
            .copied()
            .filter(|v| !self.s_prime.contains(v))
            .collect();
        DensePartition { t1, t_prime, t2, s }
    }
}

/// Checks that `colours` is an `S'`-partial b-colouring of `g`.
///
/// `colours[v]` must be `Some` exactly for `v` in `T ∪ S'`, with values in
/// `1..=m(G)`.
pub fn validate_partial<'g>(
    g: &'g Graph,
    s_prime: &[usize],
    colours: &[Option<u32>],
) -> Result<PartialBColouring<'g>, PartialError> {
    let a = analyze_tight(g);
    if !a.is_tight {
        return Err(PartialError::NotTight);
    }
    let n = g.n();
    if colours.len() != n {
        return Err(PartialError::Length {
            expected: n,
            got: colours.len(),
        });
    }
    let mut s_prime = s_prime.to_vec();
    s_prime.sort_unstable();
    s_prime.dedup();
    if let Some(&v) = s_prime
        .iter()
        .find(|v| a.boundary.binary_search(v).is_err())
    {
        return Err(PartialError::NotBoundary(v));
    }
    for (v, c) in colours.iter().enumerate() {
        let in_domain = a.dense.binary_search(&v).is_ok() || s_prime.binary_search(&v).is_ok();
        match *c {
            Some(_) if !in_domain => return Err(PartialError::Domain(v)),
            None if in_domain => return Err(PartialError::Domain(v)),
            Some(c) if c == 0 || c as usize > a.m => {
                return Err(PartialError::Range {
                    vertex: v,
                    colour: c,
                    m: a.m,
                })
            }
            _ => {}
        }
    }
    for (i, &u) in a.dense.iter().enumerate() {
        for &w in &a.dense[i + 1..] {
            if colours[u] == colours[w] {
                return Err(PartialError::DenseRepeat(u, w));
            }
        }
    }
    for (u, v) in g.edges() {
        if colours[u].is_some() && colours[u] == colours[v] {
            return Err(PartialError::Improper(u, v));
        }
    }
    for &u in &a.dense {
        let cu = colours[u].unwrap();
        if !s_prime.iter().any(|&s| colours[s] == Some(cu)) {
            continue;
        }
        for &w in a.dense.iter().filter(|&&w| w != u) {
            let count = g.neighbors(w).filter(|&x| colours[x] == Some(cu)).count();
            if count != 1 {
                return Err(PartialError::UniqueNeighbour {
                    vertex: w,
                    colour: cu,
                    count,
                });
            }
        }
    }
    Ok(PartialBColouring {
        graph: g,
        analysis: a,
        s_prime,
        colours: colours.to_vec(),
    })
}

/// Decides whether `p` has a b-precolouring extension and builds one.
///
/// The returned colouring extends `p`, is a tight b-colouring, and every
/// colour class with two or more boundary vertices avoids the boundary
/// vertices outside `S'`.
pub fn extend_partial(p: &PartialBColouring<'_>) -> Result<Colouring, NoExtension> {
    let g = p.graph;
    let part = p.partition();
    debug_assert!(part.t1.iter().all(|u| !part.t_prime.contains(u)));
    let mut col: Vec<u32> = p.colours.iter().map(|c| c.unwrap_or(0)).collect();

    if part.t2.is_empty() {
        if !part.s.is_empty() {
            return Err(NoExtension::UncolouredBoundary);
        }
    } else {
        if part.t2.len() != part.s.len() {
            return Err(NoExtension::SideMismatch {
                t2: part.t2.len(),
                s: part.s.len(),
            });
        }
        let k = part.t2.len();
        let mut witnesses = part.t2.clone();
        witnesses.extend_from_slice(&part.t_prime);
        let mut star = Graph::empty(2 * k);
        for (i, &u) in part.t2.iter().enumerate() {
            for (j, &s) in part.s.iter().enumerate() {
                if g.has_edge(u, s) {
                    continue;
                }
                let common = witnesses
                    .iter()
                    .any(|&w| w != u && g.has_edge(w, u) && g.has_edge(w, s));
                if !common {
                    star.add_edge(i, k + j).expect("indices in range");
                }
            }
        }
        let left: Vec<usize> = (0..k).collect();
        let right: Vec<usize> = (k..2 * k).collect();
        let m = max_bipartite_matching(&star, &left, &right)
            .expect("sides partition the pairing graph");
        if m.len() != k {
            return Err(NoExtension::NoPerfectMatching);
        }
        for &(i, j) in &m.pairs {
            col[part.s[j - k]] = col[part.t2[i]];
        }
    }
    greedy_complete(g, &mut col, p.analysis.m);
    let c = Colouring::new(col).expect("dense vertices use every colour");
    debug_assert!(is_tight_b_colouring(g, &c).unwrap_or(false));
    Ok(c)
}

/// Colours every uncoloured vertex in index order with its least free colour.
fn greedy_complete(g: &Graph, col: &mut [u32], m: usize) {
    for v in 0..g.n() {
        if col[v] != 0 {
            continue;
        }
        let mut taken = vec![false; m + 2];
        for w in g.neighbors(v) {
            if (col[w] as usize) <= m {
                taken[col[w] as usize] = true;
            }
        }
        col[v] = (1..=m as u32)
            .find(|&c| !taken[c as usize])
            .expect("non-dense vertices have degree at most m-2");
    }
}

/// Tight b-colouring of a tight `(2P2+P1)`-free graph, or `None` if there is none.
pub fn tight_b_2p2p1_free(g: &Graph) -> Result<Option<Colouring>, TightError> {
    let a = analyze_tight(g);
    if !a.is_tight {
        return Err(TightError::NotTight);
    }
    let h: PatternName = "2P2+P1".parse().expect("valid pattern");
    if !is_free_of(g, &h.graph()) {
        return Err(TightError::NotFree(h.to_string()));
    }
    Ok(solve_2p2p1(g, &a))
}

fn solve_2p2p1(g: &Graph, a: &TightAnalysis) -> Option<Colouring> {
    let n = g.n();
    let mut colours: Vec<Option<u32>> = vec![None; n];
    for (i, &u) in a.dense.iter().enumerate() {
        colours[u] = Some(i as u32 + 1);
    }
    // Forcing rule: s must share the colour of u when T(u,s) is nonempty and
    // complete to the rest of T minus u. With T(u,s) empty, every dense
    // neighbour of s also sees u, so s can never take the colour of u.
    // Different u carry different colours, so a second forcing of the same s
    // is always a conflict.
    let mut forced: Vec<Option<u32>> = vec![None; n];
    for &u in &a.dense {
        for &s in &a.boundary {
            if g.has_edge(u, s) {
                continue;
            }
            let tus: Vec<usize> = a
                .dense
                .iter()
                .copied()
                .filter(|&x| g.has_edge(s, x) && !g.has_edge(u, x))
                .collect();
            let complete = tus.iter().all(|&x| {
                a.dense
                    .iter()
                    .filter(|&&y| y != u && !tus.contains(&y))
                    .all(|&y| g.has_edge(x, y))
            });
            if tus.is_empty() || !complete {
                continue;
            }
            if forced[s].is_some() {
                return None;
            }
            forced[s] = colours[u];
        }
    }
    let s_prime: Vec<usize> = (0..n).filter(|&s| forced[s].is_some()).collect();
    for &s in &s_prime {
        colours[s] = forced[s];
    }
    let p = validate_partial(g, &s_prime, &colours).ok()?;
    extend_partial(&p).ok()
}

/// Tight b-colouring of a tight `(P3+P1)`-free graph, or `None` if there is none.
pub fn tight_b_p3p1_free(g: &Graph) -> Result<Option<Colouring>, TightError> {
    let a = analyze_tight(g);
    if !a.is_tight {
        return Err(TightError::NotTight);
    }
    let h: PatternName = "P3+P1".parse().expect("valid pattern");
    if !is_free_of(g, &h.graph()) {
        return Err(TightError::NotFree(h.to_string()));
    }
    let n = g.n();
    let mut colours = vec![0u32; n];
    let mut offset = 0u32;
    for part in g.co_components() {
        let dense: Vec<usize> = part
            .iter()
            .copied()
            .filter(|v| a.dense.binary_search(v).is_ok())
            .collect();
        let sub = g.induced(&part);
        let Some(&first) = dense.first() else {
            debug_assert!(false, "every co-component of a tight graph meets T");
            return Ok(None);
        };
        let local = part
            .binary_search(&first)
            .expect("dense vertex lies in its part");
        let p = sub.degree(local);
        if dense.len() > p + 1 {
            return Ok(None);
        }
        let sa = analyze_tight(&sub);
        debug_assert!(sa.is_tight);
        debug_assert_eq!(sa.dense.iter().map(|&i| part[i]).collect::<Vec<_>>(), dense);
        let c = match olariu_kind(&sub) {
            OlariuKind::ThreeP1Free => solve_2p2p1(&sub, &sa),
            OlariuKind::CliqueUnion => Some(clique_union(&sub, &sa)),
            OlariuKind::Neither => return Err(TightError::NotFree(h.to_string())),
        };
        let Some(c) = c else {
            return Ok(None);
        };
        for (i, &v) in part.iter().enumerate() {
            colours[v] = c.colour(i) + offset;
        }
        offset += dense.len() as u32;
    }
    let c = Colouring::new(colours).expect("offsets tile 1..=m");
    debug_assert!(is_tight_b_colouring(g, &c).unwrap_or(false));
    Ok(Some(c))
}

/// Tight b-colouring of a tight disjoint union of complete graphs.
///
/// Such a graph has exactly one component of order `m`, whose vertices are
/// the dense ones; all others are smaller. Colouring each component
/// `1, 2, ...` in index order is a tight b-colouring, so the answer is
/// always yes.
pub fn tight_b_clique_union(g: &Graph) -> Result<Option<Colouring>, TightError> {
    let a = analyze_tight(g);
    if !a.is_tight {
        return Err(TightError::NotTight);
    }
    if !g.components().iter().all(|c| g.is_clique(c)) {
        return Err(TightError::NotCliqueUnion);
    }
    let c = clique_union(g, &a);
    #[cfg(debug_assertions)]
    if g.n() <= crate::oracles::MASK_LIMIT {
        let shadow = crate::oracles::tight_b_exact(g, 1_000_000).expect("graph is tight");
        debug_assert!(
            !shadow.value.is_absent(),
            "oracle disagrees on a clique union"
        );
    }
    Ok(Some(c))
}

fn clique_union(g: &Graph, a: &TightAnalysis) -> Colouring {
    let mut colours = vec![0u32; g.n()];
    for comp in g.components() {
        for (i, &v) in comp.iter().enumerate() {
            colours[v] = i as u32 + 1;
        }
    }
    let c = Colouring::new(colours).expect("the largest clique uses 1..=m");
    debug_assert_eq!(c.k(), a.m);
    c
}

/// A violated clause of the dense-vertex structure of tight b-colourings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureViolation {
    #[error("b-chromatic vertices differ from the dense set")]
    BVertices,
    #[error("class {0} does not hold exactly one dense vertex")]
    DensePerClass(u32),
    #[error("dense vertex {vertex} has {count} neighbours in class {class}")]
    NeighboursPerClass {
        vertex: usize,
        class: u32,
        count: usize,
    },
    #[error("dominating dense vertex {0} shares its class with a boundary vertex")]
    DominatingShared(usize),
}

/// Checks the three structural facts every tight b-colouring satisfies:
/// the b-chromatic vertices are the dense ones; each class has one dense
/// vertex, which sees every other class exactly once; and no dense vertex
/// dominating the dense set shares a class with a boundary vertex.
pub fn check_dense_structure(g: &Graph, c: &Colouring) -> Result<(), StructureViolation> {
    let a = analyze_tight(g);
    if c.b_chromatic_vertices(g) != a.dense {
        return Err(StructureViolation::BVertices);
    }
    for class in 1..=c.k() as u32 {
        if a.dense.iter().filter(|&&u| c.colour(u) == class).count() != 1 {
            return Err(StructureViolation::DensePerClass(class));
        }
    }
    for &u in &a.dense {
        for class in (1..=c.k() as u32).filter(|&x| x != c.colour(u)) {
            let count = g.neighbors(u).filter(|&w| c.colour(w) == class).count();
            if count != 1 {
                return Err(StructureViolation::NeighboursPerClass {
                    vertex: u,
                    class,
                    count,
                });
            }
        }
    }
    for &u in &a.dense {
        let dominating = a.dense.iter().all(|&w| w == u || g.has_edge(u, w));
        if dominating && a.boundary.iter().any(|&s| c.colour(s) == c.colour(u)) {
            return Err(StructureViolation::DominatingShared(u));
        }
    }
    Ok(())
}
