//! Hardness-reduction constructions, the witness maps between source and
//! target problems, and certificates that check both against the oracles.
//!
//! Vertex numbering is fixed so that every instance is byte-stable:
//!
//! - `bonomo`: original vertices first, then eight fresh vertices per edge
//!   in [`Graph::edges`] order (`x_uv^1..4`, then `x_vu^1..4`).
//! - `hss`, `hss3p2`: `V` (the `n` input vertices), `E` (one vertex per input
//!   edge), the three star centres, then the leaves star by star.
//! - `hss2p3`: `V`, `E`, then the cliques `A` (`m + 1`), `B` (3), `C` (`n`).
//! - `one_in_three`: clause `j` occupies `5j..5j+5` as the path
//!   `c(x) a1 c(y) a2 c(z)` in written literal order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{is_fall_colouring, is_tight_b_colouring, Colouring};
use crate::formula::Formula33;
use crate::graph::{analyze_tight, named, Graph};
use crate::oracles::{
    b_chromatic_number, fall_spectrum, min_maximal_matching_size, one_in_three_sat,
    three_edge_colouring, tight_b_exact, Budget, EdgeColouring, OracleError, Outcome,
};
use crate::pattern::{is_free_of, PatternName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("input graph is not bipartite")]
    NotBipartite,
    #[error("input graph is not cubic")]
    NotCubic,
    #[error("input graph contains a triangle")]
    HasTriangle,
    #[error("assignment does not make exactly one literal per clause true")]
    NotOneInThree,
    #[error("edge colouring is not a proper 3-edge-colouring of the input")]
    InvalidEdgeColouring,
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("{family} needs n >= {min}, got {n}")]
    FamilyRange {
        family: Family,
        n: usize,
        min: usize,
    },
    #[error("{kind} expects a {expected} as input")]
    InputKind {
        kind: ReductionKind,
        expected: &'static str,
    },
    #[error("mapped colouring failed validation")]
    MappedWitness,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn pattern(name: &str) -> Graph {
    name.parse::<PatternName>()
        .expect("built-in pattern")
        .graph()
}

// ---------------------------------------------------------------------------
// Example families

/// Small example families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `K_{n,n}` minus a perfect matching.
    KnnMinusPm,
    /// `K_{n,n-1}` minus a matching of size `n - 1`.
    KnnOneMinusM,
    Complete,
    Cycle,
    Star,
    Paw,
    Petersen,
}

const FAMILIES: [(Family, &str); 7] = [
    (Family::KnnMinusPm, "knn_minus_pm"),
    (Family::KnnOneMinusM, "knn1_minus_m"),
    (Family::Complete, "complete"),
    (Family::Cycle, "cycle"),
    (Family::Star, "star"),
    (Family::Paw, "paw"),
    (Family::Petersen, "petersen"),
];

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = FAMILIES.iter().find(|(x, _)| x == self).map(|(_, s)| *s);
        f.write_str(name.unwrap_or("?"))
    }
}

impl FromStr for Family {
    type Err = GadgetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FAMILIES
            .iter()
            .find(|(_, name)| *name == s)
            .map(|(f, _)| *f)
            .ok_or_else(|| GadgetError::Unknown {
                what: "family",
                name: s.to_string(),
            })
    }
}

/// Member of `family` with parameter `n`. `paw` and `petersen` ignore `n`.
pub fn family(family: Family, n: usize) -> Result<Graph, GadgetError> {
    let min = match family {
        Family::Cycle => 3,
        Family::Paw | Family::Petersen => 0,
        _ => 2,
    };
    if n < min {
        return Err(GadgetError::FamilyRange { family, n, min });
    }
    Ok(match family {
        Family::KnnMinusPm => bipartite_minus_matching(n, n, n),
        Family::KnnOneMinusM => bipartite_minus_matching(n, n - 1, n - 1),
        Family::Complete => named::complete(n),
        Family::Cycle => named::cycle(n),
        Family::Star => named::star(n),
        Family::Paw => named::paw(),
        Family::Petersen => named::petersen(),
    })
}

/// `K_{a,b}` on parts `0..a`, `a..a+b` without the edges `i -- a+i`, `i < k`.
fn bipartite_minus_matching(a: usize, b: usize, k: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for i in 0..a {
        for j in 0..b {
            if !(i == j && i < k) {
                g.add_edge(i, a + j).expect("in range");
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Co-bipartite b-chromatic instance

/// Replaces every edge `uv` of a bipartite graph by the 10-vertex tree
/// `H_uv` and returns the complement of the union.
pub fn bonomo_instance(g: &Graph) -> Result<Graph, GadgetError> {
    Ok(bonomo_host(g)?.complement())
}

/// The bipartite, `C4`-free union `H` before complementing.
pub fn bonomo_host(g: &Graph) -> Result<Graph, GadgetError> {
    if g.bipartition().is_none() {
        return Err(GadgetError::NotBipartite);
    }
    let edges = g.edges();
    let mut h = Graph::empty(g.n() + 8 * edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        let base = g.n() + 8 * i;
        let xuv = |k: usize| base + k - 1;
        let xvu = |k: usize| base + 4 + k - 1;
        let gadget = [
            (u, xvu(1)),
            (v, xuv(1)),
            (xuv(1), xvu(1)),
            (xuv(1), xvu(2)),
            (xvu(1), xuv(2)),
            (xuv(2), xvu(3)),
            (xvu(2), xuv(3)),
            (xuv(3), xvu(4)),
            (xvu(3), xuv(4)),
        ];
        for (a, b) in gadget {
            h.add_edge(a, b).expect("in range");
        }
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Tight b-colouring instances from cubic graphs

/// Which version of the edge-colouring reduction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HssVariant {
    /// Split graph plus three stars with `n + 2` leaves.
    Hss,
    /// Stars shrunk to `n` leaves, centres joined into a triangle.
    Hss3p2,
    /// Stars replaced by the cliques `A`, `B`, `C`.
    Hss2p3,
}

impl HssVariant {
    /// Number of colours of the target tight b-colouring.
    pub fn colours(self, n: usize, m: usize) -> usize {
        match self {
            HssVariant::Hss | HssVariant::Hss3p2 => n + 3,
            HssVariant::Hss2p3 => m + n + 4,
        }
    }

    /// First vertex of the three dense vertices that must collect the edge
    /// colours (star centres, or `B`).
    fn centres(self, n: usize, m: usize) -> usize {
        match self {
            HssVariant::Hss | HssVariant::Hss3p2 => n + m,
            HssVariant::Hss2p3 => n + m + m + 1,
        }
    }
}

fn check_cubic(g: &Graph) -> Result<(usize, usize), GadgetError> {
    if !g.is_cubic() {
        return Err(GadgetError::NotCubic);
    }
    Ok((g.n(), g.edge_count()))
}

/// `V` as a clique plus `V`–`E` incidences.
fn split_part(g: &Graph, extra: usize) -> Graph {
    let (n, m) = (g.n(), g.edge_count());
    let mut h = Graph::empty(n + m + extra);
    for u in 0..n {
        for v in u + 1..n {
            h.add_edge(u, v).expect("in range");
        }
    }
    for (j, (u, v)) in g.edges().into_iter().enumerate() {
        h.add_edge(u, n + j).expect("in range");
        h.add_edge(v, n + j).expect("in range");
    }
    h
}

fn stars(g: &Graph, leaves: usize, triangle: bool) -> Result<Graph, GadgetError> {
    let (n, m) = check_cubic(g)?;
    let mut h = split_part(g, 3 + 3 * leaves);
    let centre = n + m;
    for r in 0..3 {
        for k in 0..leaves {
            h.add_edge(centre + r, centre + 3 + r * leaves + k)
                .expect("in range");
        }
    }
    if triangle {
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            h.add_edge(centre + a, centre + b).expect("in range");
        }
    }
    Ok(h)
}

/// Split graph on `V ∪ E` plus three stars with `n + 2` leaves each.
pub fn hss_instance(g: &Graph) -> Result<Graph, GadgetError> {
    stars(g, g.n() + 2, false)
}

/// As [`hss_instance`] with `n` leaves per star and a triangle on the centres.
pub fn hss_3p2_instance(g: &Graph) -> Result<Graph, GadgetError> {
    stars(g, g.n(), true)
}

/// `H[V ∪ E]` plus cliques `A` (`m + 1`), `B` (3), `C` (`n`) joined
/// `V–A`, `A–B`, `B–C`, `C–E`.
pub fn hss_2p3_instance(g: &Graph) -> Result<Graph, GadgetError> {
    let (n, m) = check_cubic(g)?;
    let mut h = split_part(g, (m + 1) + 3 + n);
    let a: Vec<usize> = (n + m..n + m + m + 1).collect();
    let b: Vec<usize> = (a[m] + 1..a[m] + 4).collect();
    let c: Vec<usize> = (b[2] + 1..b[2] + 1 + n).collect();
    let v: Vec<usize> = (0..n).collect();
    let e: Vec<usize> = (n..n + m).collect();
    for set in [&a, &b, &c] {
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                h.add_edge(x, y).expect("in range");
            }
        }
    }
    for (left, right) in [(&v, &a), (&a, &b), (&b, &c), (&c, &e)] {
        for &x in left.iter() {
            for &y in right.iter() {
                h.add_edge(x, y).expect("in range");
            }
        }
    }
    Ok(h)
}

/// Builds the instance for `variant`.
pub fn hss_variant_instance(variant: HssVariant, g: &Graph) -> Result<Graph, GadgetError> {
    match variant {
        HssVariant::Hss => hss_instance(g),
        HssVariant::Hss3p2 => hss_3p2_instance(g),
        HssVariant::Hss2p3 => hss_2p3_instance(g),
    }
}

/// Maps a 3-edge-colouring of `g` to a tight b-colouring of the instance.
///
/// `E` copies the edge colours, `u_i` takes `4 + i`; the three centres
/// (`B` for `hss2p3`) take `1, 2, 3`; `A` takes `n + 4..`, `C` takes `4..`;
/// star leaves take the colours their centre still lacks, in increasing order.
pub fn edge_colouring_to_tight_bcolouring(
    variant: HssVariant,
    g: &Graph,
    ec: &EdgeColouring,
) -> Result<Colouring, GadgetError> {
    let (n, m) = check_cubic(g)?;
    if !ec.is_valid_for(g) {
        return Err(GadgetError::InvalidEdgeColouring);
    }
    let h = hss_variant_instance(variant, g)?;
    let k = variant.colours(n, m) as u32;
    let mut c = vec![0u32; h.n()];
    for (i, x) in c.iter_mut().take(n).enumerate() {
        *x = 4 + i as u32;
    }
    for (j, &col) in ec.colours.iter().enumerate() {
        c[n + j] = col as u32;
    }
    let centre = variant.centres(n, m);
    for r in 0..3 {
        c[centre + r] = r as u32 + 1;
    }
    match variant {
        HssVariant::Hss | HssVariant::Hss3p2 => {
            let leaves = if variant == HssVariant::Hss { n + 2 } else { n };
            for r in 0..3u32 {
                let missing: Vec<u32> = (1..=k)
                    .filter(|&x| x != r + 1)
                    .filter(|&x| variant == HssVariant::Hss || x > 3)
                    .collect();
                debug_assert_eq!(missing.len(), leaves);
                for (k, &col) in missing.iter().enumerate() {
                    c[centre + 3 + r as usize * leaves + k] = col;
                }
            }
        }
        HssVariant::Hss2p3 => {
            for r in 0..=m {
                c[n + m + r] = (n + 4 + r) as u32;
            }
            for t in 0..n {
                c[centre + 3 + t] = 4 + t as u32;
            }
        }
    }
    let c = Colouring::new(c).map_err(|_| GadgetError::MappedWitness)?;
    if !is_tight_b_colouring(&h, &c).unwrap_or(false) {
        return Err(GadgetError::MappedWitness);
    }
    Ok(c)
}

/// Reads a 3-edge-colouring of `g` off a tight b-colouring of the instance:
/// each `E` vertex gets the rank of its colour among the three centre
/// colours.
pub fn tight_bcolouring_to_edge_colouring(
    variant: HssVariant,
    g: &Graph,
    c: &Colouring,
) -> Result<EdgeColouring, GadgetError> {
    let (n, m) = check_cubic(g)?;
    let centre = variant.centres(n, m);
    let mut palette: Vec<u32> = (0..3).map(|r| c.colour(centre + r)).collect();
    palette.sort_unstable();
    let colours = (0..m)
        .map(|j| {
            palette
                .iter()
                .position(|&p| p == c.colour(n + j))
                .map(|r| r as u8 + 1)
                .ok_or(GadgetError::InvalidEdgeColouring)
        })
        .collect::<Result<Vec<u8>, _>>()?;
    let ec = EdgeColouring {
        edges: g.edges(),
        colours,
    };
    if !ec.is_valid_for(g) {
        return Err(GadgetError::InvalidEdgeColouring);
    }
    Ok(ec)
}

// ---------------------------------------------------------------------------
// Fall colouring instances from 1-in-3 SAT

/// Clause paths plus one triangle per variable; returns `(G, complement(G))`.
pub fn one_in_three_graph(f: &Formula33) -> (Graph, Graph) {
    let n = f.variables();
    let mut g = Graph::empty(5 * n);
    for j in 0..n {
        for i in 0..4 {
            g.add_edge(5 * j + i, 5 * j + i + 1).expect("in range");
        }
    }
    for x in 0..n {
        let occ: Vec<usize> = f
            .occurrences(x)
            .into_iter()
            .map(|(j, pos)| literal_vertex(j, pos))
            .collect();
        for (i, &a) in occ.iter().enumerate() {
            for &b in &occ[i + 1..] {
                g.add_edge(a, b).expect("in range");
            }
        }
    }
    let gbar = g.complement();
    (g, gbar)
}

/// Vertex of `G` for literal position `pos` of clause `j`.
pub fn literal_vertex(clause: usize, pos: usize) -> usize {
    5 * clause + 2 * pos
}

/// Fall colouring of `complement(G)` with `7n/3` colours built from a 1-in-3
/// assignment.
///
/// True variables' triangles become 3-classes. In every clause `a1` is
/// paired with its first adjacent false literal and `a2` with the remaining
/// false literal.
pub fn assignment_to_fall_colouring(f: &Formula33, a: &[bool]) -> Result<Colouring, GadgetError> {
    if !f.is_one_in_three(a).unwrap_or(false) {
        return Err(GadgetError::NotOneInThree);
    }
    let n = f.variables();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in (0..n).filter(|&x| a[x]) {
        classes.push(
            f.occurrences(x)
                .into_iter()
                .map(|(j, pos)| literal_vertex(j, pos))
                .collect(),
        );
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        let t = clause.iter().position(|&x| a[x]).expect("one true literal");
        let (first, second) = match t {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        classes.push(vec![5 * j + 1, literal_vertex(j, first)]);
        classes.push(vec![5 * j + 3, literal_vertex(j, second)]);
    }
    let c = Colouring::from_classes(5 * n, &classes).map_err(|_| GadgetError::MappedWitness)?;
    let (_, gbar) = one_in_three_graph(f);
    if !is_fall_colouring(&gbar, &c).unwrap_or(false) {
        return Err(GadgetError::MappedWitness);
    }
    Ok(c)
}

/// Reads an assignment off a fall colouring of `complement(G)`: a variable
/// is true when its triangle is a colour class.
pub fn fall_colouring_to_assignment(
    f: &Formula33,
    c: &Colouring,
) -> Result<Vec<bool>, GadgetError> {
    let n = f.variables();
    let a: Vec<bool> = (0..n)
        .map(|x| {
            let occ: Vec<usize> = f
                .occurrences(x)
                .into_iter()
                .map(|(j, pos)| literal_vertex(j, pos))
                .collect();
            let col = c.colour(occ[0]);
            occ.iter().all(|&v| c.colour(v) == col)
                && c.as_slice().iter().filter(|&&k| k == col).count() == 3
        })
        .collect();
    if !f.is_one_in_three(&a).unwrap_or(false) {
        return Err(GadgetError::NotOneInThree);
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Disjoint-union wrappers

/// Which fixed gadget [`fall_trick_union`] adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnionKind {
    /// Triangle-free 10-vertex graph with fall spectrum `{3}`.
    C3Free,
    /// `K3`, the line graph of the claw.
    Line,
}

/// Edges of the stored triangle-free gadget. Found by search over random
/// triangle-free graphs on 10 vertices and certified by the fall oracle to
/// have spectrum exactly `{3}` (the Petersen graph, tried first, has none).
pub const C3_FREE_GADGET_EDGES: [(usize, usize); 15] = [
    (0, 2),
    (0, 4),
    (0, 8),
    (1, 2),
    (1, 7),
    (1, 8),
    (1, 9),
    (2, 5),
    (3, 4),
    (3, 6),
    (3, 9),
    (4, 7),
    (5, 6),
    (5, 7),
    (6, 8),
];

pub fn union_gadget(kind: UnionKind) -> Graph {
    match kind {
        UnionKind::C3Free => Graph::from_edges(10, &C3_FREE_GADGET_EDGES).expect("valid fixture"),
        UnionKind::Line => named::complete(3),
    }
}

/// `g` followed by the gadget, so that the union has fall spectrum
/// `F(g) ∩ {3}`.
pub fn fall_trick_union(g: &Graph, kind: UnionKind) -> Result<Graph, GadgetError> {
    if kind == UnionKind::C3Free && g.clique_number() >= 3 {
        return Err(GadgetError::HasTriangle);
    }
    Ok(g.disjoint_union(&union_gadget(kind)))
}

// ---------------------------------------------------------------------------
// Certificates

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    Bonomo,
    Hss,
    Hss3p2,
    Hss2p3,
    OneInThree,
    FallC3Free,
    FallLine,
}

const KINDS: [(ReductionKind, &str); 7] = [
    (ReductionKind::Bonomo, "bonomo"),
    (ReductionKind::Hss, "hss"),
    (ReductionKind::Hss3p2, "hss3p2"),
    (ReductionKind::Hss2p3, "hss2p3"),
    (ReductionKind::OneInThree, "one_in_three"),
    (ReductionKind::FallC3Free, "fall_c3free"),
    (ReductionKind::FallLine, "fall_line"),
];

impl ReductionKind {
    pub fn all() -> impl Iterator<Item = ReductionKind> {
        KINDS.iter().map(|(k, _)| *k)
    }

    /// Whether the input is a formula rather than a graph.
    pub fn takes_formula(self) -> bool {
        self == ReductionKind::OneInThree
    }

    fn hss(self) -> Option<HssVariant> {
        match self {
            ReductionKind::Hss => Some(HssVariant::Hss),
            ReductionKind::Hss3p2 => Some(HssVariant::Hss3p2),
            ReductionKind::Hss2p3 => Some(HssVariant::Hss2p3),
            _ => None,
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = KINDS.iter().find(|(k, _)| k == self).map(|(_, s)| *s);
        f.write_str(name.unwrap_or("?"))
    }
}

impl FromStr for ReductionKind {
    type Err = GadgetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('-', "_");
        KINDS
            .iter()
            .find(|(_, name)| *name == s)
            .map(|(k, _)| *k)
            .ok_or_else(|| GadgetError::Unknown {
                what: "reduction",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum ReductionInput {
    Graph(Graph),
    Formula(Formula33),
}

impl ReductionInput {
    fn summary(&self) -> String {
        match self {
            ReductionInput::Graph(g) => format!("graph n={} m={}", g.n(), g.edge_count()),
            ReductionInput::Formula(f) => format!("formula n={}", f.variables()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralCheck {
    pub name: String,
    pub pass: bool,
}

fn check(name: &str, pass: bool) -> StructuralCheck {
    StructuralCheck {
        name: name.to_string(),
        pass,
    }
}

/// A constructed instance with its structural checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub instance: Graph,
    pub checks: Vec<StructuralCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum Witness {
    Colouring(Colouring),
    EdgeColouring(EdgeColouring),
    Assignment(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measurement {
    Count(u64),
    Values(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    /// Both sides solved and they agree.
    Verified,
    /// No instance-side solve was attempted.
    StructuralOnly,
    /// A solve ran out of budget.
    Inconclusive,
    /// Both sides solved and they disagree.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub kind: ReductionKind,
    pub input: ReductionInput,
    pub input_summary: String,
    pub instance: Graph,
    pub structural_checks: Vec<StructuralCheck>,
    /// Answer of the source problem on the input.
    pub source_answer: Option<bool>,
    /// Source witness mapped onto the instance.
    pub forward_witness: Option<Witness>,
    /// Answer of the target problem on the instance.
    pub instance_answer: Option<bool>,
    /// Instance witness mapped back to the input.
    pub backward_witness: Option<Witness>,
    pub measurements: BTreeMap<String, Measurement>,
    pub equivalence_status: Equivalence,
}

impl ReductionCertificate {
    pub fn checks_pass(&self) -> bool {
        self.structural_checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Size limits for the chromatic, b-chromatic and fall oracles.
    pub budget: Budget,
    /// Node limit for the source-side solve.
    pub source_nodes: u64,
    /// Node limit for the instance-side tight b-colouring search.
    pub instance_nodes: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: Budget::default(),
            source_nodes: 10_000_000,
            instance_nodes: 10_000_000,
        }
    }
}

fn want_graph(kind: ReductionKind, input: &ReductionInput) -> Result<&Graph, GadgetError> {
    match input {
        ReductionInput::Graph(g) => Ok(g),
        _ => Err(GadgetError::InputKind {
            kind,
            expected: "graph",
        }),
    }
}

fn want_formula(kind: ReductionKind, input: &ReductionInput) -> Result<&Formula33, GadgetError> {
    match input {
        ReductionInput::Formula(f) => Ok(f),
        _ => Err(GadgetError::InputKind {
            kind,
            expected: "formula",
        }),
    }
}

/// Builds the instance for `kind` and runs its structural checks.
pub fn construct(kind: ReductionKind, input: &ReductionInput) -> Result<Construction, GadgetError> {
    if let Some(variant) = kind.hss() {
        let g = want_graph(kind, input)?;
        let h = hss_variant_instance(variant, g)?;
        return Ok(Construction {
            checks: hss_checks(variant, g, &h),
            instance: h,
        });
    }
    match kind {
        ReductionKind::Bonomo => {
            let g = want_graph(kind, input)?;
            let host = bonomo_host(g)?;
            let instance = host.complement();
            let checks = vec![
                check("host_bipartite", host.bipartition().is_some()),
                check("host_c4_free", is_free_of(&host, &pattern("C4"))),
                check("instance_3p1_free", is_free_of(&instance, &pattern("3P1"))),
                check("instance_2p2_free", is_free_of(&instance, &pattern("2P2"))),
            ];
            Ok(Construction { instance, checks })
        }
        ReductionKind::OneInThree => {
            let f = want_formula(kind, input)?;
            let (g, gbar) = one_in_three_graph(f);
            let mut checks = vec![
                check("vertex_count_5n", g.n() == 5 * f.variables()),
                check("clique_number_3", g.clique_number() == 3),
            ];
            for p in ["C5", "2P2", "P2+2P1", "4P1"] {
                let name = format!("instance_{}_free", p.to_lowercase().replace('+', "_"));
                checks.push(check(&name, is_free_of(&gbar, &pattern(p))));
            }
            Ok(Construction {
                instance: gbar,
                checks,
            })
        }
        ReductionKind::FallC3Free | ReductionKind::FallLine => {
            let g = want_graph(kind, input)?;
            let uk = if kind == ReductionKind::FallC3Free {
                UnionKind::C3Free
            } else {
                UnionKind::Line
            };
            let instance = fall_trick_union(g, uk)?;
            let mut checks = vec![check(
                "instance_vertex_count",
                instance.n() == g.n() + union_gadget(uk).n(),
            )];
            if uk == UnionKind::C3Free {
                checks.push(check("instance_c3_free", instance.clique_number() < 3));
            }
            Ok(Construction { instance, checks })
        }
        _ => unreachable!("hss variants handled above"),
    }
}

fn hss_checks(variant: HssVariant, g: &Graph, h: &Graph) -> Vec<StructuralCheck> {
    let (n, m) = (g.n(), g.edge_count());
    let a = analyze_tight(h);
    let v: Vec<usize> = (0..n).collect();
    let e: Vec<usize> = (n..n + m).collect();
    let mut checks = vec![
        check("m_degree", a.m == variant.colours(n, m)),
        check("tight", a.is_tight),
    ];
    match variant {
        HssVariant::Hss => {
            checks.push(check("split_v_e", h.is_clique(&v) && h.is_independent(&e)));
        }
        HssVariant::Hss3p2 => {
            checks.push(check("3p2_free", is_free_of(h, &pattern("3P2"))));
        }
        HssVariant::Hss2p3 => {
            let (lo, hi) = (n + m, n + m + m + 1 + 3);
            let table = (0..h.n()).all(|x| {
                let want = if x < n || (lo..hi).contains(&x) {
                    m + n + 3
                } else if x >= hi {
                    m + n + 2
                } else {
                    n + 2
                };
                h.degree(x) == want
            });
            checks.push(check("degree_table", table));
            checks.push(check("2p3_free", is_free_of(h, &pattern("2P3"))));
        }
    }
    checks
}

fn status(source: Option<bool>, instance: Option<bool>, attempted: bool) -> Equivalence {
    match (source, instance) {
        (Some(s), Some(t)) if s == t => Equivalence::Verified,
        (Some(_), Some(_)) => Equivalence::Inconsistent,
        _ if !attempted => Equivalence::StructuralOnly,
        _ => Equivalence::Inconclusive,
    }
}

fn budget_skip(e: OracleError) -> Result<(), GadgetError> {
    match e {
        OracleError::TooLarge { .. } | OracleError::NodeLimit { .. } => Ok(()),
        e => Err(e.into()),
    }
}

/// Constructs the instance, runs its structural checks, and then solves
/// both sides as far as the budgets allow.
///
/// The source side is solved with the 3-edge-colouring, 1-in-3 SAT or fall
/// oracle and its witness mapped forward. The instance side is solved with
/// the tight b-colouring or fall oracle and its witness mapped back. The
/// `bonomo` kind only records oracle measurements.
pub fn verify_reduction(
    kind: ReductionKind,
    input: &ReductionInput,
    opts: &VerifyOptions,
) -> Result<ReductionCertificate, GadgetError> {
    let Construction { instance, checks } = construct(kind, input)?;
    let mut cert = ReductionCertificate {
        kind,
        input: input.clone(),
        input_summary: input.summary(),
        instance,
        structural_checks: checks,
        source_answer: None,
        forward_witness: None,
        instance_answer: None,
        backward_witness: None,
        measurements: BTreeMap::new(),
        equivalence_status: Equivalence::StructuralOnly,
    };
    let mut attempted = false;
    if let Some(variant) = kind.hss() {
        let g = want_graph(kind, input)?;
        match three_edge_colouring(g, opts.source_nodes) {
            Ok(r) => {
                cert.measurements
                    .insert("source_nodes".into(), Measurement::Count(r.nodes));
                cert.source_answer = Some(r.value.is_some());
                if let Some(ec) = r.value {
                    let c = edge_colouring_to_tight_bcolouring(variant, g, &ec)?;
                    cert.forward_witness = Some(Witness::Colouring(c));
                }
            }
            Err(e) => budget_skip(e)?,
        }
        if cert.instance.n() <= crate::oracles::MASK_LIMIT {
            attempted = true;
            let r = tight_b_exact(&cert.instance, opts.instance_nodes)?;
            cert.measurements
                .insert("instance_nodes".into(), Measurement::Count(r.nodes));
            match r.value {
                Outcome::Found(c) => {
                    cert.instance_answer = Some(true);
                    let ec = tight_bcolouring_to_edge_colouring(variant, g, &c)?;
                    cert.backward_witness = Some(Witness::EdgeColouring(ec));
                }
                Outcome::Absent => cert.instance_answer = Some(false),
                Outcome::Inconclusive => {}
            }
        }
    } else {
        match kind {
            ReductionKind::Bonomo => {
                let g = want_graph(kind, input)?;
                match min_maximal_matching_size(g, opts.source_nodes) {
                    Ok(s) => {
                        cert.measurements
                            .insert("min_maximal_matching".into(), Measurement::Count(s as u64));
                    }
                    Err(e) => budget_skip(e)?,
                }
                match b_chromatic_number(&cert.instance, &opts.budget) {
                    Ok(r) => {
                        cert.measurements.insert(
                            "b_chromatic_number".into(),
                            Measurement::Count(r.value.0 as u64),
                        );
                    }
                    Err(e) => budget_skip(e)?,
                }
            }
            ReductionKind::OneInThree => {
                let f = want_formula(kind, input)?;
                let n = f.variables();
                let target = (n % 3 == 0).then_some(7 * n / 3);
                match one_in_three_sat(f, opts.source_nodes) {
                    Ok(r) => {
                        cert.source_answer = Some(r.value.is_some());
                        if let Some(a) = r.value {
                            let c = assignment_to_fall_colouring(f, &a)?;
                            cert.forward_witness = Some(Witness::Colouring(c));
                        }
                    }
                    Err(e) => budget_skip(e)?,
                }
                match fall_spectrum(&cert.instance, &opts.budget) {
                    Ok(r) => {
                        attempted = true;
                        let spec = r.value;
                        cert.measurements.insert(
                            "fall_spectrum".into(),
                            Measurement::Values(spec.values.clone()),
                        );
                        let yes = target.is_some() && spec.values == [target.unwrap()];
                        cert.instance_answer = Some(yes);
                        if yes {
                            let a = fall_colouring_to_assignment(f, &spec.witnesses[0])?;
                            cert.backward_witness = Some(Witness::Assignment(a));
                        }
                    }
                    Err(e) => {
                        attempted = matches!(e, OracleError::NodeLimit { .. });
                        budget_skip(e)?;
                    }
                }
            }
            ReductionKind::FallC3Free | ReductionKind::FallLine => {
                let g = want_graph(kind, input)?;
                let gadget = &cert
                    .instance
                    .induced(&(g.n()..cert.instance.n()).collect::<Vec<_>>());
                match fall_spectrum(g, &opts.budget) {
                    Ok(r) => {
                        let spec = r.value;
                        cert.measurements.insert(
                            "input_fall_spectrum".into(),
                            Measurement::Values(spec.values.clone()),
                        );
                        let pos = spec.values.iter().position(|&k| k == 3);
                        cert.source_answer = Some(pos.is_some());
                        if let Some(i) = pos {
                            let gadget_c = fall_spectrum(gadget, &Budget::unlimited())?.value;
                            let j = gadget_c.values.iter().position(|&k| k == 3);
                            let j = j.ok_or(GadgetError::MappedWitness)?;
                            let mut labels = spec.witnesses[i].as_slice().to_vec();
                            labels.extend_from_slice(gadget_c.witnesses[j].as_slice());
                            let c =
                                Colouring::new(labels).map_err(|_| GadgetError::MappedWitness)?;
                            if !is_fall_colouring(&cert.instance, &c).unwrap_or(false) {
                                return Err(GadgetError::MappedWitness);
                            }
                            cert.forward_witness = Some(Witness::Colouring(c));
                        }
                    }
                    Err(e) => budget_skip(e)?,
                }
                match fall_spectrum(&cert.instance, &opts.budget) {
                    Ok(r) => {
                        attempted = true;
                        let spec = r.value;
                        cert.measurements.insert(
                            "instance_fall_spectrum".into(),
                            Measurement::Values(spec.values.clone()),
                        );
                        let yes = spec.values == [3];
                        cert.instance_answer = Some(yes);
                        if yes {
                            let labels = spec.witnesses[0].as_slice()[..g.n()].to_vec();
                            let c =
                                Colouring::new(labels).map_err(|_| GadgetError::MappedWitness)?;
                            if !is_fall_colouring(g, &c).unwrap_or(false) {
                                return Err(GadgetError::MappedWitness);
                            }
                            cert.backward_witness = Some(Witness::Colouring(c));
                        }
                    }
                    Err(e) => {
                        attempted = matches!(e, OracleError::NodeLimit { .. });
                        budget_skip(e)?;
                    }
                }
            }
            _ => unreachable!("hss variants handled above"),
        }
    }
    cert.equivalence_status = status(cert.source_answer, cert.instance_answer, attempted);
    Ok(cert)
}

/// Re-derives everything a certificate claims: the instance matches a fresh
/// construction from the stored input, the structural checks pass, and
/// both witnesses validate on their side of the reduction.
pub fn audit_certificate(cert: &ReductionCertificate) -> Result<Vec<StructuralCheck>, GadgetError> {
    let fresh = construct(cert.kind, &cert.input)?;
    let mut out = vec![
        check("instance_matches_input", fresh.instance == cert.instance),
        check(
            "structural_checks_recomputed",
            fresh.checks == cert.structural_checks,
        ),
    ];
    out.extend(fresh.checks);
    let h = &cert.instance;
    if let Some(w) = &cert.forward_witness {
        let ok = match (w, &cert.input) {
            (Witness::Colouring(c), ReductionInput::Graph(g)) if cert.kind.hss().is_some() => {
                let k = HssVariant::colours(cert.kind.hss().unwrap(), g.n(), g.edge_count());
                c.k() == k && is_tight_b_colouring(h, c).unwrap_or(false)
            }
            (Witness::Colouring(c), ReductionInput::Formula(f)) => {
                c.k() * 3 == 7 * f.variables() && is_fall_colouring(h, c).unwrap_or(false)
            }
            (Witness::Colouring(c), ReductionInput::Graph(_)) => {
                cert.kind != ReductionKind::Bonomo
                    && c.k() == 3
                    && is_fall_colouring(h, c).unwrap_or(false)
            }
            _ => false,
        };
        out.push(check("forward_witness_valid", ok));
    }
    if let Some(w) = &cert.backward_witness {
        let ok = match (w, &cert.input) {
            (Witness::EdgeColouring(ec), ReductionInput::Graph(g)) => ec.is_valid_for(g),
            (Witness::Assignment(a), ReductionInput::Formula(f)) => {
                f.is_one_in_three(a).unwrap_or(false)
            }
            (Witness::Colouring(c), ReductionInput::Graph(g)) => {
                c.k() == 3 && is_fall_colouring(g, c).unwrap_or(false)
            }
            _ => false,
        };
        out.push(check("backward_witness_valid", ok));
    }
    out.push(check(
        "directions_consistent",
        cert.equivalence_status != Equivalence::Inconsistent,
    ));
    Ok(out)
}
