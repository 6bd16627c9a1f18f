//! Induced-subgraph detection for small fixed patterns, the co-component
//! split used for `(P3+P1)`-free graphs, and the H-free dichotomy
//! classifiers for the three colouring problems.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{named, Graph};

/// Connected building block of a pattern expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Paw,
}

impl Atom {
    fn order(self) -> usize {
        match self {
            Atom::Path(r) | Atom::Cycle(r) | Atom::Complete(r) => r,
            Atom::Star(r) => r.saturating_add(1),
            Atom::Paw => 4,
        }
    }

    fn graph(self) -> Graph {
        match self {
            Atom::Path(r) => named::path(r),
            Atom::Cycle(r) => named::cycle(r),
            Atom::Complete(r) => named::complete(r),
            Atom::Star(r) => named::star(r),
            Atom::Paw => named::paw(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Path(r) => write!(f, "P{r}"),
            Atom::Cycle(r) => write!(f, "C{r}"),
            Atom::Complete(r) => write!(f, "K{r}"),
            Atom::Star(3) => write!(f, "claw"),
            Atom::Star(r) => write!(f, "K1,{r}"),
            Atom::Paw => write!(f, "paw"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse pattern `{input}`: {reason}")]
pub struct PatternParseError {
    pub input: String,
    pub reason: &'static str,
}

/// A named pattern: a disjoint union `c1*A1 + c2*A2 + ...` of atoms.
///
/// Parses and prints the usual notation (`2P2+P1`, `P3+P1`, `claw`, `C5`,
/// `K1,3`, `4P1`), so new patterns need no code beyond the atom table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternName {
    terms: Vec<(usize, Atom)>,
}

/// Atom spellings accepted by the parser, matched case-sensitively after
/// the multiplicity prefix.
const ATOM_WORDS: &[(&str, Atom)] = &[("claw", Atom::Star(3)), ("paw", Atom::Paw)];

impl PatternName {
    pub fn new(terms: Vec<(usize, Atom)>) -> Self {
        let mut terms: Vec<(usize, Atom)> = terms.into_iter().filter(|t| t.0 > 0).collect();
        // Larger atoms first, so `P1` terms trail as in `P4+2P1`.
        terms.sort_by_key(|t| std::cmp::Reverse(t.1));
        let mut merged: Vec<(usize, Atom)> = Vec::new();
        for (c, a) in terms {
            match merged.last_mut() {
                Some((mc, ma)) if *ma == a => *mc += c,
                _ => merged.push((c, a)),
            }
        }
        PatternName { terms: merged }
    }

    pub fn atom(a: Atom) -> Self {
        PatternName::new(vec![(1, a)])
    }

    /// `P_r`.
    pub fn path(r: usize) -> Self {
        PatternName::atom(Atom::Path(r))
    }

    /// `k P_1`.
    pub fn independent(k: usize) -> Self {
        PatternName::new(vec![(k, Atom::Path(1))])
    }

    /// Linear forest from path lengths, e.g. `[3, 1]` is `P3+P1`.
    pub fn linear_forest(paths: &[usize]) -> Self {
        PatternName::new(paths.iter().map(|&r| (1, Atom::Path(r))).collect())
    }

    pub fn terms(&self) -> &[(usize, Atom)] {
        &self.terms
    }

    /// The concrete pattern graph.
    pub fn graph(&self) -> Graph {
        let parts: Vec<Graph> = self
            .terms
            .iter()
            .flat_map(|&(c, a)| std::iter::repeat_n(a.graph(), c))
            .collect();
        named::sum(&parts)
    }
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *c > 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternName {
    type Err = PatternParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| PatternParseError {
            input: s.to_string(),
            reason,
        };
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let term: String = raw
                .chars()
                .filter(|c| !c.is_whitespace() && *c != '_')
                .collect();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let count = if digits == 0 {
                1
            } else {
                term[..digits]
                    .parse()
                    .map_err(|_| err("bad multiplicity"))?
            };
            if count == 0 {
                return Err(err("zero multiplicity"));
            }
            let body = &term[digits..];
            let atom = if let Some(&(_, a)) = ATOM_WORDS.iter().find(|(w, _)| *w == body) {
                a
            } else {
                let mut chars = body.chars();
                let kind = chars.next().ok_or_else(|| err("missing atom"))?;
                let rest: String = chars.filter(|c| *c != '{' && *c != '}').collect();
                let size = |t: &str| -> Result<usize, PatternParseError> {
                    match t.parse::<usize>() {
                        Ok(v) if (1..=64).contains(&v) => Ok(v),
                        _ => Err(err("bad atom size")),
                    }
                };
                match kind {
                    'P' => Atom::Path(size(&rest)?),
                    'C' => {
                        let r = size(&rest)?;
                        if r < 3 {
                            return Err(err("cycles need at least 3 vertices"));
                        }
                        Atom::Cycle(r)
                    }
                    'K' => match rest.split_once(',') {
                        Some(("1", r)) => Atom::Star(size(r)?),
                        Some(_) => return Err(err("only stars K1,r are supported")),
                        None => Atom::Complete(size(&rest)?),
                    },
                    _ => return Err(err("unknown atom")),
                }
            };
            terms.push((count, atom));
        }
        let p = PatternName::new(terms);
        let order = p.terms.iter().try_fold(0usize, |acc, &(c, a)| {
            c.checked_mul(a.order())?.checked_add(acc)
        });
        if order.is_none_or(|n| n > 64) {
            return Err(err("pattern too large"));
        }
        Ok(p)
    }
}

/// Finds an induced copy of `h` in `g`.
///
/// Returns `witness` with `witness[i]` the vertex of `g` playing pattern
/// vertex `i`. Among all vertex subsets of `g` admitting an embedding the
/// lexicographically least one is reported.
///
/// Subsets are grown in increasing order and a prefix survives only while
/// its induced subgraph still embeds into `h`, so the search never visits a
/// subset whose prefix is already impossible.
pub fn contains_induced(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let k = h.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() || k > 64 {
        return None;
    }
    let hm: Vec<u64> = (0..k).map(|x| row_mask(h, x)).collect();
    let mut search = InducedSearch {
        g,
        hm,
        k,
        prefix: Vec::with_capacity(k),
    };
    let maps = vec![Vec::new()];
    search.extend(0, &maps)
}

fn row_mask(h: &Graph, x: usize) -> u64 {
    h.neighbors(x).fold(0, |m, y| m | 1 << y)
}

struct InducedSearch<'a> {
    g: &'a Graph,
    hm: Vec<u64>,
    k: usize,
    prefix: Vec<usize>,
}

impl InducedSearch<'_> {
    /// `maps` holds every injective, edge- and non-edge-preserving map of
    /// the current prefix into `h` (one `Vec<u8>` per map, indexed by
    /// prefix position).
    fn extend(&mut self, start: usize, maps: &[Vec<u8>]) -> Option<Vec<usize>> {
        let d = self.prefix.len();
        if d == self.k {
            let map = &maps[0];
            let mut witness = vec![0; self.k];
            for (i, &x) in map.iter().enumerate() {
                witness[x as usize] = self.prefix[i];
            }
            return Some(witness);
        }
        let n = self.g.n();
        for v in start..=n - (self.k - d) {
            let gbits: u64 = self
                .prefix
                .iter()
                .enumerate()
                .filter(|&(_, &p)| self.g.has_edge(p, v))
                .fold(0, |m, (i, _)| m | 1 << i);
            let mut next = Vec::new();
            for map in maps {
                let used: u64 = map.iter().fold(0, |m, &x| m | 1 << x);
                for x in 0..self.k {
                    if used >> x & 1 == 1 {
                        continue;
                    }
                    let hbits = map
                        .iter()
                        .enumerate()
                        .filter(|&(_, &y)| self.hm[x] >> y & 1 == 1)
                        .fold(0u64, |m, (i, _)| m | 1 << i);
                    if hbits == gbits {
                        let mut m2 = map.clone();
                        m2.push(x as u8);
                        next.push(m2);
                    }
                }
            }
            if next.is_empty() {
                continue;
            }
            self.prefix.push(v);
            let found = self.extend(v + 1, &next);
            self.prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// `g` has no induced copy of `h`.
pub fn is_free_of(g: &Graph, h: &Graph) -> bool {
    contains_induced(g, h).is_none()
}

/// `g` is free of every listed pattern.
pub fn is_free_of_all(g: &Graph, patterns: &[PatternName]) -> bool {
    patterns.iter().all(|p| is_free_of(g, &p.graph()))
}

/// `h ⊆ᵢ pattern`.
pub fn is_induced_subgraph_of(h: &Graph, pattern: &PatternName) -> bool {
    contains_induced(&pattern.graph(), h).is_some()
}

/// Shape of a single co-component of a `(P3+P1)`-free graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OlariuKind {
    /// Independence number at most two.
    ThreeP1Free,
    /// Contains `3P1` and every component is complete.
    CliqueUnion,
    /// Neither; the host graph was not `(P3+P1)`-free.
    Neither,
}

pub fn olariu_kind(g: &Graph) -> OlariuKind {
    if is_free_of(g, &named::empty(3)) {
        OlariuKind::ThreeP1Free
    } else if g.components().iter().all(|c| g.is_clique(c)) {
        OlariuKind::CliqueUnion
    } else {
        OlariuKind::Neither
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    BChromatic,
    TightBChromatic,
    Fall,
}

impl FromStr for Problem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "b" => Ok(Problem::BChromatic),
            "tightb" | "tight" => Ok(Problem::TightBChromatic),
            "fall" => Ok(Problem::Fall),
            _ => Err(format!(
                "unknown problem `{s}` (expected b, tightb or fall)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Complexity {
    Poly,
    NpHard,
    NpComplete,
    Open,
}

/// One of the unresolved families for tight b-colouring; `s` is the
/// number of isolated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "s", rename_all = "snake_case")]
pub enum OpenFamily {
    P4P2SP1(usize),
    P4SP1(usize),
    P3P2SP1(usize),
    P3SP1(usize),
    TwoP2SP1(usize),
    P2SP1(usize),
    SP1(usize),
}

impl fmt::Display for OpenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpenFamily::P4P2SP1(s) => write!(f, "P4+P2+sP1 (s={s})"),
            OpenFamily::P4SP1(s) => write!(f, "P4+sP1 (s={s})"),
            OpenFamily::P3P2SP1(s) => write!(f, "P3+P2+sP1 (s={s})"),
            OpenFamily::P3SP1(s) => write!(f, "P3+sP1 (s={s})"),
            OpenFamily::TwoP2SP1(s) => write!(f, "2P2+sP1 (s={s})"),
            OpenFamily::P2SP1(s) => write!(f, "P2+sP1 (s={s})"),
            OpenFamily::SP1(s) => write!(f, "sP1 (s={s})"),
        }
    }
}

/// The result that decides a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `H ⊆ᵢ P4`: P4-sparse graphs are solvable.
    P4Free,
    /// Tight b-colouring of `(2P2+P1)`-free graphs via precolouring extension.
    TwoP2PlusP1Free,
    /// Tight b-colouring of `(P3+P1)`-free graphs via co-components.
    P3PlusP1Free,
    /// Fall colouring of `(P3+P1)`-free graphs via co-components.
    FallP3PlusP1Free,
    /// Hard on bipartite (so `C3`-free) graphs.
    Bipartite,
    /// Hard on a split graph plus three stars, so `(C4,C5,P5)`-free.
    SplitPlusStars,
    /// Hard on `2P2`-free co-bipartite graphs, so `(3P1,2P2)`-free.
    CoBipartite,
    /// Hard on line graphs, so claw-free.
    LineGraphs,
    /// Hard on `3P2`-free graphs.
    ThreeP2Free,
    /// Hard on `2P3`-free graphs.
    TwoP3Free,
    /// Fall colouring hard on chordal graphs.
    Chordal,
    /// Fall colouring hard on `C3`-free graphs.
    FallC3Free,
    /// Fall colouring hard on line graphs.
    FallLineGraphs,
    /// Fall colouring hard on `(C5,2P2,P2+2P1,4P1)`-free graphs.
    OneInThree,
    Open(OpenFamily),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyVerdict {
    pub problem: Problem,
    pub complexity: Complexity,
    pub basis: Basis,
}

fn within(h: &Graph, pattern: &str) -> bool {
    is_induced_subgraph_of(h, &pattern.parse().expect("static pattern"))
}

fn contains(h: &Graph, pattern: &str) -> bool {
    let p: PatternName = pattern.parse().expect("static pattern");
    contains_induced(h, &p.graph()).is_some()
}

pub fn classify(problem: Problem, h: &Graph) -> DichotomyVerdict {
    match problem {
        Problem::BChromatic => classify_b(h),
        Problem::TightBChromatic => classify_tight(h),
        Problem::Fall => classify_fall(h),
    }
}

/// b-Chromatic Number in H-free graphs: polynomial iff `H ⊆ᵢ P4`.
pub fn classify_b(h: &Graph) -> DichotomyVerdict {
    let problem = Problem::BChromatic;
    let (complexity, basis) = if within(h, "P4") {
        (Complexity::Poly, Basis::P4Free)
    } else if contains(h, "C3") {
        (Complexity::NpHard, Basis::Bipartite)
    } else if !h.is_acyclic() {
        (Complexity::NpHard, Basis::SplitPlusStars)
    } else {
        // A forest outside P4 contains 2P2 or 3P1.
        debug_assert!(contains(h, "2P2") || contains(h, "3P1"));
        (Complexity::NpHard, Basis::CoBipartite)
    };
    DichotomyVerdict {
        problem,
        complexity,
        basis,
    }
}

/// Tight b-Chromatic Number in H-free graphs (partial classification).
pub fn classify_tight(h: &Graph) -> DichotomyVerdict {
    let problem = Problem::TightBChromatic;
    let (complexity, basis) = if within(h, "P4") {
        (Complexity::Poly, Basis::P4Free)
    } else if within(h, "2P2+P1") {
        (Complexity::Poly, Basis::TwoP2PlusP1Free)
    } else if within(h, "P3+P1") {
        (Complexity::Poly, Basis::P3PlusP1Free)
    } else if !h.is_linear_forest() {
        let basis = if contains(h, "C3") {
            Basis::Bipartite
        } else if !h.is_acyclic() {
            Basis::SplitPlusStars
        } else {
            Basis::LineGraphs
        };
        (Complexity::NpComplete, basis)
    } else if contains(h, "P5") {
        (Complexity::NpComplete, Basis::SplitPlusStars)
    } else if contains(h, "3P2") {
        (Complexity::NpComplete, Basis::ThreeP2Free)
    } else if contains(h, "2P3") {
        (Complexity::NpComplete, Basis::TwoP3Free)
    } else {
        let family = open_family(h).expect("every remaining linear forest is an open family");
        (Complexity::Open, Basis::Open(family))
    };
    DichotomyVerdict {
        problem,
        complexity,
        basis,
    }
}

/// Identifies the open family of a linear forest by its path lengths.
pub fn open_family(h: &Graph) -> Option<OpenFamily> {
    if !h.is_linear_forest() {
        return None;
    }
    let mut sizes: Vec<usize> = h.components().iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let s = sizes.iter().filter(|&&x| x == 1).count();
    let big: Vec<usize> = sizes.iter().copied().filter(|&x| x > 1).collect();
    match (big.as_slice(), s) {
        ([4, 2], s) => Some(OpenFamily::P4P2SP1(s)),
        ([4], s) if s >= 1 => Some(OpenFamily::P4SP1(s)),
        ([3, 2], s) => Some(OpenFamily::P3P2SP1(s)),
        ([3], s) if s >= 2 => Some(OpenFamily::P3SP1(s)),
        ([2, 2], s) if s >= 2 => Some(OpenFamily::TwoP2SP1(s)),
        ([2], s) if s >= 3 => Some(OpenFamily::P2SP1(s)),
        ([], s) if s >= 4 => Some(OpenFamily::SP1(s)),
        _ => None,
    }
}

/// Fall Chromatic / Achromatic Number in H-free graphs: polynomial iff
/// `H ⊆ᵢ P4` or `H ⊆ᵢ P3+P1`.
pub fn classify_fall(h: &Graph) -> DichotomyVerdict {
    let problem = Problem::Fall;
    let (complexity, basis) = if within(h, "P4") {
        (Complexity::Poly, Basis::P4Free)
    } else if within(h, "P3+P1") {
        (Complexity::Poly, Basis::FallP3PlusP1Free)
    } else if contains(h, "C3") {
        (Complexity::NpHard, Basis::FallC3Free)
    } else if !h.is_acyclic() {
        (Complexity::NpHard, Basis::Chordal)
    } else if !h.is_linear_forest() {
        (Complexity::NpHard, Basis::FallLineGraphs)
    } else {
        debug_assert!(contains(h, "2P2") || contains(h, "P2+2P1") || contains(h, "4P1"));
        (Complexity::NpHard, Basis::OneInThree)
    };
    DichotomyVerdict {
        problem,
        complexity,
        basis,
    }
}
