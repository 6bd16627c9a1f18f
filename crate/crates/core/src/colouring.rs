//! Vertex colourings with 1-based colours and the b-/fall-/tight validators.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{analyze_tight, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("colouring has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("colour 0 at vertex {0}; colours are 1-based")]
    ZeroColour(usize),
    #[error("colour {0} is unused although a larger colour appears")]
    GapInColours(u32),
    #[error("edge {u}-{v} is monochromatic (colour {colour})")]
    Improper { u: usize, v: usize, colour: u32 },
}

/// Total map vertex -> colour in `1..=k` with every colour used.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Colouring {
    colours: Vec<u32>,
    k: u32,
}

impl TryFrom<Vec<u32>> for Colouring {
    type Error = ColouringError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Colouring::new(v)
    }
}

impl From<Colouring> for Vec<u32> {
    fn from(c: Colouring) -> Self {
        c.colours
    }
}

impl Colouring {
    pub fn new(colours: Vec<u32>) -> Result<Self, ColouringError> {
        if let Some(v) = colours.iter().position(|&c| c == 0) {
            return Err(ColouringError::ZeroColour(v));
        }
        let k = colours.iter().copied().max().unwrap_or(0);
        let mut used = vec![false; k as usize + 1];
        for &c in &colours {
            used[c as usize] = true;
        }
        if let Some(gap) = (1..=k).find(|&c| !used[c as usize]) {
            return Err(ColouringError::GapInColours(gap));
        }
        Ok(Colouring { colours, k })
    }

    /// Relabels arbitrary positive labels onto `1..=k` in order of first use.
    pub fn normalized(labels: &[u32]) -> Self {
        let mut map = std::collections::HashMap::new();
        let colours = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32 + 1;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Colouring::new(colours).expect("normalised labels are contiguous")
    }

    /// Builds a colouring from a list of classes; class `i` gets colour `i + 1`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self, ColouringError> {
        let mut colours = vec![0; n];
        for (i, class) in classes.iter().enumerate() {
            for &v in class {
                colours[v] = i as u32 + 1;
            }
        }
        Colouring::new(colours)
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colours
    }

    /// Colour classes; entry `i` holds colour `i + 1`, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k as usize];
        for (v, &c) in self.colours.iter().enumerate() {
            out[c as usize - 1].push(v);
        }
        out
    }

    /// Checks length and properness against `g`.
    pub fn check_proper(&self, g: &Graph) -> Result<(), ColouringError> {
        if self.colours.len() != g.n() {
            return Err(ColouringError::LengthMismatch {
                expected: g.n(),
                got: self.colours.len(),
            });
        }
        for (u, v) in g.edges() {
            if self.colours[u] == self.colours[v] {
                return Err(ColouringError::Improper {
                    u,
                    v,
                    colour: self.colours[u],
                });
            }
        }
        Ok(())
    }

    /// Whether `v` sees every colour other than its own.
    pub fn is_b_chromatic(&self, g: &Graph, v: usize) -> bool {
        let mut seen = vec![false; self.k as usize + 1];
        for w in g.neighbors(v) {
            seen[self.colours[w] as usize] = true;
        }
        (1..=self.k).all(|c| c == self.colours[v] || seen[c as usize])
    }

    pub fn b_chromatic_vertices(&self, g: &Graph) -> Vec<usize> {
        (0..g.n()).filter(|&v| self.is_b_chromatic(g, v)).collect()
    }
}

/// Every colour class contains a b-chromatic vertex.
pub fn is_b_colouring(g: &Graph, c: &Colouring) -> Result<bool, ColouringError> {
    c.check_proper(g)?;
    let mut has_b = vec![false; c.k() + 1];
    for v in c.b_chromatic_vertices(g) {
        has_b[c.colour(v) as usize] = true;
    }
    Ok((1..=c.k()).all(|i| has_b[i]))
}

/// Every vertex is b-chromatic, i.e. every class is an independent
/// dominating set.
pub fn is_fall_colouring(g: &Graph, c: &Colouring) -> Result<bool, ColouringError> {
    c.check_proper(g)?;
    Ok((0..g.n()).all(|v| c.is_b_chromatic(g, v)))
}

/// A b-colouring with exactly `m(G)` colours on a tight graph.
pub fn is_tight_b_colouring(g: &Graph, c: &Colouring) -> Result<bool, ColouringError> {
    let a = analyze_tight(g);
    Ok(a.is_tight && c.k() == a.m && is_b_colouring(g, c)?)
}

/// Whether `set` is a maximal independent set of `g`.
pub fn is_maximal_independent(g: &Graph, set: &[usize]) -> bool {
    if !g.is_independent(set) {
        return false;
    }
    (0..g.n())
        .filter(|v| !set.contains(v))
        .all(|v| set.iter().any(|&s| g.has_edge(s, v)))
}
