//! Exponential exact solvers used as ground truth.
//!
//! All oracles work on 64-bit vertex masks and so accept at most 64
//! vertices; [`Budget`] narrows that further per problem. Search effort is
//! reported as a node count alongside every answer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

mod bchromatic;
mod chromatic;
mod edge;
mod fall;
mod matching;
mod sat;
mod tight;

pub use bchromatic::{b_chromatic_number, b_colouring_with};
pub use chromatic::chromatic_number;
pub use edge::{three_edge_colouring, EdgeColouring};
pub use fall::{fall_spectrum, maximal_independent_sets, FallSpectrum};
pub use matching::{min_maximal_matching, min_maximal_matching_size};
pub use sat::one_in_three_sat;
pub use tight::{precolouring_extension_exact, tight_b_exact};

/// Hard ceiling imposed by the mask representation.
pub const MASK_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} oracle accepts at most {limit} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("node limit reached after {nodes} nodes")]
    NodeLimit { nodes: u64 },
    #[error("graph is not tight")]
    NotTight,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("invalid precolouring: {0}")]
    Precolouring(String),
}

/// Size and effort limits for the oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Vertex limit for chromatic and b-chromatic searches.
    pub max_vertices: usize,
    /// Vertex limit for fall spectra.
    pub max_fall_vertices: usize,
    /// Raised vertex limit (both problems) when the independence number is at most 3.
    pub max_vertices_small_alpha: usize,
    /// Search nodes before giving up.
    pub node_limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 16,
            max_fall_vertices: 14,
            max_vertices_small_alpha: 32,
            node_limit: 50_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vertices: MASK_LIMIT,
            max_fall_vertices: MASK_LIMIT,
            max_vertices_small_alpha: MASK_LIMIT,
            node_limit: u64::MAX,
        }
    }

    pub fn with_node_limit(mut self, nodes: u64) -> Self {
        self.node_limit = nodes;
        self
    }

    fn admit(&self, g: &Graph, limit: usize, what: &'static str) -> Result<(), OracleError> {
        let n = g.n();
        let small_alpha = self.max_vertices_small_alpha.min(MASK_LIMIT);
        if n <= limit.min(MASK_LIMIT) {
            return Ok(());
        }
        if n <= small_alpha && g.independence_number() <= 3 {
            return Ok(());
        }
        Err(OracleError::TooLarge {
            what,
            n,
            limit: limit.min(MASK_LIMIT),
        })
    }
}

/// An answer together with the number of search nodes spent on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counted<T> {
    pub value: T,
    pub nodes: u64,
}

/// Three-way answer of a search that may stop early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "witness")]
pub enum Outcome<T> {
    Found(T),
    Absent,
    Inconclusive,
}

impl<T> Outcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Outcome::Absent)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Outcome::Inconclusive)
    }
}

pub(crate) fn masks(g: &Graph) -> Vec<u64> {
    debug_assert!(g.n() <= MASK_LIMIT);
    (0..g.n()).map(|u| g.mask(u)).collect()
}

pub(crate) fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Node counter that trips once a limit is passed.
pub(crate) struct Meter {
    pub nodes: u64,
    limit: u64,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Meter { nodes: 0, limit }
    }

    /// Counts one node; `false` once the limit is exceeded.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.limit
    }

    pub fn exceeded(&self) -> bool {
        self.nodes > self.limit
    }
}
