use serde::{Deserialize, Serialize};

use super::{Counted, Meter, OracleError};
use crate::graph::Graph;

/// Edge colouring with colours `1..=3`, aligned with `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColouring {
    /// Sorted edges `(u, v)`, `u < v`, as returned by [`Graph::edges`].
    pub edges: Vec<(usize, usize)>,
    pub colours: Vec<u8>,
}

impl EdgeColouring {
    pub fn colour_of(&self, u: usize, v: usize) -> Option<u8> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().map(|i| self.colours[i])
    }

    /// Same edge set as `g`, colours in `1..=3`, and no two edges sharing an
    /// end-vertex alike.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.edges != g.edges() || self.colours.len() != self.edges.len() {
            return false;
        }
        let mut at = vec![0u8; g.n()];
        for (&(u, v), &c) in self.edges.iter().zip(&self.colours) {
            if !(1..=3).contains(&c) {
                return false;
            }
            let bit = 1 << c;
            if at[u] & bit != 0 || at[v] & bit != 0 {
                return false;
            }
            at[u] |= bit;
            at[v] |= bit;
        }
        true
    }
}

/// Proper 3-edge-colouring of a cubic graph, by backtracking over edges with
/// the fewest remaining colours first.
pub fn three_edge_colouring(
    g: &Graph,
    node_limit: u64,
) -> Result<Counted<Option<EdgeColouring>>, OracleError> {
    if !g.is_cubic() {
        return Err(OracleError::NotCubic);
    }
    let edges = g.edges();
    let mut s = EdgeSearch {
        edges: &edges,
        colours: vec![0; edges.len()],
        at: vec![0; g.n()],
        meter: Meter::new(node_limit),
    };
    // The colours are interchangeable, so the first edge may be fixed.
    if let Some(&(u, v)) = edges.first() {
        s.colours[0] = 1;
        s.at[u] |= 2;
        s.at[v] |= 2;
    }
    let found = s.solve();
    if s.meter.exceeded() {
        return Err(OracleError::NodeLimit {
            nodes: s.meter.nodes,
        });
    }
    let value = found.then(|| EdgeColouring {
        edges: edges.clone(),
        colours: s.colours.clone(),
    });
    Ok(Counted {
        value,
        nodes: s.meter.nodes,
    })
}

struct EdgeSearch<'a> {
    edges: &'a [(usize, usize)],
    colours: Vec<u8>,
    /// Colour bits (1..=3) already present at each vertex.
    at: Vec<u8>,
    meter: Meter,
}

impl EdgeSearch<'_> {
    fn options(&self, i: usize) -> u8 {
        let (u, v) = self.edges[i];
        0b1110 & !self.at[u] & !self.at[v]
    }

    fn solve(&mut self) -> bool {
        let mut best: Option<(usize, u8)> = None;
        for i in 0..self.edges.len() {
            if self.colours[i] != 0 {
                continue;
            }
            let o = self.options(i);
            if best.is_none_or(|(_, b)| o.count_ones() < b.count_ones()) {
                best = Some((i, o));
            }
        }
        let Some((i, opts)) = best else {
            return true;
        };
        let (u, v) = self.edges[i];
        for c in 1..=3u8 {
            if opts >> c & 1 == 0 {
                continue;
            }
            if !self.meter.tick() {
                return false;
            }
            self.colours[i] = c;
            self.at[u] |= 1 << c;
            self.at[v] |= 1 << c;
            if self.solve() {
                return true;
            }
            self.colours[i] = 0;
            self.at[u] &= !(1 << c);
            self.at[v] &= !(1 << c);
            if self.meter.exceeded() {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn colour(g: &Graph) -> Option<EdgeColouring> {
        three_edge_colouring(g, 10_000_000).unwrap().value
    }

    #[test]
    fn class_one_graphs() {
        for g in [complete(4), complete_bipartite(3, 3), prism()] {
            let ec = colour(&g).unwrap();
            assert!(ec.is_valid_for(&g));
        }
    }

    #[test]
    fn petersen_is_class_two() {
        assert!(colour(&petersen()).is_none());
    }

    #[test]
    fn rejects_non_cubic() {
        assert_eq!(
            three_edge_colouring(&cycle(4), 10),
            Err(OracleError::NotCubic)
        );
    }

    #[test]
    fn lookup() {
        let g = complete(4);
        let ec = colour(&g).unwrap();
        assert_eq!(ec.colour_of(1, 0), ec.colour_of(0, 1));
        assert_eq!(ec.colour_of(0, 0), None);
    }
}
