use super::{Counted, Meter, OracleError};
use crate::graph::Graph;
use crate::matching::Matching;

/// A smallest maximal matching.
///
/// Any maximal matching covers an end of every edge, so branching on the
/// edges at either end of the first fully uncovered edge is exhaustive.
pub fn min_maximal_matching(g: &Graph, node_limit: u64) -> Result<Counted<Matching>, OracleError> {
    let edges = g.edges();
    let mut s = MinMax {
        edges: &edges,
        used: vec![false; g.n()],
        chosen: Vec::new(),
        best: None,
        meter: Meter::new(node_limit),
    };
    s.solve();
    if s.meter.exceeded() {
        return Err(OracleError::NodeLimit {
            nodes: s.meter.nodes,
        });
    }
    let mut pairs = s.best.take().unwrap_or_default();
    pairs.sort_unstable();
    Ok(Counted {
        value: Matching { pairs },
        nodes: s.meter.nodes,
    })
}

pub fn min_maximal_matching_size(g: &Graph, node_limit: u64) -> Result<usize, OracleError> {
    Ok(min_maximal_matching(g, node_limit)?.value.len())
}

struct MinMax<'a> {
    edges: &'a [(usize, usize)],
    used: Vec<bool>,
    chosen: Vec<(usize, usize)>,
    best: Option<Vec<(usize, usize)>>,
    meter: Meter,
}

impl MinMax<'_> {
    fn solve(&mut self) {
        if !self.meter.tick() {
            return;
        }
        if self
            .best
            .as_ref()
            .is_some_and(|b| self.chosen.len() >= b.len())
        {
            return;
        }
        let Some(&(u, v)) = self
            .edges
            .iter()
            .find(|&&(a, b)| !self.used[a] && !self.used[b])
        else {
            self.best = Some(self.chosen.clone());
            return;
        };
        for i in 0..self.edges.len() {
            let (a, b) = self.edges[i];
            let touches = a == u || a == v || b == u || b == v;
            if !touches || self.used[a] || self.used[b] {
                continue;
            }
            self.used[a] = true;
            self.used[b] = true;
            self.chosen.push((a, b));
            self.solve();
            self.chosen.pop();
            self.used[a] = false;
            self.used[b] = false;
            if self.meter.exceeded() {
                return;
            }
        }
    }
}
