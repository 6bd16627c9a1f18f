use super::{bits, Counted, Meter, OracleError, Outcome};
use crate::colouring::Colouring;
use crate::graph::{analyze_tight, Graph};

/// Exact tight b-colouring search.
///
/// The dense vertices get colours `1..=m` in index order. Only the outer
/// boundary is searched; every other vertex has degree at most `m - 2` and is
/// coloured greedily at the end. A dense vertex of degree `m - 1` is
/// b-chromatic iff its neighbours carry pairwise distinct colours, which is
/// what the search enforces.
pub fn tight_b_exact(
    g: &Graph,
    node_limit: u64,
) -> Result<Counted<Outcome<Colouring>>, OracleError> {
    let a = analyze_tight(g);
    if !a.is_tight {
        return Err(OracleError::NotTight);
    }
    let mut pre = vec![None; g.n()];
    for (i, &u) in a.dense.iter().enumerate() {
        pre[u] = Some(i as u32 + 1);
    }
    run(g, &pre, false, node_limit)
}

/// Exact search for a b-precolouring extension of `precolour`.
///
/// `precolour` must colour every dense vertex with distinct colours in
/// `1..=m`; it may also colour some boundary vertices (the set `S'`) and
/// nothing else. A solution extends it, is a tight b-colouring, and puts
/// every boundary vertex outside `S'` in a class with no other boundary
/// vertex.
pub fn precolouring_extension_exact(
    g: &Graph,
    precolour: &[Option<u32>],
    node_limit: u64,
) -> Result<Counted<Outcome<Colouring>>, OracleError> {
    run(g, precolour, true, node_limit)
}

fn run(
    g: &Graph,
    pre: &[Option<u32>],
    exclusive: bool,
    node_limit: u64,
) -> Result<Counted<Outcome<Colouring>>, OracleError> {
    let a = analyze_tight(g);
    if !a.is_tight {
        return Err(OracleError::NotTight);
    }
    let n = g.n();
    let m = a.m;
    if m > 63 {
        return Err(OracleError::TooLarge {
            what: "tight b-colouring",
            n: m,
            limit: 63,
        });
    }
    if pre.len() != n {
        return Err(OracleError::Precolouring(format!(
            "{} entries for {} vertices",
            pre.len(),
            n
        )));
    }
    let mut is_dense = vec![false; n];
    let mut is_boundary = vec![false; n];
    a.dense.iter().for_each(|&u| is_dense[u] = true);
    a.boundary.iter().for_each(|&s| is_boundary[s] = true);
    let mut used = 0u64;
    for &u in &a.dense {
        match pre[u] {
            Some(c) if (1..=m as u32).contains(&c) && used >> c & 1 == 0 => used |= 1 << c,
            _ => {
                return Err(OracleError::Precolouring(format!(
                    "dense vertex {u} needs a distinct colour in 1..={m}"
                )))
            }
        }
    }
    for (v, &c) in pre.iter().enumerate() {
        if let Some(c) = c {
            if !is_dense[v] && !is_boundary[v] {
                return Err(OracleError::Precolouring(format!(
                    "vertex {v} is neither dense nor on the boundary"
                )));
            }
            if c == 0 || c as usize > m {
                return Err(OracleError::Precolouring(format!(
                    "colour {c} outside 1..={m}"
                )));
            }
        }
    }

    let mut s = Search {
        adj: (0..n).map(|v| g.neighbors(v).collect()).collect(),
        is_dense,
        is_boundary,
        col: pre.iter().map(|c| c.unwrap_or(0)).collect(),
        seen: vec![0; n],
        free_boundary: a
            .boundary
            .iter()
            .copied()
            .filter(|&s| pre[s].is_none())
            .collect(),
        exclusive,
        boundary_count: vec![0; m + 1],
        all: ((1u64 << m) - 1) << 1,
        meter: Meter::new(node_limit),
    };
    if !s.load_precolour() {
        return Ok(Counted {
            value: Outcome::Absent,
            nodes: 0,
        });
    }
    let found = s.solve();
    let nodes = s.meter.nodes;
    if s.meter.exceeded() {
        return Ok(Counted {
            value: Outcome::Inconclusive,
            nodes,
        });
    }
    if !found {
        return Ok(Counted {
            value: Outcome::Absent,
            nodes,
        });
    }
    for v in 0..n {
        if s.col[v] == 0 {
            let taken = s.adj[v].iter().fold(0u64, |acc, &w| acc | 1 << s.col[w]);
            let c = (1..=m as u32)
                .find(|&c| taken >> c & 1 == 0)
                .expect("non-dense vertices have degree at most m-2");
            s.col[v] = c;
        }
    }
    let c = Colouring::new(s.col).expect("dense vertices use every colour");
    Ok(Counted {
        value: Outcome::Found(c),
        nodes,
    })
}

struct Search {
    adj: Vec<Vec<usize>>,
    is_dense: Vec<bool>,
    is_boundary: Vec<bool>,
    col: Vec<u32>,
    /// For dense vertices: colours present on coloured neighbours.
    seen: Vec<u64>,
    free_boundary: Vec<usize>,
    exclusive: bool,
    /// Boundary vertices per colour.
    boundary_count: Vec<u32>,
    all: u64,
    meter: Meter,
}

impl Search {
    /// Registers the precoloured vertices; `false` if they already clash.
    fn load_precolour(&mut self) -> bool {
        let n = self.col.len();
        for v in 0..n {
            let c = self.col[v];
            if c == 0 {
                continue;
            }
            for &w in &self.adj[v] {
                if self.col[w] == c {
                    return false;
                }
                if self.is_dense[w] {
                    if self.seen[w] >> c & 1 == 1 {
                        return false;
                    }
                    self.seen[w] |= 1 << c;
                }
            }
            if self.is_boundary[v] {
                self.boundary_count[c as usize] += 1;
            }
        }
        true
    }

    fn domain(&self, s: usize) -> u64 {
        let mut d = self.all;
        for &w in &self.adj[s] {
            let c = self.col[w];
            if c != 0 {
                d &= !(1 << c);
            }
            if self.is_dense[w] {
                d &= !self.seen[w];
            }
        }
        if self.exclusive {
            d &= !bits(d)
                .filter(|&c| self.boundary_count[c] > 0)
                .fold(0u64, |m, c| m | 1 << c);
        }
        d
    }

    fn solve(&mut self) -> bool {
        let mut best: Option<(usize, u64)> = None;
        for &s in &self.free_boundary {
            if self.col[s] != 0 {
                continue;
            }
            let d = self.domain(s);
            if best.is_none_or(|(_, b)| d.count_ones() < b.count_ones()) {
                best = Some((s, d));
                if d == 0 {
                    break;
                }
            }
        }
        let Some((s, d)) = best else {
            return true;
        };
        for c in bits(d) {
            if !self.meter.tick() {
                return false;
            }
            self.assign(s, c as u32);
            if self.solve() {
                return true;
            }
            self.unassign(s);
            if self.meter.exceeded() {
                return false;
            }
        }
        false
    }

    fn assign(&mut self, s: usize, c: u32) {
        self.col[s] = c;
        for i in 0..self.adj[s].len() {
            let w = self.adj[s][i];
            if self.is_dense[w] {
                self.seen[w] |= 1 << c;
            }
        }
        self.boundary_count[c as usize] += 1;
    }

    fn unassign(&mut self, s: usize) {
        let c = self.col[s];
        self.col[s] = 0;
        for i in 0..self.adj[s].len() {
            let w = self.adj[s][i];
            if self.is_dense[w] {
                self.seen[w] &= !(1 << c);
            }
        }
        self.boundary_count[c as usize] -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_tight_b_colouring;
    use crate::graph::named::*;

    #[test]
    fn complete_graphs() {
        let g = complete(3);
        let r = tight_b_exact(&g, 1000).unwrap().value;
        assert_eq!(r.found().unwrap().as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn two_p1_join_k3_p1_has_none() {
        // Co-components 2P1 and K3+P1, joined.
        let g = empty(2).join(&sum(&[complete(3), empty(1)]));
        assert!(analyze_tight(&g).is_tight);
        assert_eq!(analyze_tight(&g).m, 5);
        assert!(tight_b_exact(&g, 1_000_000).unwrap().value.is_absent());
    }

    #[test]
    fn found_colourings_validate() {
        let g = sum(&[complete(4), path(3)]);
        let c = tight_b_exact(&g, 1000)
            .unwrap()
            .value
            .found()
            .cloned()
            .unwrap();
        assert!(is_tight_b_colouring(&g, &c).unwrap());
    }

    #[test]
    fn rejects_non_tight() {
        assert_eq!(tight_b_exact(&cycle(4), 10), Err(OracleError::NotTight));
    }
}
