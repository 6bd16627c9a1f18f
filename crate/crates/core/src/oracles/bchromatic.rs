use super::chromatic::chromatic_number;
use super::{bits, masks, Budget, Counted, Meter, OracleError};
use crate::colouring::Colouring;
use crate::graph::{analyze_tight, Graph};

/// A b-colouring using exactly `k` colours, if one exists.
///
/// Tries every `k`-set of candidate b-vertices (degree at least `k - 1`) in
/// lexicographic order, colours the set `1..=k` in index order, then
/// backtracks over the remaining vertices with most-constrained-first
/// ordering. Each chosen b-vertex keeps a mask of colours it still misses.
pub fn b_colouring_with(
    g: &Graph,
    k: usize,
    budget: &Budget,
) -> Result<Counted<Option<Colouring>>, OracleError> {
    budget.admit(g, budget.max_vertices, "b-colouring")?;
    let mut meter = Meter::new(budget.node_limit);
    let value = search_k(g, k, &mut meter);
    if meter.exceeded() {
        return Err(OracleError::NodeLimit { nodes: meter.nodes });
    }
    Ok(Counted {
        value,
        nodes: meter.nodes,
    })
}

/// b-chromatic number with a witness, searched downwards from `m(G)`.
pub fn b_chromatic_number(
    g: &Graph,
    budget: &Budget,
) -> Result<Counted<(usize, Colouring)>, OracleError> {
    budget.admit(g, budget.max_vertices, "b-chromatic number")?;
    let chi = chromatic_number(g, budget)?;
    let mut nodes = chi.nodes;
    let m = analyze_tight(g).m;
    let mut meter = Meter::new(budget.node_limit);
    for k in (chi.value.0 + 1..=m).rev() {
        if let Some(c) = search_k(g, k, &mut meter) {
            return Ok(Counted {
                value: (k, c),
                nodes: nodes + meter.nodes,
            });
        }
        if meter.exceeded() {
            return Err(OracleError::NodeLimit {
                nodes: nodes + meter.nodes,
            });
        }
    }
    nodes += meter.nodes;
    // Every optimal colouring is a b-colouring: a class without a
    // b-chromatic vertex could be dissolved into the others.
    Ok(Counted {
        value: chi.value,
        nodes,
    })
}

fn search_k(g: &Graph, k: usize, meter: &mut Meter) -> Option<Colouring> {
    let n = g.n();
    if k == 0 {
        return (n == 0).then(|| Colouring::new(Vec::new()).expect("empty"));
    }
    if k > n || k > 63 {
        return None;
    }
    let adj = masks(g);
    let cands: Vec<usize> = (0..n).filter(|&v| g.degree(v) + 1 >= k).collect();
    if cands.len() < k {
        return None;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let chosen: Vec<usize> = pick.iter().map(|&i| cands[i]).collect();
        let mut s = BSearch::new(&adj, k);
        if s.seed(&chosen) && s.run(meter) {
            return Some(
                Colouring::new(s.col.iter().map(|&c| c as u32).collect()).expect("all coloured"),
            );
        }
        if meter.exceeded() || !next_combination(&mut pick, cands.len()) {
            return None;
        }
    }
}

/// Advances `pick` to the next `k`-combination of `0..n` in lex order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct BSearch<'a> {
    adj: &'a [u64],
    k: usize,
    col: Vec<usize>,
    /// `(vertex, colour)` for each chosen b-vertex.
    bverts: Vec<(usize, usize)>,
}

impl<'a> BSearch<'a> {
    fn new(adj: &'a [u64], k: usize) -> Self {
        BSearch {
            adj,
            k,
            col: vec![0; adj.len()],
            bverts: Vec::new(),
        }
    }

    fn seed(&mut self, chosen: &[usize]) -> bool {
        for (i, &v) in chosen.iter().enumerate() {
            self.col[v] = i + 1;
            self.bverts.push((v, i + 1));
        }
        // Adjacent b-vertices have distinct colours by construction.
        self.feasible()
    }

    fn all_colours(&self) -> u64 {
        ((1u64 << self.k) - 1) << 1
    }

    fn seen(&self, v: usize) -> u64 {
        bits(self.adj[v])
            .filter(|&w| self.col[w] != 0)
            .fold(0, |m, w| m | 1 << self.col[w])
    }

    fn available(&self, v: usize) -> u64 {
        self.all_colours() & !self.seen(v)
    }

    /// Every b-vertex can still collect its missing colours.
    fn feasible(&self) -> bool {
        self.bverts.iter().all(|&(x, c)| {
            let missing = self.all_colours() & !self.seen(x) & !(1 << c);
            let free: Vec<usize> = bits(self.adj[x]).filter(|&w| self.col[w] == 0).collect();
            if (missing.count_ones() as usize) > free.len() {
                return false;
            }
            let reachable = free.iter().fold(0, |m, &w| m | self.available(w));
            missing & !reachable == 0
        })
    }

    fn run(&mut self, meter: &mut Meter) -> bool {
        let mut best: Option<(usize, u64)> = None;
        for v in 0..self.col.len() {
            if self.col[v] != 0 {
                continue;
            }
            let avail = self.available(v);
            if best.is_none_or(|(_, b)| avail.count_ones() < b.count_ones()) {
                best = Some((v, avail));
            }
        }
        let Some((v, avail)) = best else {
            return true;
        };
        for c in bits(avail) {
            if !meter.tick() {
                return false;
            }
            self.col[v] = c;
            if self.feasible() && self.run(meter) {
                return true;
            }
            self.col[v] = 0;
            if meter.exceeded() {
                return false;
            }
        }
        false
    }
}
