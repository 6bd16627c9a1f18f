use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{bits, full, masks, Budget, Counted, Meter, OracleError};
use crate::colouring::Colouring;
use crate::graph::Graph;

/// Achievable fall colouring sizes with one witness per size.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FallSpectrum {
    /// Sorted ascending.
    pub values: Vec<usize>,
    /// `witnesses[i]` has `values[i]` colours.
    pub witnesses: Vec<Colouring>,
}

impl FallSpectrum {
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.values.last().copied()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.values.binary_search(&k).is_ok()
    }

    pub fn is_fall_unique(&self) -> bool {
        self.values.len() == 1
    }
}

/// Bron-Kerbosch with pivoting on the complement, restricted to `within`.
pub(crate) fn for_each_maximal_independent(adj: &[u64], within: u64, f: &mut impl FnMut(u64)) {
    fn rec(adj: &[u64], r: u64, mut p: u64, mut x: u64, f: &mut impl FnMut(u64)) {
        if p == 0 {
            if x == 0 {
                f(r);
            }
            return;
        }
        let non = |v: usize| !adj[v] & !(1u64 << v);
        let pivot = bits(p | x)
            .max_by_key(|&u| (p & non(u)).count_ones())
            .expect("p is nonempty");
        for v in bits(p & !non(pivot)) {
            let bit = 1u64 << v;
            rec(adj, r | bit, p & non(v), x & non(v), f);
            p &= !bit;
            x |= bit;
        }
    }
    rec(adj, 0, within, 0, f);
}

/// All maximal independent sets of `g` as sorted vertex lists, in
/// ascending order of their masks. Requires `n <= 64`.
pub fn maximal_independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    let adj = masks(g);
    let mut out = Vec::new();
    for_each_maximal_independent(&adj, full(g.n()), &mut |m| out.push(m));
    out.sort_unstable();
    out.into_iter().map(|m| bits(m).collect()).collect()
}

/// Fall spectrum by exact cover of `V` with maximal independent sets.
pub fn fall_spectrum(g: &Graph, budget: &Budget) -> Result<Counted<FallSpectrum>, OracleError> {
    budget.admit(g, budget.max_fall_vertices, "fall spectrum")?;
    let n = g.n();
    if n == 0 {
        return Ok(Counted {
            value: FallSpectrum::default(),
            nodes: 0,
        });
    }
    let adj = masks(g);
    let mut sets = Vec::new();
    for_each_maximal_independent(&adj, full(n), &mut |m| {
        // Maximal independent sets are exactly the independent dominating sets.
        debug_assert!(bits(m).all(|v| adj[v] & m == 0));
        debug_assert!(bits(full(n) & !m).all(|v| adj[v] & m != 0));
        sets.push(m);
    });
    sets.sort_unstable();
    let mut by_vertex = vec![Vec::new(); n];
    for &s in &sets {
        for v in bits(s) {
            by_vertex[v].push(s);
        }
    }

    let mut search = Cover {
        by_vertex: &by_vertex,
        memo: HashMap::new(),
        meter: Meter::new(budget.node_limit),
    };
    let all = full(n);
    let counts = search.counts(all);
    if search.meter.exceeded() {
        return Err(OracleError::NodeLimit {
            nodes: search.meter.nodes,
        });
    }

    let mut spectrum = FallSpectrum::default();
    for k in 1..=n {
        if counts >> k & 1 == 0 {
            continue;
        }
        let mut classes = Vec::with_capacity(k);
        let mut rem = all;
        let mut need = k;
        while rem != 0 {
            let v = rem.trailing_zeros() as usize;
            let class = by_vertex[v]
                .iter()
                .copied()
                .find(|&s| s & !rem == 0 && search.lookup(rem & !s) >> (need - 1) & 1 == 1)
                .expect("memo promises a completion");
            classes.push(bits(class).collect::<Vec<_>>());
            rem &= !class;
            need -= 1;
        }
        spectrum.values.push(k);
        spectrum
            .witnesses
            .push(Colouring::from_classes(n, &classes).expect("cover is a partition"));
    }
    Ok(Counted {
        value: spectrum,
        nodes: search.meter.nodes,
    })
}

struct Cover<'a> {
    by_vertex: &'a [Vec<u64>],
    /// Remaining vertex set -> bit `k` set iff it splits into `k` of the sets.
    memo: HashMap<u64, u128>,
    meter: Meter,
}

impl Cover<'_> {
    fn lookup(&self, rem: u64) -> u128 {
        if rem == 0 {
            1
        } else {
            self.memo[&rem]
        }
    }

    fn counts(&mut self, rem: u64) -> u128 {
        if rem == 0 {
            return 1;
        }
        if let Some(&c) = self.memo.get(&rem) {
            return c;
        }
        if !self.meter.tick() {
            return 0;
        }
        let v = rem.trailing_zeros() as usize;
        let mut acc = 0u128;
        for &s in &self.by_vertex[v] {
            if s & !rem == 0 {
                acc |= self.counts(rem & !s) << 1;
            }
        }
        self.memo.insert(rem, acc);
        acc
    }
}
