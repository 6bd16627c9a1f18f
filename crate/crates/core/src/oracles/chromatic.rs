use std::collections::HashMap;

use super::fall::for_each_maximal_independent;
use super::{bits, full, masks, Budget, Counted, Meter, OracleError};
use crate::colouring::Colouring;
use crate::graph::Graph;

/// Chromatic number with an optimal colouring.
///
/// Recurses on the lowest remaining vertex `v`: some optimal colouring puts
/// `v` in a class that is maximal independent in the remaining graph, so
/// only those classes are tried. Results are memoised per remaining set.
pub fn chromatic_number(
    g: &Graph,
    budget: &Budget,
) -> Result<Counted<(usize, Colouring)>, OracleError> {
    budget.admit(g, budget.max_vertices, "chromatic number")?;
    let n = g.n();
    let adj = masks(g);
    let mut s = Chi {
        adj: &adj,
        memo: HashMap::new(),
        meter: Meter::new(budget.node_limit),
    };
    let chi = s.solve(full(n));
    if s.meter.exceeded() {
        return Err(OracleError::NodeLimit {
            nodes: s.meter.nodes,
        });
    }
    let mut colours = vec![0u32; n];
    let mut rem = full(n);
    let mut colour = 0;
    while rem != 0 {
        let (_, class) = s.memo[&rem];
        colour += 1;
        for v in bits(class) {
            colours[v] = colour;
        }
        rem &= !class;
    }
    let c = Colouring::new(colours).expect("classes cover every vertex");
    debug_assert_eq!(c.k(), chi as usize);
    Ok(Counted {
        value: (chi as usize, c),
        nodes: s.meter.nodes,
    })
}

struct Chi<'a> {
    adj: &'a [u64],
    /// Remaining set -> (chromatic number, class of its lowest vertex).
    memo: HashMap<u64, (u8, u64)>,
    meter: Meter,
}

impl Chi<'_> {
    fn solve(&mut self, rem: u64) -> u8 {
        if rem == 0 {
            return 0;
        }
        if let Some(&(k, _)) = self.memo.get(&rem) {
            return k;
        }
        if !self.meter.tick() {
            return 0;
        }
        let v = rem.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let rest = rem & !self.adj[v] & !bit;
        let mut options = Vec::new();
        if rest == 0 {
            options.push(bit);
        } else {
            for_each_maximal_independent(self.adj, rest, &mut |m| options.push(m | bit));
        }
        let mut best = (u8::MAX, 0);
        for class in options {
            let k = 1 + self.solve(rem & !class);
            if k < best.0 {
                best = (k, class);
            }
        }
        self.memo.insert(rem, best);
        best.0
    }
}
