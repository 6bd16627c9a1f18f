use super::{Counted, Meter, OracleError};
use crate::formula::Formula33;

/// An assignment making exactly one literal of every clause true.
///
/// Variables are decided in index order, `true` first; a clause is pruned as
/// soon as it has two true literals or three false ones.
pub fn one_in_three_sat(
    f: &Formula33,
    node_limit: u64,
) -> Result<Counted<Option<Vec<bool>>>, OracleError> {
    let n = f.variables();
    let occ: Vec<Vec<usize>> = (0..n)
        .map(|x| f.occurrences(x).into_iter().map(|(c, _)| c).collect())
        .collect();
    let mut s = Sat {
        occ: &occ,
        trues: vec![0; f.clauses().len()],
        falses: vec![0; f.clauses().len()],
        value: Vec::with_capacity(n),
        meter: Meter::new(node_limit),
    };
    let found = s.solve(0, n);
    if s.meter.exceeded() {
        return Err(OracleError::NodeLimit {
            nodes: s.meter.nodes,
        });
    }
    let value = found.then(|| s.value.clone());
    debug_assert!(value
        .as_ref()
        .is_none_or(|a| f.is_one_in_three(a).unwrap_or(false)));
    Ok(Counted {
        value,
        nodes: s.meter.nodes,
    })
}

struct Sat<'a> {
    occ: &'a [Vec<usize>],
    trues: Vec<u8>,
    falses: Vec<u8>,
    value: Vec<bool>,
    meter: Meter,
}

impl Sat<'_> {
    fn solve(&mut self, x: usize, n: usize) -> bool {
        if x == n {
            return true;
        }
        for v in [true, false] {
            if !self.meter.tick() {
                return false;
            }
            let ok = self.occ[x].iter().all(|&c| {
                if v {
                    self.trues[c] == 0
                } else {
                    self.falses[c] < 2
                }
            });
            if !ok {
                continue;
            }
            self.set(x, v, true);
            if self.solve(x + 1, n) {
                return true;
            }
            self.set(x, v, false);
            if self.meter.exceeded() {
                return false;
            }
        }
        false
    }

    fn set(&mut self, x: usize, v: bool, on: bool) {
        for &c in &self.occ[x] {
            let slot = if v {
                &mut self.trues[c]
            } else {
                &mut self.falses[c]
            };
            if on {
                *slot += 1;
            } else {
                *slot -= 1;
            }
        }
        if on {
            self.value.push(v);
        } else {
            self.value.pop();
        }
    }
}
