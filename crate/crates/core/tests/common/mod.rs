#![allow(dead_code)]

use bchroma::pattern::{is_free_of, PatternName};
use bchroma::{analyze_tight, Graph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn pattern(name: &str) -> Graph {
    name.parse::<PatternName>().expect("valid pattern").graph()
}

/// Labelled graph on `n` vertices whose edge set is read from the bits of
/// `code`, pairs `(u, v)` with `u < v` in lexicographic order.
pub fn labelled(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Every labelled graph on `n` vertices.
pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u64 << pair_count(n)).map(move |code| labelled(n, code))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn relabel<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

/// A random triangle-free graph, grown edge by edge.
pub fn random_triangle_free<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::empty(n);
    let tries = rng.gen_range(0..=2 * n);
    for _ in 0..tries {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && g.mask(u) & g.mask(v) == 0 {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// A random `(P3+P1)`-free graph: a join of parts, each the complement of a
/// triangle-free graph or a disjoint union of cliques.
pub fn random_p3p1_free<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let mut g = Graph::empty(0);
    for s in sizes {
        let part = if rng.gen_bool(0.5) {
            random_triangle_free(rng, s).complement()
        } else {
            random_clique_union(rng, s)
        };
        g = g.join(&part);
    }
    relabel(rng, &g)
}

fn random_clique_union<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let equal = (1..=n).filter(|d| n.is_multiple_of(*d)).collect::<Vec<_>>();
    let mut g = Graph::empty(0);
    if rng.gen_bool(0.5) {
        let p = *equal.choose(rng).unwrap();
        for _ in 0..n / p {
            g = g.disjoint_union(&Graph::complete(p));
        }
    } else {
        let mut left = n;
        while left > 0 {
            let s = rng.gen_range(1..=left);
            g = g.disjoint_union(&Graph::complete(s));
            left -= s;
        }
    }
    g
}

/// A random tight graph on `n` vertices: `m` dense vertices of degree
/// exactly `m - 1` and every other vertex of degree at most `m - 2`.
pub fn random_tight<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.2..0.95);
        let g = random_graph(rng, n, p);
        if analyze_tight(&g).is_tight {
            return g;
        }
    }
}

/// Rejection sampling of tight graphs free of `h`.
pub fn random_tight_free<R: Rng>(rng: &mut R, n: usize, h: &Graph) -> (Graph, u64) {
    let mut tries = 0;
    loop {
        tries += 1;
        let g = random_tight(rng, n);
        if is_free_of(&g, h) {
            return (g, tries);
        }
    }
}

/// Rejection sampling of tight `(P3+P1)`-free graphs.
pub fn random_tight_p3p1_free<R: Rng>(rng: &mut R, n: usize) -> (Graph, u64) {
    let mut tries = 0;
    loop {
        tries += 1;
        let g = random_p3p1_free(rng, n);
        if analyze_tight(&g).is_tight {
            return (g, tries);
        }
    }
}

/// Size of a maximum matching by exhaustive search.
pub fn brute_matching_size(g: &Graph) -> usize {
    fn go(g: &Graph, rest: u64) -> usize {
        if rest == 0 {
            return 0;
        }
        let v = rest.trailing_zeros() as usize;
        let without = rest & !(1 << v);
        let mut best = go(g, without);
        let mut nb = g.mask(v) & without;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            best = best.max(1 + go(g, without & !(1 << u)));
        }
        best
    }
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    go(g, all)
}
