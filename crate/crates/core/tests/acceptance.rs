//! Acceptance suite. Prints one line per criterion and exits non-zero when a
//! criterion fails for a reason not listed in `KNOWN_DEVIATIONS`.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use bchroma::formula::Formula33;
use bchroma::gadgets::{
    bonomo_instance, edge_colouring_to_tight_bcolouring, hss_2p3_instance, hss_3p2_instance,
    hss_instance, one_in_three_graph, HssVariant,
};
use bchroma::graph::named;
use bchroma::io::parse_formula;
use bchroma::matching::{max_bipartite_matching, maximum_matching, perfect_matching};
use bchroma::oracles::{
    b_chromatic_number, chromatic_number, fall_spectrum, one_in_three_sat,
    precolouring_extension_exact, three_edge_colouring, tight_b_exact, Budget, Outcome,
};
use bchroma::pattern::{classify, is_free_of, open_family, Complexity, OpenFamily, Problem};
use bchroma::tight::{extend_partial, tight_b_2p2p1_free, tight_b_p3p1_free, validate_partial};
use bchroma::{analyze_tight, fall::fall_p3p1_free, is_tight_b_colouring, Colouring, Graph};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TIGHT_NODES: u64 = 100_000_000;

/// Criterion checks whose stated expectation is known to be wrong, with the
/// value the suite asserts instead.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    4,
    "K3,3-PM is C6, whose fall spectrum is {2,3}: the bipartition and the three antipodal pairs are both fall colourings",
)];

struct Report {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get())
}

/// Runs `f` over `0..count` on all cores and gathers the per-item messages.
fn par_failures<F>(count: u64, f: F) -> Vec<String>
where
    F: Fn(u64) -> Vec<String> + Sync,
{
    let next = AtomicU64::new(0);
    let chunk = 256;
    let mut out: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads())
            .map(|_| {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let start = next.fetch_add(chunk, Ordering::Relaxed);
                        if start >= count {
                            break;
                        }
                        for i in start..(start + chunk).min(count) {
                            local.extend(f(i));
                        }
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    out.sort();
    out
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Report {
    let mut r = Report::new();
    let n = 6;
    let total = 1u64 << pair_count(n);
    let budget = Budget::default();
    let failures = par_failures(total, |code| {
        let g = labelled(n, code);
        let mut bad = Vec::new();
        let (chi, phi, spec) = match (
            chromatic_number(&g, &budget),
            b_chromatic_number(&g, &budget),
            fall_spectrum(&g, &budget),
        ) {
            (Ok(a), Ok(b), Ok(c)) => (a.value.0, b.value.0, c.value),
            _ => return vec![format!("graph {code}: oracle error")],
        };
        let m = analyze_tight(&g).m;
        if !(chi <= phi && phi <= m) {
            bad.push(format!("graph {code}: chi {chi}, phi {phi}, m {m}"));
        }
        if let (Some(lo), Some(hi)) = (spec.min(), spec.max()) {
            let delta = g.min_degree().unwrap_or(0);
            if !(chi <= lo && hi <= delta + 1) {
                bad.push(format!(
                    "graph {code}: chi {chi}, F {:?}, delta {delta}",
                    spec.values
                ));
            }
        }
        bad
    });
    r.note(format!(
        "{total} labelled graphs on 6 vertices, {} violations",
        failures.len()
    ));
    r.failures = failures;
    r
}

// ---------------------------------------------------------------------------

fn exact_tight(g: &Graph) -> Result<bool, String> {
    match tight_b_exact(g, TIGHT_NODES)
        .map_err(|e| e.to_string())?
        .value
    {
        Outcome::Found(c) => {
            if is_tight_b_colouring(g, &c).unwrap_or(false) {
                Ok(true)
            } else {
                Err("oracle witness is not a tight b-colouring".into())
            }
        }
        Outcome::Absent => Ok(false),
        Outcome::Inconclusive => Err("oracle inconclusive".into()),
    }
}

type TightSolver = fn(&Graph) -> Result<Option<Colouring>, bchroma::tight::TightError>;

fn compare_tight(g: &Graph, solver: TightSolver, label: &str, yes: &mut u64) -> Option<String> {
    let fast = match solver(g) {
        Ok(c) => c,
        Err(e) => return Some(format!("{label} {:?}: {e}", g.edges())),
    };
    if let Some(c) = &fast {
        if !is_tight_b_colouring(g, c).unwrap_or(false) {
            return Some(format!(
                "{label} {:?}: witness is not a tight b-colouring",
                g.edges()
            ));
        }
    }
    match exact_tight(g) {
        Ok(exact) if exact == fast.is_some() => {
            *yes += exact as u64;
            None
        }
        Ok(exact) => Some(format!(
            "{label} {:?}: solver {} oracle {exact}",
            g.edges(),
            fast.is_some()
        )),
        Err(e) => Some(format!("{label} {:?}: {e}", g.edges())),
    }
}

fn criterion_2() -> Report {
    let mut r = Report::new();
    let h2 = pattern("2P2+P1");
    let h3 = pattern("P3+P1");
    let (mut c2, mut c3, mut y2, mut y3) = (0u64, 0u64, 0u64, 0u64);
    for n in 1..=6 {
        for g in all_labelled(n) {
            if !analyze_tight(&g).is_tight {
                continue;
            }
            if is_free_of(&g, &h2) {
                c2 += 1;
                if let Some(e) = compare_tight(&g, tight_b_2p2p1_free, "2P2+P1", &mut y2) {
                    r.failures.push(e);
                }
            }
            if is_free_of(&g, &h3) {
                c3 += 1;
                if let Some(e) = compare_tight(&g, tight_b_p3p1_free, "P3+P1", &mut y3) {
                    r.failures.push(e);
                }
            }
        }
    }
    r.note(format!(
        "exhaustive n<=6: {c2} (2P2+P1)-free ({y2} yes), {c3} (P3+P1)-free ({y3} yes)"
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut y2, mut y3) = (0u64, 0u64);
    let samples = 1000;
    for _ in 0..samples {
        let n = rng.gen_range(7..=10);
        let (g, _) = random_tight_free(&mut rng, n, &h2);
        if let Some(e) = compare_tight(&g, tight_b_2p2p1_free, "2P2+P1", &mut y2) {
            r.failures.push(e);
        }
        let n = rng.gen_range(7..=10);
        let (g, _) = random_tight_p3p1_free(&mut rng, n);
        if let Some(e) = compare_tight(&g, tight_b_p3p1_free, "P3+P1", &mut y3) {
            r.failures.push(e);
        }
    }
    r.note(format!(
        "random n in 7..=10: {samples} per class ({y2} and {y3} yes)"
    ));

    let join = named::empty(2).join(&named::sum(&[named::complete(3), named::complete(1)]));
    let a = analyze_tight(&join);
    r.check(a.is_tight && a.m == 5, || {
        "2P1 join (K3+P1) is not tight with m = 5".into()
    });
    let fast = tight_b_p3p1_free(&join);
    r.check(matches!(fast, Ok(None)), || {
        format!("2P1 join (K3+P1): {fast:?}")
    });
    r.check(exact_tight(&join) == Ok(false), || {
        "2P1 join (K3+P1): oracle disagrees".into()
    });
    r.note("2P1 join (K3+P1) answers no");
    r
}

// ---------------------------------------------------------------------------

fn canonical(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let n = g.n();
    let edges = g.edges();
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            for &(u, v) in &edges {
                let (a, b) = if p[u] < p[v] {
                    (p[u], p[v])
                } else {
                    (p[v], p[u])
                };
                let bit = a * (2 * n - a - 1) / 2 + (b - a - 1);
                code |= 1 << bit;
            }
            code
        })
        .min()
        .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class on `n` vertices.
fn iso_classes(prev: &[Graph], n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for g in prev {
        for nbhd in 0..1u64 << (n - 1) {
            let mut h = Graph::empty(n);
            for &(u, v) in &g.edges() {
                h.add_edge(u, v).unwrap();
            }
            for u in 0..n - 1 {
                if nbhd >> u & 1 == 1 {
                    h.add_edge(u, n - 1).unwrap();
                }
            }
            if seen.insert(canonical(&h, &perms)) {
                reps.push(h);
            }
        }
    }
    reps
}

struct ExtensionStats {
    partials: u64,
    extended: u64,
}

fn check_extensions(g: &Graph, stats: &mut ExtensionStats) -> Vec<String> {
    let a = analyze_tight(g);
    let mut bad = Vec::new();
    let b = a.boundary.len();
    let m = a.m as u32;
    for subset in 0..1u64 << b {
        let s_prime: Vec<usize> = (0..b)
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| a.boundary[i])
            .collect();
        let k = s_prime.len() as u32;
        for code in 0..(m as u64).pow(k) {
            let mut colours = vec![None; g.n()];
            for (i, &u) in a.dense.iter().enumerate() {
                colours[u] = Some(i as u32 + 1);
            }
            let mut rest = code;
            for &s in &s_prime {
                colours[s] = Some((rest % m as u64) as u32 + 1);
                rest /= m as u64;
            }
            let Ok(p) = validate_partial(g, &s_prime, &colours) else {
                continue;
            };
            stats.partials += 1;
            let exact = precolouring_extension_exact(g, &colours, TIGHT_NODES).map(|c| c.value);
            match (extend_partial(&p), exact) {
                (Ok(c), Ok(Outcome::Found(_))) => {
                    stats.extended += 1;
                    let tight = is_tight_b_colouring(g, &c).unwrap_or(false);
                    let extends = (0..g.n()).all(|v| colours[v].is_none_or(|x| x == c.colour(v)));
                    let class_ok = c.classes().iter().all(|class| {
                        let on_boundary = class.iter().filter(|v| a.boundary.contains(v)).count();
                        on_boundary < 2
                            || class
                                .iter()
                                .all(|v| !a.boundary.contains(v) || s_prime.contains(v))
                    });
                    if !(tight && extends && class_ok) {
                        bad.push(format!(
                            "{:?} S'={s_prime:?}: extension tight={tight} extends={extends} classes={class_ok}",
                            g.edges()
                        ));
                    }
                }
                (Err(_), Ok(Outcome::Absent)) => {}
                (got, exact) => bad.push(format!(
                    "{:?} S'={s_prime:?} colours={colours:?}: engine {got:?}, oracle {exact:?}",
                    g.edges()
                )),
            }
        }
    }
    bad
}

fn criterion_3() -> Report {
    let mut r = Report::new();
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 1..=6 {
        graphs.extend(all_labelled(n).filter(|g| analyze_tight(g).is_tight));
    }
    let labelled_count = graphs.len();

    let mut reps = vec![Graph::empty(1)];
    for n in 2..=7 {
        reps = iso_classes(&reps, n);
    }
    r.check(reps.len() == 1044, || {
        format!(
            "{} isomorphism classes on 7 vertices, expected 1044",
            reps.len()
        )
    });
    let tight7: Vec<Graph> = reps
        .into_iter()
        .filter(|g| analyze_tight(g).is_tight)
        .collect();
    let seven = tight7.len();
    graphs.extend(tight7);

    let partials = AtomicU64::new(0);
    let extended = AtomicU64::new(0);
    let failures = par_failures(graphs.len() as u64, |i| {
        let mut stats = ExtensionStats {
            partials: 0,
            extended: 0,
        };
        let bad = check_extensions(&graphs[i as usize], &mut stats);
        partials.fetch_add(stats.partials, Ordering::Relaxed);
        extended.fetch_add(stats.extended, Ordering::Relaxed);
        bad
    });
    r.failures.extend(failures);
    r.note(format!(
        "{labelled_count} labelled tight graphs n<=6 and {seven} tight classes n=7; {} partial colourings, {} extended",
        partials.into_inner(),
        extended.into_inner()
    ));
    r
}

// ---------------------------------------------------------------------------

fn compare_fall(g: &Graph, budget: &Budget, sizes: &mut BTreeSet<usize>) -> Option<String> {
    let fast = match fall_p3p1_free(g) {
        Ok(res) => res.spectrum.values,
        Err(e) => return Some(format!("{:?}: {e}", g.edges())),
    };
    let exact = match fall_spectrum(g, budget) {
        Ok(c) => c.value.values,
        Err(e) => return Some(format!("{:?}: oracle {e}", g.edges())),
    };
    sizes.insert(exact.len());
    if fast != exact {
        return Some(format!(
            "{:?}: solver {fast:?}, oracle {exact:?}",
            g.edges()
        ));
    }
    (exact.len() > 1).then(|| format!("{:?}: spectrum {exact:?} is not a singleton", g.edges()))
}

fn criterion_4() -> Report {
    let mut r = Report::new();
    let budget = Budget::default();
    let h = pattern("P3+P1");
    let mut sizes = BTreeSet::new();
    let mut exhaustive = 0;
    for n in 0..=6 {
        for g in all_labelled(n).filter(|g| is_free_of(g, &h)) {
            exhaustive += 1;
            if let Some(e) = compare_fall(&g, &budget, &mut sizes) {
                r.failures.push(e);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut nonempty = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(7..=10);
        let g = random_p3p1_free(&mut rng, n);
        r.check(is_free_of(&g, &h), || {
            format!("generator produced {:?}", g.edges())
        });
        let mut s = BTreeSet::new();
        if let Some(e) = compare_fall(&g, &budget, &mut s) {
            r.failures.push(e);
        }
        nonempty += s.contains(&1) as u32;
        sizes.extend(s);
    }
    r.note(format!(
        "{exhaustive} (P3+P1)-free graphs n<=6 and 1000 random n in 7..=10 ({nonempty} with a fall colouring); spectrum sizes {sizes:?}"
    ));

    let spec = |g: &Graph| fall_spectrum(g, &budget).unwrap().value.values;
    r.check(spec(&named::paw()).is_empty(), || {
        "F(paw) is not empty".into()
    });
    r.check(spec(&named::complete(3)) == vec![3], || {
        "F(C3) is not {3}".into()
    });

    let k33_pm = {
        let mut g = Graph::empty(6);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    g.add_edge(i, 3 + j).unwrap();
                }
            }
        }
        g
    };
    let f = spec(&k33_pm);
    let bipartition = Colouring::new(vec![1, 1, 1, 2, 2, 2]).unwrap();
    let antipodal = Colouring::new(vec![1, 2, 3, 1, 2, 3]).unwrap();
    r.check(
        bchroma::is_fall_colouring(&k33_pm, &bipartition).unwrap()
            && bchroma::is_fall_colouring(&k33_pm, &antipodal).unwrap()
            && f == vec![2, 3],
        || format!("F(K3,3-PM) = {f:?}, expected {{2,3}} from the explicit colourings"),
    );
    if f != vec![3] {
        r.failures.push(format!(
            "F(K3,3-PM) = {f:?}, not {{3}} (known deviation: 3 is in F)"
        ));
    }
    r
}

// ---------------------------------------------------------------------------

fn cubic_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("K4", named::complete(4)),
        ("K3,3", named::complete_bipartite(3, 3)),
        ("prism", named::prism()),
        ("Petersen", named::petersen()),
    ]
}

fn criterion_5() -> Report {
    let mut r = Report::new();
    let p3 = pattern("3P2");
    let p2 = pattern("2P3");
    for (name, g) in cubic_fixtures() {
        let t0 = Instant::now();
        let n = g.n();
        let edges = g.edge_count();

        let h = hss_instance(&g).unwrap();
        let a = analyze_tight(&h);
        r.check(a.is_tight && a.m == n + 3, || {
            format!("{name} hss: tight {} m {}", a.is_tight, a.m)
        });

        let h = hss_3p2_instance(&g).unwrap();
        let a = analyze_tight(&h);
        r.check(a.is_tight && a.m == n + 3, || {
            format!("{name} hss3p2: tight {} m {}", a.is_tight, a.m)
        });
        r.check(is_free_of(&h, &p3), || {
            format!("{name} hss3p2 contains 3P2")
        });

        let h = hss_2p3_instance(&g).unwrap();
        let a = analyze_tight(&h);
        let m = edges + n + 4;
        r.check(a.is_tight && a.m == m, || {
            format!("{name} hss2p3: tight {} m {}", a.is_tight, a.m)
        });
        r.check(is_free_of(&h, &p2), || {
            format!("{name} hss2p3 contains 2P3")
        });
        let mut table = std::collections::BTreeMap::new();
        for d in h.degrees() {
            *table.entry(d).or_insert(0usize) += 1;
        }
        let expected: std::collections::BTreeMap<usize, usize> = [
            (edges + n + 3, n + (edges + 1) + 3),
            (edges + n + 2, n),
            (n + 2, edges),
        ]
        .into_iter()
        .collect();
        r.check(table == expected, || {
            format!("{name} hss2p3 degree table {table:?}, expected {expected:?}")
        });
        let secs = t0.elapsed().as_secs_f64();
        r.check(secs < 30.0, || format!("{name}: {secs:.1}s"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let free = [pattern("3P1"), pattern("2P2")];
    for i in 0..20 {
        let n = rng.gen_range(2..=10);
        let left = rng.gen_range(1..n);
        let p = rng.gen_range(0.2..0.9);
        let mut g = Graph::empty(n);
        for u in 0..left {
            for v in left..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let h = bonomo_instance(&g).unwrap();
        r.check(free.iter().all(|f| is_free_of(&h, f)), || {
            format!("bonomo input {i} {:?}", g.edges())
        });
    }
    r.note(
        "4 cubic fixtures through hss, hss3p2, hss2p3; 20 random bipartite inputs through bonomo",
    );
    r
}

// ---------------------------------------------------------------------------

fn fixture(name: &str) -> Formula33 {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_formula(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn criterion_6() -> Report {
    let mut r = Report::new();
    for (name, g) in cubic_fixtures() {
        let Some(ec) = three_edge_colouring(&g, 10_000_000).unwrap().value else {
            continue;
        };
        for variant in [HssVariant::Hss, HssVariant::Hss3p2, HssVariant::Hss2p3] {
            let h = match variant {
                HssVariant::Hss => hss_instance(&g),
                HssVariant::Hss3p2 => hss_3p2_instance(&g),
                HssVariant::Hss2p3 => hss_2p3_instance(&g),
            }
            .unwrap();
            let want = match variant {
                HssVariant::Hss2p3 => g.edge_count() + g.n() + 4,
                _ => g.n() + 3,
            };
            match edge_colouring_to_tight_bcolouring(variant, &g, &ec) {
                Ok(c) => r.check(
                    is_tight_b_colouring(&h, &c).unwrap_or(false) && c.k() == want,
                    || format!("(a) {name} {variant:?}: {} colours, want {want}", c.k()),
                ),
                Err(e) => r.failures.push(format!("(a) {name} {variant:?}: {e}")),
            }
        }
    }

    let budget = Budget::default();
    let f = fixture("one_in_three_sat3.13sat");
    r.check(f.variables() == 3, || {
        "(b) fixture does not have 3 variables".into()
    });
    let (_, gbar) = one_in_three_graph(&f);
    let spec = fall_spectrum(&gbar, &budget).map(|c| c.value.values);
    r.check(spec == Ok(vec![7]), || format!("(b) spectrum {spec:?}"));

    let f = fixture("one_in_three_unsat6.13sat");
    r.check(f.variables() == 6, || {
        "(c) fixture does not have 6 variables".into()
    });
    let sat = one_in_three_sat(&f, 10_000_000).map(|c| c.value);
    r.check(sat == Ok(None), || {
        format!("(c) formula is 1-satisfiable: {sat:?}")
    });
    let (_, gbar) = one_in_three_graph(&f);
    let spec = fall_spectrum(&gbar, &budget).map(|c| c.value.values);
    r.check(spec == Ok(vec![]), || format!("(c) spectrum {spec:?}"));
    let chi = chromatic_number(&gbar, &budget).map(|c| c.value.0);
    r.check(matches!(chi, Ok(k) if k > 14), || {
        format!("(c) chromatic number {chi:?}")
    });

    let h = hss_instance(&named::petersen()).unwrap();
    let t0 = Instant::now();
    let back = tight_b_exact(&h, TIGHT_NODES).map(|c| (c.value, c.nodes));
    match &back {
        Ok((Outcome::Found(_), _)) => r
            .failures
            .push("(d) Petersen hss instance has a tight b-colouring".into()),
        Ok((o, nodes)) => r.note(format!(
            "(d) Petersen: {} after {nodes} nodes in {:.1}s",
            if o.is_absent() {
                "absent"
            } else {
                "inconclusive"
            },
            t0.elapsed().as_secs_f64()
        )),
        Err(e) => r.failures.push(format!("(d) {e}")),
    }
    r
}

// ---------------------------------------------------------------------------

use Complexity::{NpComplete as C, NpHard as H, Open as O, Poly as P};

/// Expected (b, tight b, fall) verdicts.
const TABLE: &[(&str, [Complexity; 3])] = &[
    ("P4", [P, P, P]),
    ("P3+P1", [H, P, P]),
    ("2P2", [H, P, H]),
    ("2P2+P1", [H, P, H]),
    ("3P1", [H, P, P]),
    ("P5", [H, C, H]),
    ("2P3", [H, C, H]),
    ("3P2", [H, C, H]),
    ("claw", [H, C, H]),
    ("C3", [H, C, H]),
    ("C4", [H, C, H]),
    ("C5", [H, C, H]),
    ("paw", [H, C, H]),
    ("P4+P1", [H, O, H]),
    ("P3+2P1", [H, O, H]),
    ("4P1", [H, O, H]),
];

/// Expected tight verdict for a linear forest given by its path orders.
fn expected_tight_forest(paths: &[usize]) -> (Complexity, Option<OpenFamily>) {
    let mut p: Vec<usize> = paths.to_vec();
    p.sort_unstable_by(|a, b| b.cmp(a));
    let ones = p.iter().filter(|&&x| x == 1).count();
    let big: Vec<usize> = p.iter().copied().filter(|&x| x > 1).collect();
    let small = [
        // induced subgraphs of P4, P3+P1 and 2P2+P1
        vec![],
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![1, 1],
        vec![2, 1],
        vec![3, 1],
        vec![1, 1, 1],
        vec![2, 2],
        vec![2, 2, 1],
        vec![2, 1, 1],
    ];
    if small.contains(&p) {
        return (P, None);
    }
    let matching_number: usize = p.iter().map(|&k| (k + 1) / 3).sum();
    let p3_count: usize = p.iter().map(|&k| (k + 1) / 4).sum();
    if p[0] >= 5 || p3_count >= 2 || matching_number >= 3 {
        return (C, None);
    }
    let family = match (big.as_slice(), ones) {
        ([4, 2], s) => OpenFamily::P4P2SP1(s),
        ([4], s) => OpenFamily::P4SP1(s),
        ([3, 2], s) => OpenFamily::P3P2SP1(s),
        ([3], s) => OpenFamily::P3SP1(s),
        ([2, 2], s) => OpenFamily::TwoP2SP1(s),
        ([2], s) => OpenFamily::P2SP1(s),
        ([], s) => OpenFamily::SP1(s),
        _ => panic!("linear forest {p:?} is neither classified nor open"),
    };
    (O, Some(family))
}

fn partitions(total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for k in (1..=max.min(total)).rev() {
        prefix.push(k);
        partitions(total - k, k, prefix, out);
        prefix.pop();
    }
}

fn forest_name(paths: &[usize]) -> String {
    let mut s = String::new();
    for (i, k) in paths.iter().enumerate() {
        if i > 0 {
            s.push('+');
        }
        write!(s, "P{k}").unwrap();
    }
    s
}

fn criterion_7() -> Report {
    let mut r = Report::new();
    let problems = [Problem::BChromatic, Problem::TightBChromatic, Problem::Fall];
    for (name, expected) in TABLE {
        let h = pattern(name);
        for (problem, want) in problems.iter().zip(expected) {
            let got = classify(*problem, &h).complexity;
            r.check(got == *want, || {
                format!("{name} {problem:?}: got {got:?}, want {want:?}")
            });
        }
    }
    let open_rows = [
        ("P4+P1", OpenFamily::P4SP1(1)),
        ("P3+2P1", OpenFamily::P3SP1(2)),
        ("4P1", OpenFamily::SP1(4)),
    ];
    for (name, family) in open_rows {
        let got = open_family(&pattern(name));
        r.check(got == Some(family), || {
            format!("{name}: open family {got:?}")
        });
    }

    let mut forests = 0;
    for total in 1..=9 {
        let mut all = Vec::new();
        partitions(total, total, &mut Vec::new(), &mut all);
        for paths in all {
            forests += 1;
            let name = forest_name(&paths);
            let h = pattern(&name);
            let (want, family) = expected_tight_forest(&paths);
            let got = classify(Problem::TightBChromatic, &h);
            r.check(got.complexity == want, || {
                format!("{name}: got {:?}, want {want:?}", got.complexity)
            });
            let fam = open_family(&h).filter(|_| got.complexity == O);
            r.check(fam == family, || {
                format!("{name}: open family {fam:?}, want {family:?}")
            });
        }
    }
    r.note(format!(
        "{} fixture patterns x 3 problems; {forests} linear forests up to 9 vertices",
        TABLE.len()
    ));
    r
}

// ---------------------------------------------------------------------------

fn check_matchings(g: &Graph) -> Vec<String> {
    let mut bad = Vec::new();
    let best = brute_matching_size(g);
    let m = maximum_matching(g);
    if !m.is_valid_in(g) || m.len() != best {
        bad.push(format!("{:?}: blossom {} vs {best}", g.edges(), m.len()));
    }
    let perfect = perfect_matching(g);
    if perfect.is_some() != (2 * best == g.n())
        || perfect.as_ref().is_some_and(|p| !p.is_valid_in(g))
    {
        bad.push(format!("{:?}: perfect matching {perfect:?}", g.edges()));
    }

    // Bipartite matcher on the cross edges of the even/odd split.
    let cross: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| (u + v) % 2 == 1)
        .collect();
    let b = Graph::from_edges(g.n(), &cross).unwrap();
    let left: Vec<usize> = (0..g.n()).step_by(2).collect();
    let right: Vec<usize> = (1..g.n()).step_by(2).collect();
    let best = brute_matching_size(&b);
    match max_bipartite_matching(&b, &left, &right) {
        Ok(m) if m.is_valid_in(&b) && m.len() == best => {}
        other => bad.push(format!("{:?}: bipartite {other:?} vs {best}", b.edges())),
    }
    if let Some(side) = g.bipartition() {
        let l: Vec<usize> = (0..g.n()).filter(|&v| !side[v]).collect();
        let r: Vec<usize> = (0..g.n()).filter(|&v| side[v]).collect();
        match max_bipartite_matching(g, &l, &r) {
            Ok(m) if m.is_valid_in(g) && m.len() == brute_matching_size(g) => {}
            other => bad.push(format!("{:?}: bipartite {other:?}", g.edges())),
        }
    }
    bad
}

fn criterion_8() -> Report {
    let mut r = Report::new();
    let mut exhaustive = 0;
    for n in 0..=6 {
        for g in all_labelled(n) {
            exhaustive += 1;
            r.failures.extend(check_matchings(&g));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.gen_range(7..=9);
        let p = rng.gen_range(0.1..0.9);
        r.failures
            .extend(check_matchings(&random_graph(&mut rng, n, p)));
    }
    r.note(format!(
        "{exhaustive} labelled graphs n<=6 and 1000 random n in 7..=9"
    ));
    r
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Report);
    let criteria: [Criterion; 8] = [
        (1, "observation sweep", criterion_1),
        (2, "tight solver equivalence", criterion_2),
        (3, "extension engine", criterion_3),
        (4, "fall solver equivalence", criterion_4),
        (5, "gadget structure", criterion_5),
        (6, "reduction equivalence", criterion_6),
        (7, "dichotomy classifier", criterion_7),
        (8, "matching", criterion_8),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|s| s.parse().ok());
    let mut unexpected = 0;
    for (id, title, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t0 = Instant::now();
        let report = run();
        let secs = t0.elapsed().as_secs_f64();
        let known = KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id);
        let verdict = if report.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {id} ({title}): {verdict} [{secs:.1}s] {}",
            report.notes.join("; ")
        );
        for f in report.failures.iter().take(10) {
            println!("    {f}");
        }
        if report.failures.len() > 10 {
            println!("    ... {} more", report.failures.len() - 10);
        }
        match known {
            Some((_, why))
                if report
                    .failures
                    .iter()
                    .all(|f| f.contains("known deviation"))
                    && !report.failures.is_empty() =>
            {
                println!("    known deviation: {why}");
            }
            _ if report.failures.is_empty() => {}
            _ => unexpected += 1,
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
