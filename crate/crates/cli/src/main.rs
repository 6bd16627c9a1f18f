//! `bchroma`: command-line front end for the b-colouring, tight b-colouring
//! and fall colouring algorithms, their oracles and the reduction gadgets.
//!
//! Every command prints one JSON report (sorted keys, `schema: 1`) and exits
//! with 0 for ok/yes, 1 for no, 2 for inconclusive and 3 for errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use bchroma::fall::{fall_p3p1_free, FallError};
use bchroma::formula::Formula33;
use bchroma::gadgets::{
    audit_certificate, family, verify_reduction, Equivalence, Family, ReductionCertificate,
    ReductionInput, ReductionKind, StructuralCheck, VerifyOptions,
};
use bchroma::io::{parse_dimacs, parse_edge_list, parse_formula, write_dimacs, write_formula};
use bchroma::oracles::{
    b_chromatic_number, chromatic_number, fall_spectrum, min_maximal_matching,
    three_edge_colouring, tight_b_exact, Budget, Outcome,
};
use bchroma::pattern::{classify, contains_induced, PatternName, Problem};
use bchroma::tight::{tight_b_2p2p1_free, tight_b_p3p1_free};
use bchroma::{analyze_tight, is_fall_colouring, is_tight_b_colouring, Colouring, Graph};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "bchroma",
    version,
    about = "b-colouring, tight b-colouring and fall colouring tools"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// m-degree, dense set, boundary, tightness and co-components.
    Analyze { graph: PathBuf },
    /// Decide whether a tight graph has a b-colouring with m colours.
    Tightb {
        graph: PathBuf,
        /// Skip the polynomial algorithms and run the exact search.
        #[arg(long)]
        force_oracle: bool,
        /// Search-node limit for the exact search.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Fall spectrum, with the polynomial path for (P3+P1)-free graphs.
    Fall {
        graph: PathBuf,
        #[arg(long)]
        force_oracle: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Complexity of H-free graphs for one or all problems.
    Classify {
        /// Pattern name such as `2P2+P1`, or a graph file.
        pattern: String,
        /// `b`, `tightb`, `fall` or `all`.
        #[arg(long, default_value = "all")]
        problem: String,
    },
    /// Look for an induced copy of each pattern.
    Hfree {
        graph: PathBuf,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
    },
    /// Print a member of an example family as DIMACS.
    Generate { family: String, n: Option<usize> },
    /// Build a reduction instance; writes `<kind>.col` and `<kind>.json`.
    Gadget {
        kind: String,
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Solve both sides of a reduction, or audit an emitted certificate.
    Verify {
        kind: String,
        input: PathBuf,
        /// Certificate JSON written by `gadget`.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Instance DIMACS written by `gadget`.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run one exact solver directly.
    Oracle {
        which: OracleKind,
        graph: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    /// Chromatic number.
    Chi,
    /// b-chromatic number.
    Phi,
    /// Fall spectrum.
    Fall,
    /// Tight b-colouring with m colours.
    Tightb,
    /// 3-edge-colouring of a cubic graph.
    Edge3,
    /// Smallest maximal matching.
    Mmm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    No,
    Inconclusive,
    Error,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::No => 1,
            Status::Inconclusive => 2,
            Status::Error => 3,
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    command: &'static str,
    input_digest: Option<String>,
    path: Option<&'static str>,
    status: Status,
    result: Value,
    witness: Option<Value>,
    oracle_nodes: Option<u64>,
    timing_ms: u128,
    error: Option<String>,
}

/// What a command hands back before timing and serialisation.
struct Done {
    digest: Option<String>,
    path: Option<&'static str>,
    status: Status,
    result: Value,
    witness: Option<Value>,
    nodes: Option<u64>,
}

impl Done {
    fn new(digest: Option<String>, status: Status, result: Value) -> Self {
        Done {
            digest,
            path: None,
            status,
            result,
            witness: None,
            nodes: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = command_name(&cli.command);
    let start = Instant::now();
    let report = match run(cli.command) {
        Ok(o) => RunReport {
            schema: SCHEMA,
            command,
            input_digest: o.digest,
            path: o.path,
            status: o.status,
            result: o.result,
            witness: o.witness,
            oracle_nodes: o.nodes,
            timing_ms: start.elapsed().as_millis(),
            error: None,
        },
        Err(e) => RunReport {
            schema: SCHEMA,
            command,
            input_digest: None,
            path: None,
            status: Status::Error,
            result: Value::Null,
            witness: None,
            oracle_nodes: None,
            timing_ms: start.elapsed().as_millis(),
            error: Some(format!("{e:#}")),
        },
    };
    let status = report.status;
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    // Round-tripping through `Value` sorts object keys.
    let text = serde_json::to_value(&report)
        .and_then(|v| serde_json::to_string_pretty(&v))
        .expect("report serialises");
    let written = match &cli.report {
        Some(path) => {
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
        }
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(Status::Error.code());
    }
    ExitCode::from(status.code())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Tightb { .. } => "tightb",
        Command::Fall { .. } => "fall",
        Command::Classify { .. } => "classify",
        Command::Hfree { .. } => "hfree",
        Command::Generate { .. } => "generate",
        Command::Gadget { .. } => "gadget",
        Command::Verify { .. } => "verify",
        Command::Oracle { .. } => "oracle",
    }
}

fn run(command: Command) -> Result<Done> {
    match command {
        Command::Analyze { graph } => cmd_analyze(&graph),
        Command::Tightb {
            graph,
            force_oracle,
            budget,
        } => cmd_tightb(&graph, force_oracle, budget),
        Command::Fall {
            graph,
            force_oracle,
            budget,
        } => cmd_fall(&graph, force_oracle, budget),
        Command::Classify { pattern, problem } => cmd_classify(&pattern, &problem),
        Command::Hfree { graph, patterns } => cmd_hfree(&graph, &patterns),
        Command::Generate { family, n } => cmd_generate(&family, n),
        Command::Gadget {
            kind,
            input,
            out,
            budget,
        } => cmd_gadget(&kind, &input, &out, budget),
        Command::Verify {
            kind,
            input,
            certificate,
            instance,
            budget,
        } => cmd_verify(
            &kind,
            &input,
            certificate.as_deref(),
            instance.as_deref(),
            budget,
        ),
        Command::Oracle {
            which,
            graph,
            budget,
        } => cmd_oracle(which, &graph, budget),
    }
}

// ---------------------------------------------------------------------------
// Input and configuration

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Reads a graph: `.el` files are 0-based edge lists, everything else DIMACS.
fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "el") {
        parse_edge_list(&text)
    } else {
        parse_dimacs(&text)
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn read_formula(path: &Path) -> Result<Formula33> {
    parse_formula(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn sha256(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// SHA-256 of the canonical DIMACS form, so equal graphs share a digest
/// whatever file format they came from.
fn graph_digest(g: &Graph) -> String {
    sha256(&write_dimacs(g, &[]))
}

/// Node limit: the flag, else `ORACLE_BUDGET`, else the library default.
fn node_limit(flag: Option<u64>) -> Result<u64> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("ORACLE_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("ORACLE_BUDGET must be a node count, got `{v}`")),
        Err(_) => Ok(Budget::default().node_limit),
    }
}

fn budget(flag: Option<u64>) -> Result<Budget> {
    Ok(Budget::default().with_node_limit(node_limit(flag)?))
}

fn colouring_json(c: &Colouring) -> Value {
    json!({ "colours": c.as_slice(), "classes": c.classes(), "k": c.k() })
}

fn to_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serialisable")
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_analyze(path: &Path) -> Result<Done> {
    let g = read_graph(path)?;
    let a = analyze_tight(&g);
    let result = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "m": a.m,
        "dense": a.dense,
        "boundary": a.boundary,
        "is_tight": a.is_tight,
        "co_components": g.co_components(),
    });
    Ok(Done::new(Some(graph_digest(&g)), Status::Ok, result))
}

fn cmd_tightb(path: &Path, force_oracle: bool, nodes: Option<u64>) -> Result<Done> {
    let g = read_graph(path)?;
    let a = analyze_tight(&g);
    if !a.is_tight {
        let d = a.m.saturating_sub(1);
        bail!(
            "graph is not tight: m = {}, so it needs exactly {} vertices of degree >= {}, \
             all of degree exactly {}; found {} such vertices with degrees {:?}",
            a.m,
            a.m,
            d,
            d,
            a.dense.len(),
            a.dense.iter().map(|&v| g.degree(v)).collect::<Vec<_>>()
        );
    }
    let mut out = Done::new(Some(graph_digest(&g)), Status::Ok, Value::Null);
    let mut answer = None;
    if !force_oracle {
        if let Ok(r) = tight_b_2p2p1_free(&g) {
            out.path = Some("2p2p1_free");
            answer = Some(r);
        } else if let Ok(r) = tight_b_p3p1_free(&g) {
            out.path = Some("p3p1_free");
            answer = Some(r);
        }
    }
    let answer = match answer {
        Some(Some(c)) => Outcome::Found(c),
        Some(None) => Outcome::Absent,
        None => {
            out.path = Some("oracle");
            let r = tight_b_exact(&g, node_limit(nodes)?)?;
            out.nodes = Some(r.nodes);
            r.value
        }
    };
    out.status = match &answer {
        Outcome::Found(c) => {
            if !is_tight_b_colouring(&g, c)? {
                bail!("internal error: witness failed validation");
            }
            out.witness = Some(colouring_json(c));
            Status::Ok
        }
        Outcome::Absent => Status::No,
        Outcome::Inconclusive => Status::Inconclusive,
    };
    out.result = json!({
        "m": a.m,
        "has_tight_b_colouring": match answer {
            Outcome::Found(_) => Some(true),
            Outcome::Absent => Some(false),
            Outcome::Inconclusive => None,
        },
    });
    Ok(out)
}

fn cmd_fall(path: &Path, force_oracle: bool, nodes: Option<u64>) -> Result<Done> {
    let g = read_graph(path)?;
    let mut out = Done::new(Some(graph_digest(&g)), Status::Ok, Value::Null);
    let poly = if force_oracle {
        None
    } else {
        match fall_p3p1_free(&g) {
            Ok(r) => Some(r),
            Err(FallError::NotP3P1Free) => None,
            Err(e) => return Err(e.into()),
        }
    };
    let (spectrum, breakdown) = match poly {
        Some(r) => {
            out.path = Some("p3p1_free");
            (r.spectrum, Some(to_json(&r.per_component)))
        }
        None => {
            out.path = Some("oracle");
            let r = fall_spectrum(&g, &budget(nodes)?)?;
            out.nodes = Some(r.nodes);
            (r.value, None)
        }
    };
    for c in &spectrum.witnesses {
        if !is_fall_colouring(&g, c)? {
            bail!("internal error: witness failed validation");
        }
    }
    out.status = if spectrum.is_empty() {
        Status::No
    } else {
        Status::Ok
    };
    out.witness = (!spectrum.is_empty())
        .then(|| Value::Array(spectrum.witnesses.iter().map(colouring_json).collect()));
    out.result = json!({
        "spectrum": spectrum.values,
        "fall_chromatic": spectrum.min(),
        "fall_achromatic": spectrum.max(),
        "fall_unique": spectrum.is_fall_unique(),
        "per_component": breakdown,
    });
    Ok(out)
}

/// A pattern given by name or as a graph file.
fn read_pattern(spec: &str) -> Result<(String, Graph)> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok((spec.to_string(), read_graph(path)?));
    }
    let p: PatternName = spec.parse().map_err(|e| anyhow!("{e}"))?;
    Ok((p.to_string(), p.graph()))
}

fn cmd_classify(pattern: &str, problem: &str) -> Result<Done> {
    let (name, h) = read_pattern(pattern)?;
    let problems = if problem == "all" {
        vec![Problem::BChromatic, Problem::TightBChromatic, Problem::Fall]
    } else {
        vec![problem.parse::<Problem>().map_err(|e| anyhow!(e))?]
    };
    let verdicts: Vec<Value> = problems
        .into_iter()
        .map(|p| to_json(&classify(p, &h)))
        .collect();
    let result = json!({ "pattern": name, "verdicts": verdicts });
    Ok(Done::new(Some(graph_digest(&h)), Status::Ok, result))
}

fn cmd_hfree(path: &Path, patterns: &[String]) -> Result<Done> {
    let g = read_graph(path)?;
    let mut all_free = true;
    let mut found = Vec::new();
    for spec in patterns {
        let (name, h) = read_pattern(spec)?;
        let copy = contains_induced(&g, &h);
        all_free &= copy.is_none();
        found.push(json!({ "pattern": name, "free": copy.is_none(), "induced_copy": copy }));
    }
    Ok(Done::new(
        Some(graph_digest(&g)),
        if all_free { Status::Ok } else { Status::No },
        json!({ "patterns": found, "free_of_all": all_free }),
    ))
}

fn cmd_generate(name: &str, n: Option<usize>) -> Result<Done> {
    let f: Family = name.parse()?;
    let g = family(f, n.unwrap_or(0))?;
    let label = match n {
        Some(n) => format!("{f} n={n}"),
        None => f.to_string(),
    };
    let result = json!({ "family": f, "n": n, "dimacs": write_dimacs(&g, &[&label]) });
    Ok(Done::new(Some(graph_digest(&g)), Status::Ok, result))
}

fn read_input(kind: ReductionKind, path: &Path) -> Result<(ReductionInput, String)> {
    if kind.takes_formula() {
        let f = read_formula(path)?;
        let digest = sha256(&write_formula(&f));
        Ok((ReductionInput::Formula(f), digest))
    } else {
        let g = read_graph(path)?;
        let digest = graph_digest(&g);
        Ok((ReductionInput::Graph(g), digest))
    }
}

fn verify_options(nodes: Option<u64>) -> Result<VerifyOptions> {
    let limit = node_limit(nodes)?;
    Ok(VerifyOptions {
        budget: Budget::default().with_node_limit(limit),
        source_nodes: limit,
        instance_nodes: limit,
    })
}

fn certificate_status(cert: &ReductionCertificate) -> Status {
    if !cert.checks_pass() {
        return Status::No;
    }
    match cert.equivalence_status {
        Equivalence::Verified | Equivalence::StructuralOnly => Status::Ok,
        Equivalence::Inconclusive => Status::Inconclusive,
        Equivalence::Inconsistent => Status::Error,
    }
}

fn cmd_gadget(kind: &str, input: &Path, out_dir: &Path, nodes: Option<u64>) -> Result<Done> {
    let kind: ReductionKind = kind.parse()?;
    let (input, digest) = read_input(kind, input)?;
    let cert = verify_reduction(kind, &input, &verify_options(nodes)?)?;
    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let label = format!("{kind} instance; {}", cert.input_summary);
    let col = out_dir.join(format!("{kind}.col"));
    let cert_path = out_dir.join(format!("{kind}.json"));
    std::fs::write(&col, write_dimacs(&cert.instance, &[&label]))
        .with_context(|| format!("writing {}", col.display()))?;
    let text = serde_json::to_string_pretty(&to_json(&cert))?;
    std::fs::write(&cert_path, text + "\n")
        .with_context(|| format!("writing {}", cert_path.display()))?;
    let mut out = Done::new(
        Some(digest),
        certificate_status(&cert),
        json!({
            "instance": col,
            "certificate": cert_path,
            "instance_digest": graph_digest(&cert.instance),
            "instance_vertices": cert.instance.n(),
            "structural_checks": cert.structural_checks,
            "equivalence_status": cert.equivalence_status,
        }),
    );
    out.path = Some("construction");
    Ok(out)
}

fn cmd_verify(
    kind: &str,
    input: &Path,
    certificate: Option<&Path>,
    instance: Option<&Path>,
    nodes: Option<u64>,
) -> Result<Done> {
    let kind: ReductionKind = kind.parse()?;
    let (input, digest) = read_input(kind, input)?;
    let Some(cert_path) = certificate else {
        if instance.is_some() {
            bail!("--instance needs --certificate");
        }
        let cert = verify_reduction(kind, &input, &verify_options(nodes)?)?;
        let mut out = Done::new(Some(digest), certificate_status(&cert), to_json(&cert));
        out.path = Some("solve_both_sides");
        return Ok(out);
    };
    let cert: ReductionCertificate = serde_json::from_str(&read_text(cert_path)?)
        .with_context(|| format!("parsing certificate {}", cert_path.display()))?;
    if cert.kind != kind {
        bail!("certificate is for `{}`, not `{kind}`", cert.kind);
    }
    let mut checks = audit_certificate(&cert)?;
    checks.push(StructuralCheck {
        name: "input_matches_certificate".into(),
        pass: cert.input == input,
    });
    if let Some(p) = instance {
        let h = read_graph(p)?;
        checks.push(StructuralCheck {
            name: "instance_file_matches".into(),
            pass: graph_digest(&h) == graph_digest(&cert.instance),
        });
    }
    let ok = checks.iter().all(|c| c.pass);
    let mut out = Done::new(
        Some(digest),
        if ok { Status::Ok } else { Status::No },
        json!({ "checks": checks, "equivalence_status": cert.equivalence_status }),
    );
    out.path = Some("audit");
    Ok(out)
}

fn cmd_oracle(which: OracleKind, path: &Path, nodes: Option<u64>) -> Result<Done> {
    let g = read_graph(path)?;
    let b = budget(nodes)?;
    let mut out = Done::new(Some(graph_digest(&g)), Status::Ok, Value::Null);
    out.path = Some("oracle");
    match which {
        OracleKind::Chi => {
            let r = chromatic_number(&g, &b)?;
            out.nodes = Some(r.nodes);
            out.result = json!({ "chromatic_number": r.value.0 });
            out.witness = Some(colouring_json(&r.value.1));
        }
        OracleKind::Phi => {
            let r = b_chromatic_number(&g, &b)?;
            out.nodes = Some(r.nodes);
            out.result = json!({ "b_chromatic_number": r.value.0 });
            out.witness = Some(colouring_json(&r.value.1));
        }
        OracleKind::Fall => {
            let r = fall_spectrum(&g, &b)?;
            out.nodes = Some(r.nodes);
            let s = r.value;
            out.status = if s.is_empty() { Status::No } else { Status::Ok };
            out.result = json!({ "spectrum": s.values, "fall_unique": s.is_fall_unique() });
            out.witness = Some(Value::Array(
                s.witnesses.iter().map(colouring_json).collect(),
            ));
        }
        OracleKind::Tightb => {
            let r = tight_b_exact(&g, b.node_limit)?;
            out.nodes = Some(r.nodes);
            out.status = match &r.value {
                Outcome::Found(c) => {
                    out.witness = Some(colouring_json(c));
                    Status::Ok
                }
                Outcome::Absent => Status::No,
                Outcome::Inconclusive => Status::Inconclusive,
            };
            out.result = to_json(&r.value);
        }
        OracleKind::Edge3 => {
            let r = three_edge_colouring(&g, b.node_limit)?;
            out.nodes = Some(r.nodes);
            out.status = if r.value.is_some() {
                Status::Ok
            } else {
                Status::No
            };
            out.result = json!({ "three_edge_colourable": r.value.is_some() });
            out.witness = r.value.as_ref().map(to_json);
        }
        OracleKind::Mmm => {
            let r = min_maximal_matching(&g, b.node_limit)?;
            out.nodes = Some(r.nodes);
            out.result = json!({ "min_maximal_matching": r.value.len() });
            out.witness = Some(to_json(&r.value));
        }
    }
    Ok(out)
}
