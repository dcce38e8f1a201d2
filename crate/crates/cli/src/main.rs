//! Command-line front end: ingest facet/edge files, dispatch to the decision
//! procedures, emit the versioned verdict JSON on stdout (or to a file) and a
//! human-readable summary on stderr.
//!
//! Exit codes: 0 the claim holds, 1 it does not, 2 inconclusive,
//! 3 parse/precondition/internal errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use rigicheck::decision::{self, Claim, Outcome, Verdict};
use rigicheck::fogelsanger;
use rigicheck::graph::planarity::is_plane_triangulation;
use rigicheck::graph::{block_tree, Graph};
use rigicheck::io::{
    block_tree_json, decomposition_json, parse_edge_file, parse_facet_file, write_facet_file,
    FrameworkJson, VerdictEnvelope,
};
use rigicheck::linalg::MODULUS;
use rigicheck::oracle::{self, EnumerationSpec};
use rigicheck::rigidity;
use rigicheck::simplicial::{SimplicialMulticomplex, VertexId};

#[derive(Parser)]
#[command(name = "rigicheck", version, about = "rigidity and global rigidity of simplicial circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// RNG seed; drawn from entropy when absent, always echoed in the output
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of randomized trials per rank decision
    #[arg(long, global = true, default_value_t = 3)]
    trials: u32,
    /// Re-run every finite-field rank in exact rational arithmetic
    #[arg(long, global = true)]
    audit: bool,
    /// Write the verdict JSON here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ComplexInput {
    /// Facet file (.fct)
    #[arg(long)]
    complex: PathBuf,
}

#[derive(Args)]
struct GraphOrComplexInput {
    /// Facet file (.fct); the graph is its 1-skeleton
    #[arg(long, conflicts_with = "graph")]
    complex: Option<PathBuf>,
    /// Edge file (.edg)
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle/circuit/pseudomanifold status of a complex
    CircuitCheck(ComplexInput),
    /// Decompose a circuit with respect to an edge
    Decompose {
        #[command(flatten)]
        input: ComplexInput,
        /// Edge "u,v"; defaults to the canonically first edge
        #[arg(long, value_parser = parse_pair)]
        edge: Option<(u32, u32)>,
    },
    /// Decompose and verify every guarantee, including part rigidity
    FogelsangerVerify {
        #[command(flatten)]
        input: ComplexInput,
        #[arg(long, value_parser = parse_pair)]
        edge: Option<(u32, u32)>,
    },
    /// Clique-separator block tree
    Blocks {
        #[command(flatten)]
        input: GraphOrComplexInput,
        /// Separator size t; defaults to k+1 for complex input
        #[arg(long)]
        t: Option<usize>,
    },
    /// Generic rigidity (randomized exact rank)
    Rigidity {
        #[command(flatten)]
        input: GraphOrComplexInput,
        /// Ambient dimension; defaults to k+1 for complex input
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Global rigidity: theorem-backed for circuits, stress test for graphs
    GlobalRigidity {
        #[command(flatten)]
        input: GraphOrComplexInput,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// uv-coincident rigidity
    Coincident {
        #[command(flatten)]
        input: GraphOrComplexInput,
        #[arg(long, value_parser = parse_pair)]
        pair: (u32, u32),
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Redundancy of an edge in a circuit, via the block tree
    Redundant {
        #[command(flatten)]
        input: ComplexInput,
        #[arg(long, value_parser = parse_pair)]
        edge: (u32, u32),
    },
    /// Edge-count extremality of a circuit, with classification
    Lbt(ComplexInput),
    /// Matroid connectivity of a complex
    MConnected(ComplexInput),
    /// The clique-complex verification algorithm
    Alg81 {
        #[command(flatten)]
        input: GraphOrComplexInput,
        #[arg(long)]
        k: usize,
    },
    /// Stress space and maximal stress-matrix rank at random points
    Stress {
        #[command(flatten)]
        input: GraphOrComplexInput,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Affine reconstruction from equal stress spaces
    Reconstruct {
        #[command(flatten)]
        input: GraphOrComplexInput,
        /// Framework JSON for p
        #[arg(long)]
        p: PathBuf,
        /// Framework JSON for q
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Enumerate small circuits up to isomorphism into an atlas directory
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        max_vertices: usize,
        /// Directory for the atlas (one facet file per circuit + index.json)
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample a framework JSON for a graph (for the reconstruct command)
    SampleFramework {
        #[command(flatten)]
        input: GraphOrComplexInput,
        #[arg(long)]
        dim: Option<usize>,
        /// Instead of fresh points, apply a random invertible affine map to
        /// this framework
        #[arg(long)]
        affine_of: Option<PathBuf>,
        /// File to write
        #[arg(long)]
        to: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected u,v".into());
    }
    let a = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

struct Failure {
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            message: e.to_string(),
        }
    }
}

fn load_complex(path: &Path) -> Result<SimplicialMulticomplex, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::from(format!("{}: {e}", path.display())))?;
    Ok(parse_facet_file(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn load_graph(input: &GraphOrComplexInput) -> Result<(Graph, Option<SimplicialMulticomplex>), Failure> {
    match (&input.complex, &input.graph) {
        (Some(p), None) => {
            let s = load_complex(p)?;
            Ok((Graph::of_complex(&s), Some(s)))
        }
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::from(format!("{}: {e}", p.display())))?;
            Ok((parse_edge_file(&text).map_err(|e| format!("{}: {e}", p.display()))?, None))
        }
        _ => Err(Failure::from("exactly one of --complex/--graph is required")),
    }
}

fn dim_for(dim: Option<usize>, s: &Option<SimplicialMulticomplex>) -> Result<usize, Failure> {
    match (dim, s) {
        (Some(d), _) => Ok(d),
        (None, Some(s)) => Ok((s.dim() + 1) as usize),
        (None, None) => Err(Failure::from("--dim is required with --graph input")),
    }
}

fn load_framework(path: &Path) -> Result<BTreeMap<VertexId, Vec<u64>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::from(format!("{}: {e}", path.display())))?;
    let fj: FrameworkJson = serde_json::from_str(&text)?;
    if fj.modulus != MODULUS {
        return Err(Failure::from(format!(
            "framework modulus {} differs from {}",
            fj.modulus, MODULUS
        )));
    }
    Ok(fj.to_points()?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or_else(rand::random);
    let trials = cli.trials;
    let started = Instant::now();
    match run(&cli.command, seed, trials, cli.audit) {
        Ok(verdict) => {
            let name = command_name(&cli.command);
            let mut envelope = VerdictEnvelope::new(name, &verdict, seed, trials);
            if cli.audit {
                let mut audits = Vec::new();
                let mut all_ok = true;
                for cert in &verdict.certificates {
                    for (label, ok) in oracle::audit_records(&cert.records) {
                        all_ok &= ok;
                        audits.push(json!({"label": label, "rational_matches": ok}));
                    }
                }
                envelope.audit = json!({"rational_reruns": audits, "all_match": all_ok});
                if !all_ok {
                    eprintln!("audit: a rational re-run disagreed with a finite-field rank");
                    return ExitCode::from(3);
                }
            }
            let text = envelope.to_json();
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{text}");
            }
            summarize(name, &verdict, seed, trials, started);
            ExitCode::from(verdict.exit_code() as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(3)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CircuitCheck(..) => "circuit-check",
        Command::Decompose { .. } => "decompose",
        Command::FogelsangerVerify { .. } => "fogelsanger-verify",
        Command::Blocks { .. } => "blocks",
        Command::Rigidity { .. } => "rigidity",
        Command::GlobalRigidity { .. } => "global-rigidity",
        Command::Coincident { .. } => "coincident",
        Command::Redundant { .. } => "redundant",
        Command::Lbt(..) => "lbt",
        Command::MConnected(..) => "m-connected",
        Command::Alg81 { .. } => "alg81",
        Command::Stress { .. } => "stress",
        Command::Reconstruct { .. } => "reconstruct",
        Command::Enumerate { .. } => "enumerate",
        Command::SampleFramework { .. } => "sample-framework",
    }
}

fn summarize(name: &str, v: &Verdict, seed: u64, trials: u32, started: Instant) {
    let verdict = match v.outcome {
        Outcome::True => "true",
        Outcome::False => "false",
        Outcome::Inconclusive => "inconclusive",
    };
    eprintln!(
        "{name:<18} {:?}: {verdict}   (seed {seed}, trials {trials}, {:.1?})",
        v.claim,
        started.elapsed()
    );
    if let Some(reason) = v.witnesses.get("reason") {
        eprintln!("{:<18} reason: {reason}", "");
    }
}

fn run(cmd: &Command, seed: u64, trials: u32, audit: bool) -> Result<Verdict, Failure> {
    match cmd {
        Command::CircuitCheck(input) => {
            let s = load_complex(&input.complex)?;
            let cycle = s.is_cycle();
            let circuit = s.is_circuit();
            let pseudo = s.is_pseudomanifold().ok();
            Ok(Verdict {
                claim: Claim::Circuit,
                outcome: if circuit { Outcome::True } else { Outcome::False },
                witnesses: json!({
                    "cycle": cycle,
                    "circuit": circuit,
                    "trivial": s.is_trivial_circuit(),
                    "pseudomanifold": pseudo,
                    "strongly_connected": s.is_strongly_connected(),
                    "facets": s.size(),
                    "vertices": s.vertex_set().len(),
                    "dim": s.dim(),
                }),
                certificates: vec![],
            })
        }
        Command::Decompose { input, edge } | Command::FogelsangerVerify { input, edge } => {
            let s = load_complex(&input.complex)?;
            let (u, v) = pick_edge(&s, *edge)?;
            let dec = fogelsanger::decompose(&s, u, v)?;
            let report = fogelsanger::verify_decomposition(&dec);
            let mut certificates = Vec::new();
            let mut parts_rigid = true;
            if matches!(cmd, Command::FogelsangerVerify { .. }) {
                let d = (s.dim() + 1) as usize;
                for (i, p) in dec.parts.iter().enumerate() {
                    let g = Graph::of_complex(&p.plus);
                    let (rigid, cert) =
                        rigidity::is_rigid(&g, d, trials, seed.wrapping_add(i as u64));
                    certificates.push(cert);
                    parts_rigid &= rigid;
                }
            }
            let ok = report.all_passed() && parts_rigid;
            Ok(Verdict {
                claim: Claim::FogelsangerDecomposition,
                outcome: if ok { Outcome::True } else { Outcome::False },
                witnesses: decomposition_json(&dec, &report),
                certificates,
            })
        }
        Command::Blocks { input, t } => {
            let (g, s) = load_graph(input)?;
            let t = match (t, &s) {
                (Some(t), _) => *t,
                (None, Some(s)) => (s.dim() + 1) as usize,
                (None, None) => return Err(Failure::from("--t is required with --graph input")),
            };
            let bt = block_tree(&g, t)?;
            Ok(Verdict {
                claim: Claim::BlockTree,
                outcome: Outcome::True,
                witnesses: block_tree_json(&bt),
                certificates: vec![],
            })
        }
        Command::Rigidity { input, dim } => {
            let (g, s) = load_graph(input)?;
            let d = dim_for(*dim, &s)?;
            let (rigid, cert) = rigidity::is_rigid(&g, d, trials, seed);
            let (min_rigid, _) = rigidity::is_min_rigid(&g, d, trials, seed);
            let redundant = if rigid && !min_rigid {
                let (r, c2) = rigidity::is_redundantly_rigid(&g, d, trials, seed);
                Some((r, c2))
            } else if rigid {
                Some((false, cert.clone()))
            } else {
                None
            };
            let mut certificates = vec![cert];
            let redundantly_rigid = redundant.map(|(r, c)| {
                certificates.push(c);
                r
            });
            Ok(Verdict {
                claim: Claim::Rigid,
                outcome: if rigid { Outcome::True } else { Outcome::False },
                witnesses: json!({
                    "dim": d,
                    "rigid": rigid,
                    "minimally_rigid": min_rigid,
                    "redundantly_rigid": redundantly_rigid,
                    "target_rank": rigidity::target_rank(g.n(), d),
                }),
                certificates,
            })
        }
        Command::GlobalRigidity { input, dim } => {
            let (g, s) = load_graph(input)?;
            match s {
                Some(s) if s.is_circuit() => {
                    if let Some(d) = dim {
                        if *d != (s.dim() + 1) as usize {
                            return Err(Failure::from(
                                "circuit input decides dimension k+1; omit --dim",
                            ));
                        }
                    }
                    Ok(decision::globally_rigid_circuit(&s, trials, seed, audit)?)
                }
                _ => {
                    let d = dim_for(*dim, &None).or_else(|_| dim_for(*dim, &s))?;
                    let (ans, cert) = rigidity::is_globally_rigid(&g, d, trials, seed);
                    Ok(Verdict {
                        claim: Claim::GloballyRigid,
                        outcome: if ans { Outcome::True } else { Outcome::False },
                        witnesses: json!({
                            "method": "monte-carlo full-rank stress (one-sided)",
                            "dim": d,
                        }),
                        certificates: vec![cert],
                    })
                }
            }
        }
        Command::Coincident { input, pair, dim } => {
            let (g, s) = load_graph(input)?;
            let d = dim_for(*dim, &s)?;
            let (u, v) = (VertexId(pair.0), VertexId(pair.1));
            let (ans, cert) = rigidity::is_uv_coincident_rigid(&g, u, v, d, trials, seed)?;
            Ok(Verdict {
                claim: Claim::CoincidentRigid,
                outcome: if ans { Outcome::True } else { Outcome::False },
                witnesses: json!({"pair": [pair.0, pair.1], "dim": d}),
                certificates: vec![cert],
            })
        }
        Command::Redundant { input, edge } => {
            let s = load_complex(&input.complex)?;
            Ok(decision::redundant_edge(
                &s,
                VertexId(edge.0),
                VertexId(edge.1),
                trials,
                seed,
            )?)
        }
        Command::Lbt(input) => {
            let s = load_complex(&input.complex)?;
            Ok(decision::lbt_check(&s)?)
        }
        Command::MConnected(input) => {
            let s = load_complex(&input.complex)?;
            Ok(decision::m_connected(&s)?)
        }
        Command::Alg81 { input, k } => {
            let (g, _) = load_graph(input)?;
            Ok(decision::algorithm_81(&g, *k, trials, seed)?)
        }
        Command::Stress { input, dim } => {
            let (g, s) = load_graph(input)?;
            let d = dim_for(*dim, &s)?;
            let (glob, cert) = rigidity::is_globally_rigid(&g, d, trials, seed);
            let raw = rigidity::sample_points(&g, d, None, seed);
            let fw = rigidity::Framework::<rigicheck::linalg::Gf>::from_raw(g.clone(), d, &raw);
            let basis = fw.stress_space();
            Ok(Verdict {
                claim: Claim::GloballyRigid,
                outcome: if glob { Outcome::True } else { Outcome::False },
                witnesses: json!({
                    "dim": d,
                    "stress_space_dim": basis.len(),
                    "stress_rank_needed": g.n() as i64 - d as i64 - 1,
                    "full_rank_stress_found": glob,
                }),
                certificates: vec![cert],
            })
        }
        Command::Reconstruct { input, p, q, dim } => {
            let (g, s) = load_graph(input)?;
            let d = dim_for(*dim, &s)?;
            let p = load_framework(p)?;
            let q = load_framework(q)?;
            Ok(decision::stress_reconstruct_check(&g, &p, &q, d, trials, seed)?)
        }
        Command::Enumerate { k, max_vertices, out } => {
            let spec = EnumerationSpec::new(*k, *max_vertices);
            let circuits = oracle::enumerate_circuits(&spec)?;
            std::fs::create_dir_all(out).map_err(|e| Failure::from(format!("{}: {e}", out.display())))?;
            let mut index = Vec::new();
            for (i, s) in circuits.iter().enumerate() {
                let name = format!("circuit_{i:04}.fct");
                std::fs::write(out.join(&name), write_facet_file(s))
                    .map_err(|e| Failure::from(e.to_string()))?;
                let g = Graph::of_complex(s);
                index.push(json!({
                    "file": name,
                    "vertices": s.vertex_set().len(),
                    "facets": s.size(),
                    "edges": g.m(),
                    "pseudomanifold": s.is_pseudomanifold().ok(),
                    "plane_triangulation": is_plane_triangulation(&g),
                    "complete_graph": g.is_complete(),
                }));
            }
            let index = json!({"k": k, "max_vertices": max_vertices, "count": circuits.len(), "circuits": index});
            std::fs::write(out.join("index.json"), serde_json::to_string_pretty(&index).unwrap())
                .map_err(|e| Failure::from(e.to_string()))?;
            Ok(Verdict {
                claim: Claim::Enumeration,
                outcome: Outcome::True,
                witnesses: index,
                certificates: vec![],
            })
        }
        Command::SampleFramework {
            input,
            dim,
            affine_of,
            to,
        } => {
            let (g, s) = load_graph(input)?;
            let d = dim_for(*dim, &s)?;
            let points = sample_framework(&g, d, affine_of, seed)?;
            let fj = FrameworkJson::from_points(d, &points);
            std::fs::write(to, serde_json::to_string_pretty(&fj).unwrap())
                .map_err(|e| Failure::from(format!("{}: {e}", to.display())))?;
            Ok(Verdict {
                claim: Claim::Enumeration,
                outcome: Outcome::True,
                witnesses: json!({"written": to.display().to_string(), "dim": d, "vertices": g.n()}),
                certificates: vec![],
            })
        }
    }
}

fn sample_framework(
    g: &Graph,
    d: usize,
    affine_of: &Option<PathBuf>,
    seed: u64,
) -> Result<BTreeMap<VertexId, Vec<u64>>, Failure> {
    use rand::Rng;
    use rigicheck::linalg::{Field, Gf};
    match affine_of {
        None => Ok(rigidity::sample_points(g, d, None, seed)),
        Some(path) => {
            let p = load_framework(path)?;
            let mut rng = rand_chacha_rng(seed);
            // random matrix is invertible with overwhelming probability; retry
            // on the null event
            loop {
                let a: Vec<Vec<Gf>> = (0..d)
                    .map(|_| (0..d).map(|_| Gf::from_u64(rng.gen_range(0..MODULUS))).collect())
                    .collect();
                let b: Vec<Gf> = (0..d).map(|_| Gf::from_u64(rng.gen_range(0..MODULUS))).collect();
                if !invertible(&a, d) {
                    continue;
                }
                return Ok(p
                    .iter()
                    .map(|(v, xs)| {
                        let q: Vec<u64> = (0..d)
                            .map(|i| {
                                let mut acc = b[i];
                                for j in 0..d {
                                    acc = acc.add(&a[i][j].mul(&Gf::from_u64(xs[j])));
                                }
                                acc.0
                            })
                            .collect();
                        (*v, q)
                    })
                    .collect());
            }
        }
    }
}

fn rand_chacha_rng(seed: u64) -> impl rand::Rng {
    <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(seed)
}

fn invertible(a: &[Vec<rigicheck::linalg::Gf>], d: usize) -> bool {
    let mut m = rigicheck::linalg::Matrix::zeros(d, d);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m.set(i, j, *x);
        }
    }
    m.rank() == d
}

fn pick_edge(
    s: &SimplicialMulticomplex,
    edge: Option<(u32, u32)>,
) -> Result<(VertexId, VertexId), Failure> {
    match edge {
        Some((a, b)) => Ok((VertexId(a), VertexId(b))),
        None => {
            let f = s
                .distinct_facets()
                .next()
                .ok_or_else(|| Failure::from("empty complex"))?;
            Ok((f.vertices()[0], f.vertices()[1]))
        }
    }
}
