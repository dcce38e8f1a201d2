//! File formats: facet files (.fct), edge files (.edg), framework JSON and
//! the versioned verdict envelope emitted by the CLI.
//!
//! Facet files are line oriented: one facet per line as whitespace-separated
//! integer labels, `#` starts a comment, and an optional first non-comment
//! line `dim k` fixes the dimension (otherwise it is inferred from the facet
//! arity, which must then be uniform). Repeated lines accumulate
//! multiplicity. Edge files hold one `u v` pair per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::decision::Verdict;
use crate::fogelsanger::{Decomposition, DecompositionReport};
use crate::graph::{BlockTree, Graph};
use crate::simplicial::{make_complex, SimplicialMulticomplex, VertexId};

#[derive(Error, Debug)]
pub enum IoError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Simplicial(#[from] crate::simplicial::SimplicialError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn parse_facet_file(text: &str) -> Result<SimplicialMulticomplex, IoError> {
    let mut dim: Option<u32> = None;
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for (num, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        if dim.is_none() && facets.is_empty() && line.starts_with("dim") {
            parts.next();
            let k = parts
                .next()
                .ok_or_else(|| IoError::Parse(num + 1, "missing dimension".into()))?
                .parse::<u32>()
                .map_err(|e| IoError::Parse(num + 1, e.to_string()))?;
            dim = Some(k);
            continue;
        }
        let verts: Result<Vec<u32>, _> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| IoError::Parse(num + 1, e.to_string())))
            .collect();
        facets.push(verts?);
    }
    if facets.is_empty() {
        return Err(IoError::Empty);
    }
    let k = match dim {
        Some(k) => k,
        None => {
            let arity = facets[0].len();
            if let Some(bad) = facets.iter().position(|f| f.len() != arity) {
                return Err(IoError::Parse(
                    bad + 1,
                    format!("facet arity {} differs from {}", facets[bad].len(), arity),
                ));
            }
            (arity - 1) as u32
        }
    };
    Ok(make_complex(k, &facets)?)
}

pub fn write_facet_file(s: &SimplicialMulticomplex) -> String {
    let mut out = format!("dim {}\n", s.dim());
    for f in s.instances() {
        let labels: Vec<String> = f.vertices().iter().map(|v| v.0.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_edge_file(text: &str) -> Result<Graph, IoError> {
    let mut g = Graph::new();
    let mut any = false;
    for (num, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 1 {
            // isolated vertex
            let v = toks[0]
                .parse::<u32>()
                .map_err(|e| IoError::Parse(num + 1, e.to_string()))?;
            g.add_vertex(VertexId(v));
            any = true;
            continue;
        }
        if toks.len() != 2 {
            return Err(IoError::Parse(num + 1, format!("expected `u v`, got {line:?}")));
        }
        let a = toks[0]
            .parse::<u32>()
            .map_err(|e| IoError::Parse(num + 1, e.to_string()))?;
        let b = toks[1]
            .parse::<u32>()
            .map_err(|e| IoError::Parse(num + 1, e.to_string()))?;
        if a == b {
            return Err(IoError::Parse(num + 1, "loops are not allowed".into()));
        }
        g.add_edge(VertexId(a), VertexId(b));
        any = true;
    }
    if !any {
        return Err(IoError::Empty);
    }
    Ok(g)
}

pub fn write_edge_file(g: &Graph) -> String {
    let mut out = String::new();
    for (a, b) in g.edges() {
        out.push_str(&format!("{} {}\n", a.0, b.0));
    }
    out
}

/// Framework JSON: {"dim": d, "modulus": p, "points": {"v": [x...]}}.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FrameworkJson {
    pub dim: usize,
    pub modulus: u64,
    pub points: BTreeMap<String, Vec<u64>>,
}

impl FrameworkJson {
    pub fn from_points(d: usize, points: &BTreeMap<VertexId, Vec<u64>>) -> Self {
        FrameworkJson {
            dim: d,
            modulus: crate::linalg::MODULUS,
            points: points
                .iter()
                .map(|(v, xs)| (v.0.to_string(), xs.clone()))
                .collect(),
        }
    }

    pub fn to_points(&self) -> Result<BTreeMap<VertexId, Vec<u64>>, IoError> {
        self.points
            .iter()
            .map(|(k, xs)| {
                let v = k
                    .parse::<u32>()
                    .map_err(|e| IoError::Parse(0, format!("bad vertex key {k}: {e}")))?;
                Ok((VertexId(v), xs.clone()))
            })
            .collect()
    }
}

/// The versioned envelope written by the CLI. Field order is fixed so that
/// identical invocations with identical seeds produce byte-identical output.
#[derive(Serialize, Clone, Debug)]
pub struct VerdictEnvelope {
    pub schema: &'static str,
    pub command: String,
    pub claim: Value,
    pub verdict: Value,
    pub seed: u64,
    pub trials: u32,
    pub modulus: u64,
    pub witnesses: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub certificates: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub audit: Value,
}

pub const SCHEMA: &str = "rigicheck/1";

impl VerdictEnvelope {
    pub fn new(command: &str, verdict: &Verdict, seed: u64, trials: u32) -> Self {
        VerdictEnvelope {
            schema: SCHEMA,
            command: command.to_string(),
            claim: serde_json::to_value(verdict.claim).unwrap(),
            verdict: match verdict.outcome {
                crate::decision::Outcome::True => Value::Bool(true),
                crate::decision::Outcome::False => Value::Bool(false),
                crate::decision::Outcome::Inconclusive => Value::String("inconclusive".into()),
            },
            seed,
            trials,
            modulus: crate::linalg::MODULUS,
            witnesses: verdict.witnesses.clone(),
            certificates: serde_json::to_value(&verdict.certificates).unwrap(),
            audit: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn complex_json(s: &SimplicialMulticomplex) -> Value {
    Value::Array(
        s.instances()
            .map(|f| Value::Array(f.vertices().iter().map(|v| Value::from(v.0)).collect()))
            .collect(),
    )
}

/// Decomposition JSON: the edge, each part's facet lists, and the
/// verification report.
pub fn decomposition_json(dec: &Decomposition, report: &DecompositionReport) -> Value {
    serde_json::json!({
        "edge": [dec.u.0, dec.v.0],
        "parts": dec.parts.iter().map(|p| serde_json::json!({
            "base": complex_json(&p.base),
            "star": complex_json(&p.star),
            "plus": complex_json(&p.plus),
        })).collect::<Vec<_>>(),
        "verification": serde_json::to_value(report).unwrap(),
    })
}

/// Block-tree JSON: sorted vertex arrays and the bipartite incidences.
pub fn block_tree_json(bt: &BlockTree) -> Value {
    serde_json::json!({
        "t": bt.t,
        "blocks": bt.blocks.iter()
            .map(|b| b.iter().map(|v| v.0).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "separators": bt.separators.iter()
            .map(|s| s.iter().map(|v| v.0).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "edges": bt.edges,
    })
}
