//! Decision procedures with re-checkable verdicts.
//!
//! Each operation answers from structure (connectivity, planarity, block
//! trees, matroid connectivity) where a theorem licenses it, attaches the
//! witnessing data, and can cross-check against the randomized rank
//! machinery. Exit-code semantics: true / false / inconclusive /
//! precondition error.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::planarity::{is_planar, is_plane_triangulation, triangulation_faces};
use crate::graph::{block_tree, has_cleavage_property, vertex_connectivity, Graph};
use crate::linalg::{Field, Gf, MODULUS};
use crate::rigidity::{self, Certificate};
use crate::simplicial::{SimplicialMulticomplex, VertexId};
use crate::z2::Eliminator;

#[derive(Error, Debug)]
pub enum DecisionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    GloballyRigid,
    Rigid,
    RedundantEdge,
    MConnected,
    StackedSphere,
    PlaneTriangulation,
    StrongCleavage,
    LowerBoundExtremal,
    Hendrickson,
    StressReconstruction,
    Circuit,
    CoincidentRigid,
    FogelsangerDecomposition,
    BlockTree,
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    True,
    False,
    Inconclusive,
}

/// A verdict plus enough evidence to re-check it without re-running the
/// decision.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub outcome: Outcome,
    pub witnesses: Value,
    pub certificates: Vec<Certificate>,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::True => 0,
            Outcome::False => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn value(&self) -> Option<bool> {
        match self.outcome {
            Outcome::True => Some(true),
            Outcome::False => Some(false),
            Outcome::Inconclusive => None,
        }
    }
}

fn sep_json(sep: &[VertexId]) -> Value {
    json!(sep.iter().map(|v| v.0).collect::<Vec<_>>())
}

/// Global rigidity of a circuit graph in R^{k+1}, decided structurally:
/// complete graphs on k+1 or k+2 vertices qualify; otherwise (k+2)-
/// connectivity, plus non-planarity when k = 2. With `audit`, the
/// full-rank-stress test is run alongside and its agreement recorded.
pub fn globally_rigid_circuit(
    s: &SimplicialMulticomplex,
    trials: u32,
    seed: u64,
    audit: bool,
) -> Result<Verdict, DecisionError> {
    if !s.is_circuit() {
        return Err(DecisionError::Precondition(
            "input is not a simplicial circuit".into(),
        ));
    }
    let k = s.dim();
    if k < 2 {
        return Err(DecisionError::Precondition(format!(
            "need a circuit of dimension >= 2, got {k}"
        )));
    }
    let d = (k + 1) as usize;
    let g = Graph::of_complex(s);
    let n = g.n();

    let mut witnesses = BTreeMap::new();
    let (value, reason) = if g.is_complete() && n <= d + 1 {
        (true, format!("complete graph on {n} <= d+1 vertices"))
    } else {
        let (kappa, sep) = vertex_connectivity(&g);
        witnesses.insert("connectivity".to_string(), json!(kappa));
        if kappa < d + 1 {
            if let Some(sep) = sep {
                witnesses.insert("separator".to_string(), sep_json(&sep));
            }
            (false, format!("connectivity {kappa} < {}", d + 1))
        } else if k == 2 {
            let planar = is_planar(&g);
            witnesses.insert("planar".to_string(), json!(planar));
            if planar {
                (false, "4-connected but planar".to_string())
            } else {
                (true, "4-connected and non-planar".to_string())
            }
        } else {
            (true, format!("{}-connected", d + 1))
        }
    };
    witnesses.insert("reason".to_string(), json!(reason));

    let mut certificates = Vec::new();
    if audit {
        let (ght, cert) = rigidity::is_globally_rigid(&g, d, trials, seed);
        witnesses.insert("ght_cross_check".to_string(), json!(ght));
        witnesses.insert("ght_agrees".to_string(), json!(ght == value));
        certificates.push(cert);
        if ght != value {
            return Err(DecisionError::Internal(format!(
                "structural verdict {value} disagrees with stress test {ght}"
            )));
        }
    }

    Ok(Verdict {
        claim: Claim::GloballyRigid,
        outcome: if value { Outcome::True } else { Outcome::False },
        witnesses: json!(witnesses),
        certificates,
    })
}

/// Hendrickson's necessary conditions: complete on at most d+1 vertices, or
/// (d+1)-connected and redundantly rigid. A failed screen certifies that the
/// graph is not globally rigid.
pub fn hendrickson_screen(g: &Graph, d: usize, trials: u32, seed: u64) -> Verdict {
    let n = g.n();
    let mut witnesses = BTreeMap::new();
    let mut certificates = Vec::new();
    let value = if n <= d + 1 {
        witnesses.insert("complete".to_string(), json!(g.is_complete()));
        g.is_complete()
    } else {
        let (kappa, sep) = vertex_connectivity(g);
        witnesses.insert("connectivity".to_string(), json!(kappa));
        if kappa < d + 1 {
            if let Some(sep) = sep {
                witnesses.insert("separator".to_string(), sep_json(&sep));
            }
            false
        } else {
            let (red, cert) = rigidity::is_redundantly_rigid(g, d, trials, seed);
            witnesses.insert("redundantly_rigid".to_string(), json!(red));
            certificates.push(cert);
            red
        }
    };
    Verdict {
        claim: Claim::Hendrickson,
        outcome: if value { Outcome::True } else { Outcome::False },
        witnesses: json!(witnesses),
        certificates,
    }
}

/// Edge-count extremality of a circuit: |E| >= d|V| - C(d+1,2) always holds;
/// equality is classified as a stacked sphere (k >= 3) or a plane
/// triangulation whose face set equals the facet set (k = 2).
pub fn lbt_check(s: &SimplicialMulticomplex) -> Result<Verdict, DecisionError> {
    if !s.is_circuit() {
        return Err(DecisionError::Precondition(
            "input is not a simplicial circuit".into(),
        ));
    }
    let k = s.dim();
    if k < 2 {
        return Err(DecisionError::Precondition(format!(
            "need a circuit of dimension >= 2, got {k}"
        )));
    }
    let d = (k + 1) as usize;
    let g = Graph::of_complex(s);
    let (n, m) = (g.n(), g.m());
    let target = d * n - d * (d + 1) / 2;
    let mut witnesses = BTreeMap::new();
    witnesses.insert("edges".to_string(), json!(m));
    witnesses.insert("bound".to_string(), json!(target));
    if m < target {
        return Err(DecisionError::Internal(format!(
            "edge count {m} below the rigidity bound {target}; the input cannot be a circuit"
        )));
    }
    if m > target {
        witnesses.insert("excess".to_string(), json!(m - target));
        return Ok(Verdict {
            claim: Claim::LowerBoundExtremal,
            outcome: Outcome::False,
            witnesses: json!(witnesses),
            certificates: vec![],
        });
    }
    // equality: classify
    if k == 2 {
        let Some(faces) = triangulation_faces(&g) else {
            return Err(DecisionError::Internal(
                "extremal 2-circuit whose graph is not a plane triangulation".into(),
            ));
        };
        let facet_multiset: Vec<_> = s.instances().cloned().collect();
        if faces != facet_multiset {
            return Err(DecisionError::Internal(
                "embedding faces differ from the facet set".into(),
            ));
        }
        witnesses.insert("classification".to_string(), json!("plane-triangulation"));
        witnesses.insert(
            "faces".to_string(),
            json!(faces
                .iter()
                .map(|f| f.vertices().iter().map(|v| v.0).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        );
    } else {
        if !crate::graph::is_stacked_sphere(s) {
            return Err(DecisionError::Internal(
                "extremal circuit of dimension >= 3 that is not a stacked sphere".into(),
            ));
        }
        witnesses.insert("classification".to_string(), json!("stacked-sphere"));
    }
    Ok(Verdict {
        claim: Claim::LowerBoundExtremal,
        outcome: Outcome::True,
        witnesses: json!(witnesses),
        certificates: vec![],
    })
}

/// Redundancy of an edge in a circuit graph, via the block tree: for d >= 4
/// the edge must lie in a (d+1)-connected block; for d = 3 in a 4-connected
/// non-planar block. Cross-checked against the rank of G - e.
pub fn redundant_edge(
    s: &SimplicialMulticomplex,
    a: VertexId,
    b: VertexId,
    trials: u32,
    seed: u64,
) -> Result<Verdict, DecisionError> {
    if !s.is_circuit() {
        return Err(DecisionError::Precondition(
            "input is not a simplicial circuit".into(),
        ));
    }
    let k = s.dim();
    if k < 2 {
        return Err(DecisionError::Precondition(format!(
            "need a circuit of dimension >= 2, got {k}"
        )));
    }
    if a == b || !s.distinct_facets().any(|f| f.contains(a) && f.contains(b)) {
        return Err(DecisionError::Precondition(format!(
            "{a}{b} is not an edge of the complex"
        )));
    }
    let d = (k + 1) as usize;
    let g = Graph::of_complex(s);
    let bt = block_tree(&g, d)
        .map_err(|e| DecisionError::Internal(format!("circuit graph without block tree: {e}")))?;
    let mut block_info = Vec::new();
    let mut value = false;
    for blk in &bt.blocks {
        if !(blk.contains(&a) && blk.contains(&b)) {
            continue;
        }
        let h = g.induced(blk);
        let (kappa, _) = vertex_connectivity(&h);
        let qualifies = if d == 3 {
            kappa >= 4 && !is_planar(&h)
        } else {
            kappa > d
        };
        block_info.push(json!({
            "vertices": blk.iter().map(|v| v.0).collect::<Vec<_>>(),
            "connectivity": kappa,
            "planar": if d == 3 { json!(is_planar(&h)) } else { Value::Null },
            "qualifies": qualifies,
        }));
        value |= qualifies;
    }
    // cross-check against the direct rank answer
    let ge = g.without_edge(a, b);
    let (rank_ans, cert) = rigidity::is_rigid(&ge, d, trials, seed);
    if rank_ans != value {
        return Err(DecisionError::Internal(format!(
            "block-tree answer {value} disagrees with rank of G-e {rank_ans}"
        )));
    }
    Ok(Verdict {
        claim: Claim::RedundantEdge,
        outcome: if value { Outcome::True } else { Outcome::False },
        witnesses: json!({
            "edge": [a.0, b.0],
            "blocks_containing_edge": block_info,
            "rank_cross_check": rank_ans,
        }),
        certificates: vec![cert],
    })
}

/// Every (d+1)-block globally rigid, or (d = 3 only) a plane triangulation.
pub fn strong_cleavage(g: &Graph, d: usize, trials: u32, seed: u64) -> Result<Verdict, DecisionError> {
    if !has_cleavage_property(g, d) {
        return Err(DecisionError::Precondition(format!(
            "graph does not have the {d}-cleavage property"
        )));
    }
    let bt = block_tree(g, d).map_err(|e| DecisionError::Internal(e.to_string()))?;
    let mut value = true;
    let mut blocks = Vec::new();
    let mut certificates = Vec::new();
    for (i, blk) in bt.blocks.iter().enumerate() {
        let h = g.induced(blk);
        let plane = d == 3 && is_plane_triangulation(&h);
        let glob = if plane {
            false
        } else {
            let (ans, cert) = rigidity::is_globally_rigid(&h, d, trials, seed.wrapping_add(i as u64));
            certificates.push(cert);
            ans
        };
        let ok = plane || glob;
        blocks.push(json!({
            "vertices": blk.iter().map(|v| v.0).collect::<Vec<_>>(),
            "plane_triangulation": plane,
            "globally_rigid": glob,
        }));
        value &= ok;
    }
    Ok(Verdict {
        claim: Claim::StrongCleavage,
        outcome: if value { Outcome::True } else { Outcome::False },
        witnesses: json!({"blocks": blocks}),
        certificates,
    })
}

/// Connectivity of the Z2 matroid represented by the boundary columns of a
/// complex: compute fundamental circuits against a greedy basis and take the
/// transitive closure of "lies on a common fundamental circuit". For binary
/// matroids this closure is exactly matroid connectivity.
pub fn m_connected(s: &SimplicialMulticomplex) -> Result<Verdict, DecisionError> {
    if !s.is_complex() {
        return Err(DecisionError::Precondition(
            "matroid connectivity needs a complex without repeated facets".into(),
        ));
    }
    if s.is_empty() {
        return Err(DecisionError::Precondition("empty complex".into()));
    }
    let facets: Vec<_> = s.distinct_facets().cloned().collect();
    let m = facets.len();
    let (components, circuits) = matroid_components(s);
    let value = components.len() == 1 && (m == 1 || circuits > 0);
    Ok(Verdict {
        claim: Claim::MConnected,
        outcome: if value { Outcome::True } else { Outcome::False },
        witnesses: json!({
            "facet_count": m,
            "fundamental_circuits": circuits,
            "components": components
                .iter()
                .map(|c| c.iter().map(|&i| facets[i].to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        certificates: vec![],
    })
}

/// Union-find closure of fundamental circuits; isolated elements (coloops)
/// form their own components.
fn matroid_components(s: &SimplicialMulticomplex) -> (Vec<Vec<usize>>, usize) {
    let k = s.dim();
    let facets: Vec<_> = s.distinct_facets().cloned().collect();
    let mut face_index = BTreeMap::new();
    for f in &facets {
        if k == 0 {
            face_index.entry(crate::simplicial::Simplex::empty()).or_insert(0);
        } else {
            for face in f.faces() {
                let next = face_index.len();
                face_index.entry(face).or_insert(next);
            }
        }
    }
    let mut elim = Eliminator::new();
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let mut in_circuit = vec![false; facets.len()];
    let mut circuits = 0usize;
    for f in &facets {
        let mut col = crate::z2::BitVec::zeros(face_index.len().max(1));
        if k == 0 {
            col.set(0);
        } else {
            for face in f.faces() {
                col.set(face_index[&face]);
            }
        }
        if let Some(dep) = elim.insert(col, facets.len()) {
            circuits += 1;
            let members: Vec<usize> = dep.iter_ones().collect();
            for &x in &members {
                in_circuit[x] = true;
            }
            for w in members.windows(2) {
                let (ra, rb) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..facets.len() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    // coloops (never in a circuit) are isolated even if union-find left them
    // as singletons already; both views coincide
    let _ = in_circuit;
    (comps.into_values().collect(), circuits)
}

/// The clique-complex verification algorithm: gather all (k+1)-cliques,
/// require them to cover the vertices, require the Z2 matroid they span to
/// be connected, and only then report rigidity, plus global rigidity under
/// (k+2)-connectivity and (k = 2) non-planarity. Gate failures yield
/// Inconclusive, never False.
pub fn algorithm_81(g: &Graph, k: usize, _trials: u32, _seed: u64) -> Result<Verdict, DecisionError> {
    if k < 2 {
        return Err(DecisionError::Precondition(format!("need k >= 2, got {k}")));
    }
    let cliques = g.cliques(k + 1);
    if cliques.is_empty() {
        return Ok(Verdict {
            claim: Claim::Rigid,
            outcome: Outcome::Inconclusive,
            witnesses: json!({"reason": "clique set empty"}),
            certificates: vec![],
        });
    }
    let covered: BTreeSet<VertexId> = cliques.iter().flatten().copied().collect();
    if covered != g.vertex_set() {
        let missing: Vec<u32> = g
            .vertices()
            .filter(|v| !covered.contains(v))
            .map(|v| v.0)
            .collect();
        return Ok(Verdict {
            claim: Claim::Rigid,
            outcome: Outcome::Inconclusive,
            witnesses: json!({"reason": "cliques do not cover the vertex set", "uncovered": missing}),
            certificates: vec![],
        });
    }
    let complex = SimplicialMulticomplex::new(
        k as i32,
        cliques
            .iter()
            .map(|c| crate::simplicial::Simplex::new(c.iter().copied().collect()).unwrap()),
    )
    .expect("cliques have k+1 vertices");
    let mc = m_connected(&complex)?;
    if mc.outcome != Outcome::True {
        return Ok(Verdict {
            claim: Claim::Rigid,
            outcome: Outcome::Inconclusive,
            witnesses: json!({
                "reason": "clique matroid is not connected",
                "matroid": mc.witnesses,
            }),
            certificates: vec![],
        });
    }
    // gates passed: rigid; global rigidity from connectivity and planarity
    let n = g.n();
    let globally = if n <= k + 2 {
        g.is_complete()
    } else {
        let (kappa, _) = vertex_connectivity(g);
        kappa >= k + 2 && (k != 2 || !is_planar(g))
    };
    Ok(Verdict {
        claim: Claim::Rigid,
        outcome: Outcome::True,
        witnesses: json!({
            "clique_count": cliques.len(),
            "rigid": true,
            "globally_rigid": globally,
            "dimension": k + 1,
        }),
        certificates: vec![],
    })
}

/// Stress-space reconstruction: verifies S(G,p) = S(G,q), finds a full-rank
/// stress of (G,p), and solves for the affine map carrying p to q.
pub fn stress_reconstruct_check(
    g: &Graph,
    p_raw: &BTreeMap<VertexId, Vec<u64>>,
    q_raw: &BTreeMap<VertexId, Vec<u64>>,
    d: usize,
    trials: u32,
    seed: u64,
) -> Result<Verdict, DecisionError> {
    use rand::{Rng, SeedableRng};
    if vertex_connectivity(g).0 < d + 1 {
        return Err(DecisionError::Precondition(format!(
            "graph is not {}-connected",
            d + 1
        )));
    }
    if d == 3 && is_planar(g) {
        return Err(DecisionError::Precondition("graph is planar".into()));
    }
    let n = g.n();
    let fp = rigidity::Framework::<Gf>::from_raw(g.clone(), d, p_raw);
    let fq = rigidity::Framework::<Gf>::from_raw(g.clone(), d, q_raw);
    let sp = fp.stress_space();
    let sq = fq.stress_space();
    let dim = g.m();
    if !crate::linalg::same_span(&sp, &sq, dim) {
        return Ok(Verdict {
            claim: Claim::StressReconstruction,
            outcome: Outcome::False,
            witnesses: json!({
                "reason": "stress spaces differ",
                "dim_p": sp.len(),
                "dim_q": sq.len(),
            }),
            certificates: vec![],
        });
    }
    // full-rank stress of (G,p)
    let want = n - d - 1;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut full_rank = None;
    let mut tried = Vec::new();
    for t in 0..trials.max(1) {
        let mut omega = vec![Gf(0); dim];
        for b in &sp {
            let c = Gf::from_u64(rng.gen_range(0..MODULUS));
            for (i, x) in b.iter().enumerate() {
                omega[i] = omega[i].add(&c.mul(x));
            }
        }
        let r = fp.stress_matrix(&omega).rank();
        tried.push(r);
        if r == want {
            full_rank = Some(t);
            break;
        }
    }
    let Some(found_at) = full_rank else {
        return Err(DecisionError::Internal(format!(
            "no full-rank stress within {trials} trials (seed {seed}, ranks {tried:?}, want {want})"
        )));
    };
    let pg: BTreeMap<VertexId, Vec<Gf>> = fp.points.clone();
    let qg: BTreeMap<VertexId, Vec<Gf>> = fq.points.clone();
    let Some((a, b)) = rigidity::affine_solve(&pg, &qg, d) else {
        return Err(DecisionError::Internal(
            "stress spaces equal and a full-rank stress exists, yet q is not an affine image of p"
                .into(),
        ));
    };
    Ok(Verdict {
        claim: Claim::StressReconstruction,
        outcome: Outcome::True,
        witnesses: json!({
            "stress_space_dim": sp.len(),
            "full_rank_stress_rank": want,
            "full_rank_found_at_trial": found_at,
            "affine_matrix": a.iter().map(|row| row.iter().map(|x| x.0.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "affine_shift": b.iter().map(|x| x.0.to_string()).collect::<Vec<_>>(),
            "residual": "zero",
        }),
        certificates: vec![],
    })
}
