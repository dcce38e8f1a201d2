//! Decomposing a nontrivial circuit into smaller circuits that pairwise
//! overlap in cliques through a contracted edge.
//!
//! Given a nontrivial circuit S and an edge uv of it, the contraction S/uv is
//! a cycle; partition it into circuits, pull each part back through the
//! contraction, and complete each pre-image with the uniquely determined set
//! of (k+1)-sets through {u,v} whose u- and v-deletions lie on the part's
//! boundary. Each completed part is again a circuit, the parts symmetric-
//! difference back to S, cover its edges, and can be ordered so that every
//! part meets the union of its predecessors in at least k+1 vertices.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::simplicial::iso::is_isomorphic;
use crate::simplicial::{
    canonical_lk, Simplex, SimplicialError, SimplicialMulticomplex, VertexId,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FogelsangerError {
    #[error("input is not a simplicial circuit")]
    NotACircuit,
    #[error("input circuit is trivial")]
    TrivialCircuit,
    #[error("{0}{1} is not an edge of the complex")]
    NotAnEdge(VertexId, VertexId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// The completion sets of a complex at a vertex pair.
///
/// `dagger` holds every (k+1)-set K through {u,v} whose deletions K-u and
/// K-v are both (k-1)-faces; `star` is the subset whose deletions lie on the
/// boundary. If S/uv is a circuit then S △ star is a circuit, and star is the
/// unique subset of dagger with that property.
pub fn star_completion(
    s: &SimplicialMulticomplex,
    u: VertexId,
    v: VertexId,
) -> Result<(SimplicialMulticomplex, SimplicialMulticomplex), FogelsangerError> {
    if u == v {
        return Err(FogelsangerError::Precondition("u = v".into()));
    }
    let k = s.dim();
    let verts = s.vertex_set();
    let faces = s.faces_of_dim(k - 1);
    let boundary: BTreeSet<Simplex> = s.boundary().distinct_facets().cloned().collect();
    let others: Vec<VertexId> = verts
        .iter()
        .copied()
        .filter(|&w| w != u && w != v)
        .collect();
    let mut dagger = Vec::new();
    let mut star = Vec::new();
    for t in others.iter().copied().combinations((k - 1) as usize) {
        let mut kvs = t.clone();
        kvs.push(u);
        kvs.push(v);
        let kset = Simplex::new(kvs).expect("distinct");
        let ku = kset.minus(u);
        let kv = kset.minus(v);
        if faces.contains(&ku) && faces.contains(&kv) {
            dagger.push(kset.clone());
            if boundary.contains(&ku) && boundary.contains(&kv) {
                star.push(kset);
            }
        }
    }
    Ok((
        SimplicialMulticomplex::new(k, dagger)?,
        SimplicialMulticomplex::new(k, star)?,
    ))
}

/// One part of a decomposition: the pre-image of a circuit of S/uv, its
/// completion simplices, their union, and the image circuit it contracts
/// back onto.
#[derive(Clone, Debug, Serialize)]
pub struct Part {
    pub base: SimplicialMulticomplex,
    pub star: SimplicialMulticomplex,
    pub plus: SimplicialMulticomplex,
    pub contracted: SimplicialMulticomplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub source: SimplicialMulticomplex,
    pub u: VertexId,
    pub v: VertexId,
    pub parts: Vec<Part>,
}

/// Builds a decomposition of a nontrivial circuit with respect to an edge.
/// Deterministic: the contraction is partitioned by repeated fundamental-
/// circuit extraction, and the parts are ordered greedily by crossing
/// cliques.
pub fn decompose(
    s: &SimplicialMulticomplex,
    u: VertexId,
    v: VertexId,
) -> Result<Decomposition, FogelsangerError> {
    if !s.is_circuit() {
        return Err(FogelsangerError::NotACircuit);
    }
    if s.is_trivial_circuit() {
        return Err(FogelsangerError::TrivialCircuit);
    }
    if !s
        .distinct_facets()
        .any(|f| f.contains(u) && f.contains(v))
    {
        return Err(FogelsangerError::NotAnEdge(u, v));
    }
    let contraction = s.contract(u, v)?;
    let image_parts = contraction.image.partition_into_circuits()?;
    let bases = contraction.preimage_partition(&image_parts);
    let mut parts = Vec::new();
    for base in bases {
        debug_assert!(
            base.contains_vertex(u) && base.contains_vertex(v),
            "a part avoiding u or v would be a proper sub-circuit"
        );
        let (_, star) = star_completion(&base, u, v)?;
        let plus = base.symm_diff(&star)?;
        debug_assert_eq!(plus.size(), base.size() + star.size(), "base and star overlap");
        let contracted = plus.contract(u, v)?.image;
        parts.push(Part {
            base,
            star,
            plus,
            contracted,
        });
    }
    order_parts(s, u, v, &mut parts);
    Ok(Decomposition {
        source: s.clone(),
        u,
        v,
        parts,
    })
}

/// Reorders parts so each one shares a crossing non-facial clique through
/// {u,v} with the symmetric difference of its predecessors; such an order
/// exists whenever the crossing-clique property holds.
fn order_parts(s: &SimplicialMulticomplex, u: VertexId, v: VertexId, parts: &mut Vec<Part>) {
    if parts.len() <= 1 {
        return;
    }
    let g = Graph::of_complex(s);
    let mut ordered: Vec<Part> = vec![parts.remove(0)];
    let mut diff = ordered[0].plus.clone();
    while !parts.is_empty() {
        let pick = parts.iter().position(|cand| {
            cand.plus.distinct_facets().any(|kk| {
                kk.contains(u)
                    && kk.contains(v)
                    && diff.contains_facet(kk)
                    && !s.contains_facet(kk)
                    && g.is_clique(&kk.vertices().iter().copied().collect())
            })
        });
        // fall back to vertex overlap if no crossing clique is found
        let pick = pick.unwrap_or_else(|| {
            let union: BTreeSet<VertexId> = ordered
                .iter()
                .flat_map(|p| p.plus.vertex_set())
                .collect();
            parts
                .iter()
                .position(|cand| {
                    cand.plus
                        .vertex_set()
                        .intersection(&union)
                        .count()
                        >= (s.dim() + 1) as usize
                })
                .unwrap_or(0)
        });
        let part = parts.remove(pick);
        diff = diff.symm_diff(&part.plus).expect("same dimension");
        ordered.push(part);
    }
    *parts = ordered;
}

/// Outcome of checking a decomposition against its guarantees.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    /// each part contracts to a circuit
    pub contracted_parts_are_circuits: bool,
    /// each part is a nontrivial circuit
    pub parts_are_nontrivial_circuits: bool,
    /// every completion simplex outside S is a clique of G(S) through {u,v}
    pub new_simplices_are_cliques_with_uv: bool,
    /// each facet of S avoiding {u,v} lies in exactly one part
    pub unique_membership: bool,
    /// the symmetric difference of the parts is S
    pub symm_diff_identity: bool,
    /// uv is an edge of every part
    pub uv_in_every_part: bool,
    /// the parts' edges cover E(S)
    pub edge_cover: bool,
    /// every proper nonempty subset of parts shares a crossing non-facial
    /// clique through {u,v} with its complement
    pub crossing_cliques: bool,
    /// each part meets the union of its predecessors in >= k+1 vertices
    pub overlap_inequality: bool,
    pub failures: Vec<String>,
}

impl DecompositionReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_decomposition(dec: &Decomposition) -> DecompositionReport {
    let s = &dec.source;
    let (u, v) = (dec.u, dec.v);
    let k = s.dim();
    let g = Graph::of_complex(s);
    let mut failures = Vec::new();

    let contracted_parts_are_circuits = dec.parts.iter().enumerate().all(|(i, p)| {
        let ok = p.contracted.is_circuit()
            && p.plus
                .contract(u, v)
                .map(|c| c.image == p.contracted)
                .unwrap_or(false);
        if !ok {
            failures.push(format!("part {i}: contraction is not a circuit"));
        }
        ok
    });

    let parts_are_nontrivial_circuits = dec.parts.iter().enumerate().all(|(i, p)| {
        let ok = p.plus.is_nontrivial_circuit();
        if !ok {
            failures.push(format!("part {i}: not a nontrivial circuit"));
        }
        ok
    });

    let new_simplices_are_cliques_with_uv = dec.parts.iter().enumerate().all(|(i, p)| {
        let ok = p
            .plus
            .distinct_facets()
            .filter(|f| !s.contains_facet(f))
            .all(|f| {
                f.contains(u)
                    && f.contains(v)
                    && g.is_clique(&f.vertices().iter().copied().collect())
            });
        if !ok {
            failures.push(format!("part {i}: a new simplex is not a uv-clique"));
        }
        ok
    });

    let unique_membership = {
        let mut ok = true;
        for f in s.distinct_facets() {
            if f.contains(u) && f.contains(v) {
                continue;
            }
            let count = dec
                .parts
                .iter()
                .filter(|p| p.plus.contains_facet(f))
                .count();
            if count != 1 {
                failures.push(format!("facet {f} lies in {count} parts"));
                ok = false;
            }
        }
        ok
    };

    let symm_diff_identity = {
        let mut acc = SimplicialMulticomplex::empty(k);
        for p in &dec.parts {
            acc = acc.symm_diff(&p.plus).expect("same dimension");
        }
        let ok = acc == *s;
        if !ok {
            failures.push("symmetric difference of parts differs from S".into());
        }
        ok
    };

    let uv_in_every_part = dec.parts.iter().enumerate().all(|(i, p)| {
        let ok = p
            .plus
            .distinct_facets()
            .any(|f| f.contains(u) && f.contains(v));
        if !ok {
            failures.push(format!("part {i}: uv is not an edge of the part"));
        }
        ok
    });

    let edge_cover = {
        let mut covered = Graph::new();
        for p in &dec.parts {
            covered = covered.union(&Graph::of_complex(&p.plus));
        }
        let ok = g.edges().iter().all(|&(a, b)| covered.has_edge(a, b));
        if !ok {
            failures.push("parts do not cover E(S)".into());
        }
        ok
    };

    let crossing_cliques = {
        let m = dec.parts.len();
        let mut ok = true;
        if m > 20 {
            failures.push("too many parts to enumerate index subsets".into());
            ok = false;
        } else if m >= 2 {
            for mask in 1..((1u32 << m) - 1) {
                let mut diff = SimplicialMulticomplex::empty(k);
                for (i, p) in dec.parts.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        diff = diff.symm_diff(&p.plus).expect("same dimension");
                    }
                }
                let found = dec.parts.iter().enumerate().any(|(j, p)| {
                    mask & (1 << j) == 0
                        && diff.distinct_facets().any(|kk| {
                            kk.contains(u)
                                && kk.contains(v)
                                && !s.contains_facet(kk)
                                && p.plus.contains_facet(kk)
                                && g.is_clique(&kk.vertices().iter().copied().collect())
                        })
                });
                if !found {
                    failures.push(format!("no crossing clique for index set {mask:#b}"));
                    ok = false;
                    break;
                }
            }
        }
        ok
    };

    let overlap_inequality = {
        let mut ok = true;
        let mut union: BTreeSet<VertexId> = BTreeSet::new();
        for (i, p) in dec.parts.iter().enumerate() {
            let vs = p.plus.vertex_set();
            if i > 0 && vs.intersection(&union).count() < (k + 1) as usize {
                failures.push(format!("part {i} meets its predecessors in < k+1 vertices"));
                ok = false;
            }
            union.extend(vs);
        }
        ok
    };

    DecompositionReport {
        contracted_parts_are_circuits,
        parts_are_nontrivial_circuits,
        new_simplices_are_cliques_with_uv,
        unique_membership,
        symm_diff_identity,
        uv_in_every_part,
        edge_cover,
        crossing_cliques,
        overlap_inequality,
        failures,
    }
}

/// Result of completing a proper subfamily whose boundary spans k+1 vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgeryK1 {
    /// The subfamily is the single simplex on its boundary vertices.
    Degenerate,
    /// `S1 ∪ {X}`, a circuit.
    Completed(SimplicialMulticomplex),
}

/// For a proper subfamily S1 of a circuit with |V(∂S1)| = k+1: either S1 is
/// the single simplex on those vertices, or S1 plus that simplex is a
/// circuit.
pub fn boundary_surgery_k1(
    s: &SimplicialMulticomplex,
    s1: &SimplicialMulticomplex,
) -> Result<SurgeryK1, FogelsangerError> {
    if !s.is_circuit() {
        return Err(FogelsangerError::NotACircuit);
    }
    check_proper_subfamily(s, s1)?;
    let k = s.dim();
    let x: Vec<VertexId> = s1.boundary().vertex_set().into_iter().collect();
    if x.len() != (k + 1) as usize {
        return Err(FogelsangerError::Precondition(format!(
            "boundary spans {} vertices, need k+1 = {}",
            x.len(),
            k + 1
        )));
    }
    let xs = Simplex::new(x).expect("distinct");
    if s1.size() == 1 && s1.contains_facet(&xs) {
        return Ok(SurgeryK1::Degenerate);
    }
    let completed = s1.symm_diff(&SimplicialMulticomplex::new(k, [xs])?)?;
    Ok(SurgeryK1::Completed(completed))
}

/// For a proper subfamily S1 with |V(∂S1)| = k+2 and ∂S1 isomorphic to the
/// canonical (k-1)-circuit on k+2 vertices: given non-adjacent w, z of
/// G(∂S1) and x, y in V(∂S1) with S/xy a circuit, the family
/// S1 △ {X-w, X-z} is a circuit. Requires {x,y} != {w,z}.
#[allow(clippy::too_many_arguments)]
pub fn boundary_surgery_k2(
    s: &SimplicialMulticomplex,
    s1: &SimplicialMulticomplex,
    w: VertexId,
    z: VertexId,
    x: VertexId,
    y: VertexId,
) -> Result<SimplicialMulticomplex, FogelsangerError> {
    if !s.is_circuit() {
        return Err(FogelsangerError::NotACircuit);
    }
    check_proper_subfamily(s, s1)?;
    let k = s.dim();
    let b = s1.boundary();
    let xv = b.vertex_set();
    if xv.len() != (k + 2) as usize {
        return Err(FogelsangerError::Precondition(format!(
            "boundary spans {} vertices, need k+2 = {}",
            xv.len(),
            k + 2
        )));
    }
    let canonical = canonical_lk(
        (k - 1) as u32,
        &xv.iter().copied().collect::<Vec<_>>(),
    )?;
    if !is_isomorphic(&b, &canonical) {
        return Err(FogelsangerError::Precondition(
            "boundary of S1 is not the canonical (k-1)-circuit on k+2 vertices".into(),
        ));
    }
    for t in [w, z, x, y] {
        if !xv.contains(&t) {
            return Err(FogelsangerError::Precondition(format!(
                "{t} is not a boundary vertex"
            )));
        }
    }
    let gb = Graph::of_complex(&b);
    if gb.has_edge(w, z) {
        return Err(FogelsangerError::Precondition(format!(
            "{w} and {z} are adjacent in the boundary"
        )));
    }
    if BTreeSet::from([x, y]) == BTreeSet::from([w, z]) {
        return Err(FogelsangerError::Precondition(
            "{x,y} must differ from {w,z}".into(),
        ));
    }
    if !s.contract(x, y)?.image.is_circuit() {
        return Err(FogelsangerError::Precondition(format!(
            "S/{x}{y} is not a circuit"
        )));
    }
    let xs: Vec<VertexId> = xv.iter().copied().collect();
    let full = Simplex::new(xs).expect("distinct");
    let caps = SimplicialMulticomplex::new(k, [full.minus(w), full.minus(z)])?;
    Ok(s1.symm_diff(&caps)?)
}

fn check_proper_subfamily(
    s: &SimplicialMulticomplex,
    s1: &SimplicialMulticomplex,
) -> Result<(), FogelsangerError> {
    let proper = s1.size() < s.size()
        && !s1.is_empty()
        && s1.entries().all(|(f, m)| s.multiplicity(f) >= m);
    if proper {
        Ok(())
    } else {
        Err(FogelsangerError::Precondition(
            "S1 must be a proper nonempty subfamily of S".into(),
        ))
    }
}
