//! Independent brute-force ground truth.
//!
//! Everything here is deterministic and field-free (pure combinatorics or
//! exact rationals): exhaustive enumeration of small circuits up to
//! isomorphism via the full cycle space, subset-enumeration circuit tests,
//! exhaustive separator search, subdivision-sequence recognition of stacked
//! spheres, and exact-rational replay of finite-field rank certificates.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::Rat;
use crate::rigidity::{replay_probe, Certificate, RankRecord};
use crate::simplicial::iso::canonical_form;
use crate::simplicial::{Simplex, SimplicialMulticomplex, VertexId};
use crate::z2::BitVec;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid enumeration request: {0}")]
    Invalid(String),
}

/// Bounds for exhaustive circuit enumeration.
#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    pub k: u32,
    pub max_vertices: usize,
    pub max_facets: usize,
    /// Hard cap on cycle-space members visited per vertex count.
    pub max_candidates: u64,
}

impl EnumerationSpec {
    pub fn new(k: u32, max_vertices: usize) -> Self {
        EnumerationSpec {
            k,
            max_vertices,
            max_facets: usize::MAX,
            max_candidates: 1 << 22,
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.k == 0 {
            return Err(OracleError::Invalid("k must be at least 1".into()));
        }
        let cap = match self.k {
            1 => 12,
            2 => 9,
            3 => 8,
            k => (k + 5) as usize,
        };
        if self.max_vertices > cap {
            return Err(OracleError::BudgetExceeded(format!(
                "max_vertices {} exceeds the k={} budget {cap}",
                self.max_vertices, self.k
            )));
        }
        Ok(())
    }
}

/// All non-isomorphic nontrivial simplicial k-circuits on at most
/// `max_vertices` vertices, enumerated as the minimal members of the cycle
/// space of the complete (k+1)-uniform complex on each vertex count. Only
/// spanning circuits are canonicalized at each n, so each isomorphism class
/// appears exactly once.
pub fn enumerate_circuits(
    spec: &EnumerationSpec,
) -> Result<Vec<SimplicialMulticomplex>, OracleError> {
    spec.validate()?;
    let k = spec.k as usize;
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut out = Vec::new();
    for n in (k + 2)..=spec.max_vertices {
        enumerate_spanning(spec, n, &mut seen, &mut out)?;
    }
    Ok(out)
}

fn enumerate_spanning(
    spec: &EnumerationSpec,
    n: usize,
    seen: &mut HashSet<Vec<Vec<u32>>>,
    out: &mut Vec<SimplicialMulticomplex>,
) -> Result<(), OracleError> {
    let k = spec.k as usize;
    let facets: Vec<Vec<u32>> = (0..n as u32).combinations(k + 1).collect();
    let m = facets.len();
    let faces: Vec<Vec<u32>> = (0..n as u32).combinations(k).collect();
    if m > 64 || faces.len() > 64 {
        return Err(OracleError::BudgetExceeded(format!(
            "incidence structure too large at n={n} ({m} facets, {} faces)",
            faces.len()
        )));
    }
    let face_idx = |f: &[u32]| faces.binary_search_by(|g| g.as_slice().cmp(f)).unwrap();
    // boundary of each facet as a 64-bit face mask
    let cols: Vec<u64> = facets
        .iter()
        .map(|f| {
            let mut mask = 0u64;
            for i in 0..f.len() {
                let mut face = f.clone();
                face.remove(i);
                mask |= 1 << face_idx(&face);
            }
            mask
        })
        .collect();
    // kernel basis of the boundary matrix, tags over facet indices
    let basis: Vec<u64> = {
        let mut rows: Vec<(u64, u64)> = Vec::new(); // (vec with pivot, tag)
        let mut basis = Vec::new();
        for (i, &c) in cols.iter().enumerate() {
            let (mut v, mut tag) = (c, 1u64 << i);
            loop {
                if v == 0 {
                    basis.push(tag);
                    break;
                }
                let p = v.trailing_zeros();
                match rows.iter().find(|r| r.0.trailing_zeros() == p) {
                    Some(r) => {
                        v ^= r.0;
                        tag ^= r.1;
                    }
                    None => {
                        rows.push((v, tag));
                        break;
                    }
                }
            }
        }
        basis
    };
    let nu = basis.len();
    if nu >= 63 || (1u64 << nu) > spec.max_candidates {
        return Err(OracleError::BudgetExceeded(format!(
            "cycle space dimension {nu} at n={n} exceeds the candidate budget"
        )));
    }
    // Gray-code walk over the cycle space
    let mut support = 0u64;
    for i in 1u64..(1 << nu) {
        support ^= basis[i.trailing_zeros() as usize];
        let count = support.count_ones() as usize;
        if count < k + 2 || count > spec.max_facets {
            continue;
        }
        if !subset_is_circuit(&cols, support) {
            continue;
        }
        // spanning check: every vertex covered
        let mut verts: BTreeSet<u32> = BTreeSet::new();
        for fi in iter_bits(support) {
            verts.extend(facets[fi].iter().copied());
        }
        if verts.len() != n {
            continue;
        }
        let s = SimplicialMulticomplex::new(
            k as i32,
            iter_bits(support).map(|fi| Simplex::from_labels(&facets[fi]).unwrap()),
        )
        .expect("uniform facets");
        let canon = canonical_form(&s);
        if seen.insert(canon) {
            out.push(s);
        }
    }
    Ok(())
}

fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Circuit test for a subset of at most 64 columns over at most 64 faces:
/// kernel of the selected columns must be one-dimensional with full support.
fn subset_is_circuit(cols: &[u64], support: u64) -> bool {
    let members: Vec<usize> = iter_bits(support).collect();
    let mut rows: Vec<(u64, u64)> = Vec::with_capacity(members.len());
    let mut kernel: Option<u64> = None;
    for (j, &fi) in members.iter().enumerate() {
        let (mut v, mut tag) = (cols[fi], 1u64 << j);
        loop {
            if v == 0 {
                if kernel.is_some() {
                    return false;
                }
                kernel = Some(tag);
                break;
            }
            let p = v.trailing_zeros();
            match rows.iter().find(|r| r.0.trailing_zeros() == p) {
                Some(r) => {
                    v ^= r.0;
                    tag ^= r.1;
                }
                None => {
                    rows.push((v, tag));
                    break;
                }
            }
        }
    }
    kernel.is_some_and(|t| t.count_ones() as usize == members.len())
}

/// Subset-enumeration circuit test: a nonempty cycle none of whose proper
/// nonempty sub-multisets is a cycle. Budget: at most 20 facet instances.
pub fn brute_is_circuit(s: &SimplicialMulticomplex) -> Result<bool, OracleError> {
    let m = s.size();
    if m > 20 {
        return Err(OracleError::BudgetExceeded(format!("{m} facet instances > 20")));
    }
    if m == 0 {
        return Ok(false);
    }
    let instances: Vec<&Simplex> = s.instances().collect();
    let mut face_idx = std::collections::BTreeMap::new();
    for f in &instances {
        if s.dim() == 0 {
            face_idx.entry(Simplex::empty()).or_insert(0usize);
        } else {
            for face in f.faces() {
                let next = face_idx.len();
                face_idx.entry(face).or_insert(next);
            }
        }
    }
    let nfaces = face_idx.len();
    let cols: Vec<BitVec> = instances
        .iter()
        .map(|f| {
            let mut v = BitVec::zeros(nfaces);
            if s.dim() == 0 {
                v.set(0);
            } else {
                for face in f.faces() {
                    v.set(face_idx[&face]);
                }
            }
            v
        })
        .collect();
    // Gray-code over subsets, tracking the boundary sum incrementally
    let mut sum = BitVec::zeros(nfaces);
    let mut prev = 0u64;
    let full = (1u64 << m) - 1;
    for i in 1..=full {
        let gray = i ^ (i >> 1);
        let flipped = (gray ^ prev).trailing_zeros() as usize;
        prev = gray;
        sum.xor_assign(&cols[flipped]);
        if sum.is_zero() && gray != full {
            return Ok(false); // proper nonempty sub-cycle
        }
    }
    // after visiting all, check the full multiset itself is a cycle: recompute
    Ok(s.is_cycle())
}

/// Exhaustive minimum separators: `None` for complete graphs (no separator),
/// otherwise the connectivity and every separator of that size.
/// Budget: at most 12 vertices.
#[allow(clippy::type_complexity)]
pub fn brute_min_separators(
    g: &Graph,
) -> Result<Option<(usize, Vec<BTreeSet<VertexId>>)>, OracleError> {
    let n = g.n();
    if n > 12 {
        return Err(OracleError::BudgetExceeded(format!("{n} vertices > 12")));
    }
    if g.is_complete() {
        return Ok(None);
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    for size in 0..n.saturating_sub(1) {
        let seps: Vec<BTreeSet<VertexId>> = verts
            .iter()
            .copied()
            .combinations(size)
            .map(|c| c.into_iter().collect::<BTreeSet<_>>())
            .filter(|x| g.components_without(x).len() >= 2)
            .collect();
        if !seps.is_empty() {
            return Ok(Some((size, seps)));
        }
    }
    Ok(None)
}

/// Matroid connectivity by enumerating the whole cycle space and collecting
/// its minimal members. Budget: cycle space dimension at most 14.
pub fn brute_m_connected(s: &SimplicialMulticomplex) -> Result<bool, OracleError> {
    if !s.is_complex() {
        return Err(OracleError::Invalid("repeated facets".into()));
    }
    let facets: Vec<&Simplex> = s.distinct_facets().collect();
    let m = facets.len();
    if m > 60 {
        return Err(OracleError::BudgetExceeded(format!("{m} facets > 60")));
    }
    if m == 1 {
        return Ok(true);
    }
    let mut face_idx = std::collections::BTreeMap::new();
    for f in &facets {
        for face in f.faces() {
            let next = face_idx.len();
            face_idx.entry(face).or_insert(next);
        }
    }
    // kernel basis with tags over facet indices
    let mut elim = crate::z2::Eliminator::new();
    let mut basis: Vec<u64> = Vec::new();
    for f in &facets {
        let mut v = BitVec::zeros(face_idx.len().max(1));
        for face in f.faces() {
            v.set(face_idx[&face]);
        }
        if let Some(dep) = elim.insert(v, m) {
            let mut tag = 0u64;
            for b in dep.iter_ones() {
                tag |= 1 << b;
            }
            basis.push(tag);
        }
    }
    let nu = basis.len();
    if nu > 14 {
        return Err(OracleError::BudgetExceeded(format!(
            "cycle space dimension {nu} > 14"
        )));
    }
    // all nonzero cycles
    let mut cycles: Vec<u64> = Vec::with_capacity((1usize << nu) - 1);
    let mut cur = 0u64;
    for i in 1u64..(1 << nu) {
        cur ^= basis[i.trailing_zeros() as usize];
        cycles.push(cur);
    }
    // circuits are the minimal ones
    let circuits: Vec<u64> = cycles
        .iter()
        .copied()
        .filter(|&c| !cycles.iter().any(|&o| o != c && o & c == o))
        .collect();
    // union-find over common circuits; all facets must be covered
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let mut covered = 0u64;
    for c in circuits {
        covered |= c;
        let members: Vec<usize> = iter_bits(c).collect();
        for w in members.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    if covered.count_ones() as usize != m {
        return Ok(false);
    }
    let root = find(&mut parent, 0);
    Ok((1..m).all(|i| find(&mut parent, i) == root))
}

/// Recognizes stacked spheres by searching for a reverse subdivision
/// sequence: repeatedly remove a vertex whose star is the cone over the
/// boundary of a simplex, with backtracking over the removal order.
pub fn brute_is_stacked_sphere(s: &SimplicialMulticomplex) -> bool {
    if !s.is_nontrivial_circuit() || !s.is_complex() {
        return false;
    }
    let k = s.dim();
    fn unstack(s: &SimplicialMulticomplex, k: i32) -> bool {
        let nv = s.vertex_set().len();
        if nv == (k + 2) as usize {
            // a spanning cycle on k+2 vertices is the full complex
            return s.size() == (k + 2) as usize;
        }
        for v in s.vertex_set() {
            let star = s.star(&Simplex::new(vec![v]).unwrap());
            if star.size() != (k + 1) as usize {
                continue;
            }
            let link_verts = star.link(&Simplex::new(vec![v]).unwrap()).vertex_set();
            if link_verts.len() != (k + 1) as usize {
                continue;
            }
            let u = Simplex::new(link_verts.into_iter().collect()).unwrap();
            let mut cone: Vec<Simplex> = vec![u.clone()];
            for w in u.vertices() {
                cone.push(u.minus(*w).plus(v));
            }
            let cone = SimplicialMulticomplex::new(k, cone).unwrap();
            let prev = s.symm_diff(&cone).unwrap();
            if prev.contains_vertex(v) || !prev.is_cycle() {
                continue;
            }
            if unstack(&prev, k) {
                return true;
            }
        }
        false
    }
    unstack(s, k)
}

/// Replays every rank record of a certificate in exact rational arithmetic
/// and checks it reproduces the recorded finite-field rank.
pub fn rational_rank_audit(cert: &Certificate) -> bool {
    audit_records(&cert.records).iter().all(|(_, ok)| *ok)
}

/// Per-record audit outcomes.
pub fn audit_records(records: &[RankRecord]) -> Vec<(String, bool)> {
    records
        .iter()
        .map(|r| {
            let rational = replay_probe::<Rat>(&r.probe);
            (r.label.clone(), rational == r.rank)
        })
        .collect()
}
