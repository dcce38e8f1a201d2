//! Simplicial multicomplexes over Z₂: boundaries, stars, links, symmetric
//! difference, cycle and circuit tests, circuit extraction and contraction.
//!
//! A simplicial k-multicomplex is a multiset of (k+1)-sets of vertices. The
//! boundary of a multicomplex is the *set* of (k-1)-faces that lie in an odd
//! number of facets counted with multiplicity, so the boundary operator is
//! Z₂-linear in the facet multiset. A nonempty multicomplex with empty
//! boundary is a cycle; a cycle none of whose proper nonempty subfamilies is
//! a cycle is a circuit. Two copies of a single simplex form the trivial
//! circuit.
//!
//! The dimension -1 is admitted so that the boundary of a 0-complex can be
//! `{∅}` (odd size) or `∅` (even size); this keeps star/link/boundary
//! identities uniform in k.

pub mod iso;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::z2::{BitVec, Eliminator};

/// A vertex label. Labels are opaque; only their total order matters.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A simplex: a strictly increasing sequence of distinct vertices. The empty
/// simplex is the unique (-1)-face.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, SimplicialError> {
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(SimplicialError::DuplicateVertex(w[0]));
            }
        }
        Ok(Simplex { vertices })
    }

    pub fn from_labels(labels: &[u32]) -> Result<Self, SimplicialError> {
        Simplex::new(labels.iter().map(|&l| VertexId(l)).collect())
    }

    pub fn empty() -> Self {
        Simplex { vertices: vec![] }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dim(&self) -> i32 {
        self.vertices.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_all(&self, other: &Simplex) -> bool {
        other.vertices.iter().all(|&v| self.contains(v))
    }

    /// The simplex with `v` removed. Panics if `v` is absent.
    pub fn minus(&self, v: VertexId) -> Simplex {
        let mut vs = self.vertices.clone();
        let i = vs.binary_search(&v).expect("vertex present");
        vs.remove(i);
        Simplex { vertices: vs }
    }

    /// The simplex with `v` added. Panics if `v` is already present.
    pub fn plus(&self, v: VertexId) -> Simplex {
        let mut vs = self.vertices.clone();
        let i = vs.binary_search(&v).expect_err("vertex absent");
        vs.insert(i, v);
        Simplex { vertices: vs }
    }

    /// Set difference `self \ other`.
    pub fn without(&self, other: &Simplex) -> Simplex {
        Simplex {
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        }
    }

    /// All subsets of `self` with one vertex removed.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.vertices.iter().map(move |&v| self.minus(v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("facet {0} has {1} vertices, expected {2}")]
    WrongArity(String, usize, usize),
    #[error("duplicate vertex {0} inside a facet")]
    DuplicateVertex(VertexId),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(i32, i32),
    #[error("expected a simplicial cycle")]
    NotACycle,
    #[error("facet {0} is not in the complex")]
    FacetAbsent(String),
    #[error("vertex {0} is not in the complex")]
    VertexAbsent(VertexId),
    #[error("the two contraction vertices must be distinct")]
    SameVertex,
    #[error("operation requires a complex without repeated facets")]
    MulticomplexRejected,
    #[error("expected {0} vertices, got {1}")]
    WrongVertexCount(usize, usize),
    #[error("negative dimension input not allowed here")]
    NegativeDimension,
}

/// A multiset of k-simplices, stored as facet -> multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SimplicialMulticomplex {
    dim: i32,
    facets: BTreeMap<Simplex, u32>,
}

impl SimplicialMulticomplex {
    /// The empty multicomplex of the given dimension.
    pub fn empty(dim: i32) -> Self {
        SimplicialMulticomplex {
            dim,
            facets: BTreeMap::new(),
        }
    }

    /// Builds a multicomplex from facets, accumulating multiplicities.
    /// Every facet must have exactly `dim + 1` vertices.
    pub fn new(
        dim: i32,
        facets: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self, SimplicialError> {
        let mut map = BTreeMap::new();
        for f in facets {
            if f.dim() != dim {
                return Err(SimplicialError::WrongArity(
                    f.to_string(),
                    f.len(),
                    (dim + 1) as usize,
                ));
            }
            *map.entry(f).or_insert(0) += 1;
        }
        Ok(SimplicialMulticomplex { dim, facets: map })
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// Number of facets counted with multiplicity.
    pub fn size(&self) -> usize {
        self.facets.values().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Facet -> multiplicity entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, u32)> {
        self.facets.iter().map(|(f, &m)| (f, m))
    }

    /// Facets with multiplicity, each copy yielded separately, in canonical order.
    pub fn instances(&self) -> impl Iterator<Item = &Simplex> {
        self.facets
            .iter()
            .flat_map(|(f, &m)| std::iter::repeat_n(f, m as usize))
    }

    pub fn distinct_facets(&self) -> impl Iterator<Item = &Simplex> {
        self.facets.keys()
    }

    pub fn multiplicity(&self, f: &Simplex) -> u32 {
        self.facets.get(f).copied().unwrap_or(0)
    }

    pub fn contains_facet(&self, f: &Simplex) -> bool {
        self.facets.contains_key(f)
    }

    /// True when every multiplicity is 1, i.e. the multicomplex is a complex.
    pub fn is_complex(&self) -> bool {
        self.facets.values().all(|&m| m == 1)
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.facets
            .keys()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.facets.keys().any(|f| f.contains(v))
    }

    fn insert_copies(&mut self, f: Simplex, m: u32) {
        debug_assert_eq!(f.dim(), self.dim);
        if m > 0 {
            *self.facets.entry(f).or_insert(0) += m;
        }
    }

    /// Removes `m` copies of `f`. Panics if fewer are present.
    fn remove_copies(&mut self, f: &Simplex, m: u32) {
        let cur = self.facets.get_mut(f).expect("facet present");
        assert!(*cur >= m);
        *cur -= m;
        if *cur == 0 {
            self.facets.remove(f);
        }
    }

    /// Multiset difference: removes every facet of `other` from `self`.
    pub fn minus(&self, other: &SimplicialMulticomplex) -> SimplicialMulticomplex {
        let mut out = self.clone();
        for (f, m) in other.entries() {
            out.remove_copies(f, m);
        }
        out
    }

    /// Multiset union (multiplicities add).
    pub fn plus(&self, other: &SimplicialMulticomplex) -> SimplicialMulticomplex {
        let mut out = self.clone();
        for (f, m) in other.entries() {
            out.insert_copies(f.clone(), m);
        }
        out
    }

    /// All i-faces (sets of i+1 vertices contained in some facet), without
    /// multiplicity. `i = -1` gives the empty face when the complex is
    /// nonempty.
    pub fn faces_of_dim(&self, i: i32) -> BTreeSet<Simplex> {
        use itertools::Itertools;
        let mut out = BTreeSet::new();
        if i < -1 || i > self.dim {
            return out;
        }
        for f in self.facets.keys() {
            for comb in f.vertices().iter().copied().combinations((i + 1) as usize) {
                out.insert(Simplex { vertices: comb });
            }
        }
        out
    }

    /// The set of (k-1)-faces lying in an odd number of facets, counted with
    /// multiplicity. For k = 0 the result has dimension -1 and is `{∅}` or `∅`
    /// according to the parity of the facet count.
    pub fn boundary(&self) -> SimplicialMulticomplex {
        let mut counts: BTreeMap<Simplex, u64> = BTreeMap::new();
        for (f, m) in self.entries() {
            if self.dim == 0 {
                *counts.entry(Simplex::empty()).or_insert(0) += m as u64;
            } else {
                for face in f.faces() {
                    *counts.entry(face).or_insert(0) += m as u64;
                }
            }
        }
        let facets = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(f, _)| (f, 1))
            .collect();
        SimplicialMulticomplex {
            dim: self.dim - 1,
            facets,
        }
    }

    /// The sub-multiset of facets containing `f`.
    pub fn star(&self, f: &Simplex) -> SimplicialMulticomplex {
        SimplicialMulticomplex {
            dim: self.dim,
            facets: self
                .facets
                .iter()
                .filter(|(u, _)| u.contains_all(f))
                .map(|(u, &m)| (u.clone(), m))
                .collect(),
        }
    }

    /// The residues `U \ F` of the facets containing `F`, as a multiset of
    /// dimension `k - |F|`.
    pub fn link(&self, f: &Simplex) -> SimplicialMulticomplex {
        let mut out = SimplicialMulticomplex::empty(self.dim - f.len() as i32);
        for (u, m) in self.entries() {
            if u.contains_all(f) {
                out.insert_copies(u.without(f), m);
            }
        }
        out
    }

    /// Symmetric difference with multiplicities reduced mod 2. On complexes
    /// this is the set-theoretic symmetric difference.
    pub fn symm_diff(
        &self,
        other: &SimplicialMulticomplex,
    ) -> Result<SimplicialMulticomplex, SimplicialError> {
        if self.dim != other.dim {
            return Err(SimplicialError::DimensionMismatch(self.dim, other.dim));
        }
        let mut facets: BTreeMap<Simplex, u32> = BTreeMap::new();
        for (f, m) in self.entries().chain(other.entries()) {
            *facets.entry(f.clone()).or_insert(0) += m;
        }
        facets.retain(|_, m| {
            *m %= 2;
            *m == 1
        });
        Ok(SimplicialMulticomplex {
            dim: self.dim,
            facets,
        })
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_empty()
    }

    /// True when `self` is nonempty, a cycle, and minimal: no proper nonempty
    /// subfamily is a cycle. Equivalently the Z₂ kernel of the boundary matrix
    /// on the facet instances is one-dimensional with full support.
    pub fn is_circuit(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let (cols, _) = self.boundary_columns();
        let mut elim = Eliminator::new();
        let m = cols.len();
        let mut kernel: Option<BitVec> = None;
        for c in cols {
            if let Some(dep) = elim.insert(c, m) {
                if kernel.is_some() {
                    return false; // kernel dimension >= 2
                }
                kernel = Some(dep);
            }
        }
        match kernel {
            Some(k) => k.count_ones() == m,
            None => false,
        }
    }

    /// Trivial circuits are two copies of one simplex.
    pub fn is_trivial_circuit(&self) -> bool {
        self.facets.len() == 1 && self.facets.values().next() == Some(&2)
    }

    pub fn is_nontrivial_circuit(&self) -> bool {
        self.is_circuit() && !self.is_trivial_circuit()
    }

    /// Boundary columns of the facet instances, plus the instance order used.
    fn boundary_columns(&self) -> (Vec<BitVec>, Vec<&Simplex>) {
        let mut face_index: BTreeMap<Simplex, usize> = BTreeMap::new();
        let mut instances = Vec::new();
        for f in self.instances() {
            instances.push(f);
            if self.dim == 0 {
                face_index.entry(Simplex::empty()).or_insert(0);
            } else {
                for face in f.faces() {
                    let next = face_index.len();
                    face_index.entry(face).or_insert(next);
                }
            }
        }
        let nfaces = face_index.len().max(1);
        let cols = instances
            .iter()
            .map(|f| {
                let mut v = BitVec::zeros(nfaces);
                if self.dim == 0 {
                    v.set(face_index[&Simplex::empty()]);
                } else {
                    for face in f.faces() {
                        v.set(face_index[&face]);
                    }
                }
                v
            })
            .collect();
        (cols, instances)
    }

    /// The fundamental circuit of `seed` against a greedily chosen maximal
    /// independent subfamily of `self \ {seed}`. Requires `self` to be a
    /// nonempty cycle containing `seed`; the result is a circuit containing
    /// `seed`. Deterministic: the independent subfamily is chosen in canonical
    /// facet order.
    pub fn extract_circuit(
        &self,
        seed: &Simplex,
    ) -> Result<SimplicialMulticomplex, SimplicialError> {
        if !self.contains_facet(seed) {
            return Err(SimplicialError::FacetAbsent(seed.to_string()));
        }
        if !self.is_cycle() || self.is_empty() {
            return Err(SimplicialError::NotACycle);
        }
        let rest = {
            let mut r = self.clone();
            r.remove_copies(seed, 1);
            r
        };
        let (cols, instances) = rest.boundary_columns();
        let mut elim = Eliminator::new();
        let mut basis_members: Vec<&Simplex> = Vec::new();
        for (c, f) in cols.into_iter().zip(&instances) {
            if elim.insert(c, instances.len()).is_none() {
                basis_members.push(f);
            }
        }
        // Re-run the seed column through the basis; it must reduce to zero
        // because self is a cycle.
        let seed_col = {
            let tmp = SimplicialMulticomplex::new(self.dim, [seed.clone()]).unwrap();
            column_in_face_space(&tmp, &rest)
        };
        let combo = elim.express(seed_col).expect("cycle implies dependence");
        // combo is over insertion ids of `rest`; map through to basis members.
        let mut out = SimplicialMulticomplex::empty(self.dim);
        out.insert_copies(seed.clone(), 1);
        for id in combo.iter_ones() {
            out.insert_copies(instances[id].clone(), 1);
        }
        Ok(out)
    }

    /// Partitions a nonempty cycle into circuits, repeatedly extracting the
    /// fundamental circuit of the canonically smallest remaining facet.
    pub fn partition_into_circuits(
        &self,
    ) -> Result<Vec<SimplicialMulticomplex>, SimplicialError> {
        if self.is_empty() || !self.is_cycle() {
            return Err(SimplicialError::NotACycle);
        }
        let mut rest = self.clone();
        let mut parts = Vec::new();
        while !rest.is_empty() {
            let seed = rest.facets.keys().next().unwrap().clone();
            let part = rest.extract_circuit(&seed)?;
            rest = rest.minus(&part);
            parts.push(part);
        }
        Ok(parts)
    }

    /// Contracts `v` onto `u`: facets containing both are deleted, `v` is
    /// renamed to `u` elsewhere. Records the facet correspondence.
    pub fn contract(
        &self,
        u: VertexId,
        v: VertexId,
    ) -> Result<ContractionMap, SimplicialError> {
        if u == v {
            return Err(SimplicialError::SameVertex);
        }
        for w in [u, v] {
            if !self.contains_vertex(w) {
                return Err(SimplicialError::VertexAbsent(w));
            }
        }
        let mut image = SimplicialMulticomplex::empty(self.dim);
        let mut gamma = BTreeMap::new();
        for (f, m) in self.entries() {
            if f.contains(u) && f.contains(v) {
                continue;
            }
            let g = if f.contains(v) {
                f.minus(v).plus(u)
            } else {
                f.clone()
            };
            image.insert_copies(g.clone(), m);
            gamma.insert(f.clone(), g);
        }
        Ok(ContractionMap {
            source: self.clone(),
            u,
            v,
            image,
            gamma,
        })
    }

    /// Facet adjacency uses |S ∩ S'| >= k-1. Connectivity is over distinct
    /// facets; the empty complex is not strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let facets: Vec<&Simplex> = self.facets.keys().collect();
        if facets.is_empty() {
            return false;
        }
        let k = self.dim;
        let mut seen = vec![false; facets.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, other) in facets.iter().enumerate() {
                if !seen[j] {
                    let common = facets[i]
                        .vertices()
                        .iter()
                        .filter(|v| other.contains(**v))
                        .count() as i32;
                    if common >= k - 1 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Strongly connected and every (k-1)-face in exactly two facets.
    /// Rejects multicomplexes with repeated facets.
    pub fn is_pseudomanifold(&self) -> Result<bool, SimplicialError> {
        if !self.is_complex() {
            return Err(SimplicialError::MulticomplexRejected);
        }
        if self.dim < 1 || self.is_empty() {
            return Ok(false);
        }
        if !self.is_strongly_connected() {
            return Ok(false);
        }
        let mut counts: BTreeMap<Simplex, u32> = BTreeMap::new();
        for (f, m) in self.entries() {
            for face in f.faces() {
                *counts.entry(face).or_insert(0) += m;
            }
        }
        Ok(counts.values().all(|&c| c == 2))
    }

    /// Relabels vertices through the given map, which must be injective on
    /// the vertex set.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> SimplicialMulticomplex {
        let mut out = SimplicialMulticomplex::empty(self.dim);
        for (f, m) in self.entries() {
            let g = Simplex::new(
                f.vertices()
                    .iter()
                    .map(|v| *map.get(v).unwrap_or(v))
                    .collect(),
            )
            .expect("injective relabeling");
            out.insert_copies(g, m);
        }
        out
    }
}

impl fmt::Display for SimplicialMulticomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.instances().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// Helper: boundary column of a one-facet complex expressed in the face index
/// space of `space`. Faces absent from `space` are appended consistently with
/// `boundary_columns`' indexing. Used by `extract_circuit`.
fn column_in_face_space(one: &SimplicialMulticomplex, space: &SimplicialMulticomplex) -> BitVec {
    let mut face_index: BTreeMap<Simplex, usize> = BTreeMap::new();
    for f in space.instances() {
        if space.dim() == 0 {
            face_index.entry(Simplex::empty()).or_insert(0);
        } else {
            for face in f.faces() {
                let next = face_index.len();
                face_index.entry(face).or_insert(next);
            }
        }
    }
    let facet = one.distinct_facets().next().expect("one facet");
    let mut extra = face_index.len();
    let mut bits = Vec::new();
    if one.dim() == 0 {
        bits.push(*face_index.entry(Simplex::empty()).or_insert_with(|| {
            let i = extra;
            extra += 1;
            i
        }));
    } else {
        for face in facet.faces() {
            let idx = *face_index.entry(face).or_insert_with(|| {
                let i = extra;
                extra += 1;
                i
            });
            bits.push(idx);
        }
    }
    let mut v = BitVec::zeros(extra.max(1));
    for b in bits {
        v.set(b);
    }
    v
}

/// Record of a contraction `S/uv`: the image multicomplex together with the
/// bijection from facets of `S` not containing `{u,v}` to facets of the image.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    pub source: SimplicialMulticomplex,
    pub u: VertexId,
    pub v: VertexId,
    pub image: SimplicialMulticomplex,
    pub gamma: BTreeMap<Simplex, Simplex>,
}

impl ContractionMap {
    /// Pre-images of a partition of the image under the facet bijection.
    /// The instances of each image facet are matched to its source facets
    /// consistently across the parts, so the pre-images partition the source
    /// facets not containing {u,v}.
    pub fn preimage_partition(
        &self,
        parts: &[SimplicialMulticomplex],
    ) -> Vec<SimplicialMulticomplex> {
        let mut pool: BTreeMap<&Simplex, Vec<&Simplex>> = BTreeMap::new();
        for (src, img) in &self.gamma {
            for _ in 0..self.source.multiplicity(src) {
                pool.entry(img).or_default().push(src);
            }
        }
        parts
            .iter()
            .map(|part| {
                let mut out = SimplicialMulticomplex::empty(self.source.dim());
                for (img, m) in part.entries() {
                    let sources = pool.get_mut(img).expect("image facet has pre-images");
                    for _ in 0..m {
                        let src = sources.pop().expect("enough pre-images");
                        out.insert_copies(src.clone(), 1);
                    }
                }
                out
            })
            .collect()
    }
}

/// Builds a complex from raw vertex labels; repeated facet lists accumulate
/// multiplicity.
pub fn make_complex(k: u32, facets: &[Vec<u32>]) -> Result<SimplicialMulticomplex, SimplicialError> {
    let mut simplices = Vec::with_capacity(facets.len());
    for f in facets {
        let s = Simplex::from_labels(f)?;
        if s.len() != (k + 1) as usize {
            return Err(SimplicialError::WrongArity(
                s.to_string(),
                s.len(),
                (k + 1) as usize,
            ));
        }
        simplices.push(s);
    }
    SimplicialMulticomplex::new(k as i32, simplices)
}

/// The circuit made of every (k+1)-subset of a (k+2)-element vertex set.
pub fn canonical_kk(k: u32, vertices: &[VertexId]) -> Result<SimplicialMulticomplex, SimplicialError> {
    use itertools::Itertools;
    if vertices.len() != (k + 2) as usize {
        return Err(SimplicialError::WrongVertexCount(
            (k + 2) as usize,
            vertices.len(),
        ));
    }
    let facets = vertices
        .iter()
        .copied()
        .combinations((k + 1) as usize)
        .map(|c| Simplex::new(c).expect("distinct vertices"))
        .collect::<Vec<_>>();
    SimplicialMulticomplex::new(k as i32, facets)
}

/// Barycentric subdivision of `s` at facet `u`: replaces `u` by the cone of a
/// fresh vertex over its boundary.
pub fn subdivide_facet(
    s: &SimplicialMulticomplex,
    u: &Simplex,
    fresh: VertexId,
) -> SimplicialMulticomplex {
    assert!(s.contains_facet(u));
    assert!(!s.contains_vertex(fresh));
    let mut cone = vec![u.clone()];
    for v in u.vertices() {
        cone.push(u.minus(*v).plus(fresh));
    }
    let cone = SimplicialMulticomplex::new(s.dim(), cone).unwrap();
    s.symm_diff(&cone).unwrap()
}

/// The circuit obtained from two copies of `canonical_kk` sharing exactly one
/// facet by deleting the shared facet: 2(k+1) facets on k+3 vertices.
pub fn canonical_lk(k: u32, vertices: &[VertexId]) -> Result<SimplicialMulticomplex, SimplicialError> {
    if vertices.len() != (k + 3) as usize {
        return Err(SimplicialError::WrongVertexCount(
            (k + 3) as usize,
            vertices.len(),
        ));
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let a = &sorted[..(k + 2) as usize];
    let b = &sorted[1..];
    let shared = Simplex::new(sorted[1..(k + 2) as usize].to_vec()).unwrap();
    let ka = canonical_kk(k, a)?;
    let kb = canonical_kk(k, b)?;
    let mut out = ka.symm_diff(&kb)?;
    // Their symmetric difference removes the unique common facet already.
    debug_assert!(!out.contains_facet(&shared));
    debug_assert_eq!(out.size(), 2 * (k as usize + 1));
    out.dim = k as i32;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cx(k: u32, facets: &[&[u32]]) -> SimplicialMulticomplex {
        make_complex(k, &facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn v(l: u32) -> VertexId {
        VertexId(l)
    }

    fn octahedron() -> SimplicialMulticomplex {
        // poles 1, 6 over the 4-cycle 2-3-5-4
        cx(
            2,
            &[
                &[1, 2, 3],
                &[1, 3, 5],
                &[1, 5, 4],
                &[1, 4, 2],
                &[6, 2, 3],
                &[6, 3, 5],
                &[6, 5, 4],
                &[6, 4, 2],
            ],
        )
    }

    #[test]
    fn make_complex_basics() {
        let s = cx(2, &[&[1, 2, 3], &[1, 3, 4]]);
        assert_eq!(s.size(), 2);
        assert_eq!(s.vertex_set().len(), 4);

        let m = cx(2, &[&[1, 2, 3], &[1, 2, 3]]);
        assert_eq!(m.size(), 2);
        assert_eq!(m.distinct_facets().count(), 1);
        assert!(!m.is_complex());

        assert!(matches!(
            make_complex(2, &[vec![1, 2]]),
            Err(SimplicialError::WrongArity(..))
        ));
        assert!(matches!(
            make_complex(2, &[vec![1, 2, 2]]),
            Err(SimplicialError::DuplicateVertex(..))
        ));
    }

    #[test]
    fn boundary_examples() {
        let s1 = cx(2, &[&[1, 2, 3], &[1, 3, 4]]);
        let b = s1.boundary();
        assert_eq!(b.dim(), 1);
        let expect = cx(1, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        assert_eq!(b, expect);

        let s2 = cx(2, &[&[1, 2, 3], &[1, 2, 3]]);
        assert!(s2.boundary().is_empty());

        let single = cx(2, &[&[1, 2, 3]]);
        assert_eq!(single.boundary().size(), 3);
    }

    #[test]
    fn boundary_k0_parity() {
        let odd = cx(0, &[&[1], &[2], &[3]]);
        let b = odd.boundary();
        assert_eq!(b.dim(), -1);
        assert_eq!(b.size(), 1);
        assert!(b.contains_facet(&Simplex::empty()));

        let even = cx(0, &[&[1], &[2]]);
        assert!(even.boundary().is_empty());
        assert!(even.is_cycle());
        assert!(!odd.is_cycle());
    }

    #[test]
    fn boundary_of_boundary_is_empty() {
        for s in [
            octahedron(),
            cx(2, &[&[1, 2, 3], &[1, 3, 4], &[2, 3, 9]]),
            cx(3, &[&[1, 2, 3, 4], &[2, 3, 4, 5], &[1, 2, 4, 5]]),
            cx(2, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 4]]),
        ] {
            assert!(s.boundary().boundary().is_empty(), "∂∂ != 0 for {s}");
        }
    }

    #[test]
    fn star_and_link() {
        let kk = canonical_kk(2, &[v(1), v(2), v(3), v(4)]).unwrap();
        let st = kk.star(&Simplex::from_labels(&[1, 2]).unwrap());
        assert_eq!(st, cx(2, &[&[1, 2, 3], &[1, 2, 4]]));

        assert_eq!(kk.star(&Simplex::empty()), kk);
        assert!(kk.star(&Simplex::from_labels(&[9]).unwrap()).is_empty());

        let lk = kk.link(&Simplex::from_labels(&[1]).unwrap());
        assert_eq!(lk, cx(1, &[&[2, 3], &[2, 4], &[3, 4]]));

        // link of a vertex of the octahedron is a 4-cycle of edges
        let lk = octahedron().link(&Simplex::from_labels(&[1]).unwrap());
        assert_eq!(lk, cx(1, &[&[2, 3], &[3, 5], &[5, 4], &[4, 2]]));
        assert!(lk.is_cycle());
    }

    #[test]
    fn links_of_cycles_are_cycles() {
        let s = octahedron();
        for i in 0..=1 {
            for f in s.faces_of_dim(i) {
                let lk = s.link(&f);
                assert!(!lk.is_empty());
                assert!(lk.is_cycle(), "link of {f} not a cycle");
            }
        }
    }

    #[test]
    fn symm_diff_laws() {
        let s = cx(2, &[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4]]);
        let t = cx(2, &[&[1, 3, 4], &[1, 2, 4]]);
        assert!(s.symm_diff(&s).unwrap().is_empty());
        assert_eq!(s.symm_diff(&SimplicialMulticomplex::empty(2)).unwrap(), s);
        let st = s.symm_diff(&t).unwrap();
        let lhs = st.boundary();
        let rhs = s.boundary().symm_diff(&t.boundary()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(s.symm_diff(&cx(1, &[&[1, 2]])).is_err());
    }

    #[test]
    fn star_linearity() {
        // (S △ T)_F = S_F △ T_F
        let s = cx(2, &[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4]]);
        let t = cx(2, &[&[1, 3, 4], &[1, 2, 4], &[1, 2, 5]]);
        let st = s.symm_diff(&t).unwrap();
        for f in [
            Simplex::empty(),
            Simplex::from_labels(&[1]).unwrap(),
            Simplex::from_labels(&[1, 3]).unwrap(),
            Simplex::from_labels(&[3, 4]).unwrap(),
        ] {
            assert_eq!(
                st.star(&f),
                s.star(&f).symm_diff(&t.star(&f)).unwrap(),
                "star linearity fails at {f}"
            );
        }
    }

    #[test]
    fn cycle_and_circuit_tests() {
        let kk = canonical_kk(2, &[v(1), v(2), v(3), v(4)]).unwrap();
        assert!(kk.is_cycle());
        assert!(kk.is_circuit());
        assert!(kk.is_nontrivial_circuit());

        assert!(!cx(2, &[&[1, 2, 3]]).is_cycle());

        let trivial = cx(2, &[&[1, 2, 3], &[1, 2, 3]]);
        assert!(trivial.is_cycle());
        assert!(trivial.is_circuit());
        assert!(trivial.is_trivial_circuit());

        let lk = canonical_lk(2, &[v(1), v(2), v(3), v(4), v(5)]).unwrap();
        assert_eq!(lk.size(), 6);
        assert!(lk.is_circuit());

        let kk2 = canonical_kk(2, &[v(5), v(6), v(7), v(8)]).unwrap();
        let disjoint = kk.plus(&kk2);
        assert!(disjoint.is_cycle());
        assert!(!disjoint.is_circuit());

        assert!(octahedron().is_circuit());
    }

    #[test]
    fn three_copies_not_circuit() {
        let s = cx(2, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
        assert!(!s.is_cycle());
        assert!(!s.is_circuit());
        let s4 = cx(2, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
        assert!(s4.is_cycle());
        assert!(!s4.is_circuit());
    }

    #[test]
    fn extract_circuit_cases() {
        let kk = canonical_kk(2, &[v(1), v(2), v(3), v(4)]).unwrap();
        let seed = Simplex::from_labels(&[1, 2, 3]).unwrap();
        assert_eq!(kk.extract_circuit(&seed).unwrap(), kk);

        let kk2 = canonical_kk(2, &[v(5), v(6), v(7), v(8)]).unwrap();
        let disjoint = kk.plus(&kk2);
        assert_eq!(disjoint.extract_circuit(&seed).unwrap(), kk);

        let not_cycle = cx(2, &[&[1, 2, 3]]);
        assert!(not_cycle
            .extract_circuit(&Simplex::from_labels(&[1, 2, 3]).unwrap())
            .is_err());
        assert!(kk
            .extract_circuit(&Simplex::from_labels(&[9, 10, 11]).unwrap())
            .is_err());
    }

    #[test]
    fn partition_into_circuits_cases() {
        let kk = canonical_kk(2, &[v(1), v(2), v(3), v(4)]).unwrap();
        assert_eq!(kk.partition_into_circuits().unwrap(), vec![kk.clone()]);

        let kk2 = canonical_kk(2, &[v(5), v(6), v(7), v(8)]).unwrap();
        let parts = kk.plus(&kk2).partition_into_circuits().unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.is_circuit()));

        // doubled triangles split into trivial circuits
        let m = cx(
            2,
            &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 4], &[1, 2, 4], &[1, 2, 5], &[1, 2, 5]],
        );
        let parts = m.partition_into_circuits().unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.is_trivial_circuit()));
    }

    #[test]
    fn partition_recomposes() {
        let s = octahedron()
            .plus(&canonical_kk(2, &[v(11), v(12), v(13), v(14)]).unwrap());
        let parts = s.partition_into_circuits().unwrap();
        let mut acc = SimplicialMulticomplex::empty(2);
        for p in &parts {
            assert!(p.is_circuit());
            acc = acc.plus(p);
        }
        assert_eq!(acc, s);
    }

    #[test]
    fn contract_basics() {
        let s = cx(2, &[&[1, 3, 4], &[2, 3, 4]]);
        let c = s.contract(v(1), v(2)).unwrap();
        assert_eq!(c.image.size(), 2);
        assert_eq!(c.image.distinct_facets().count(), 1);
        assert_eq!(
            c.image.multiplicity(&Simplex::from_labels(&[1, 3, 4]).unwrap()),
            2
        );

        assert!(s.contract(v(1), v(1)).is_err());
        assert!(s.contract(v(1), v(9)).is_err());
    }

    #[test]
    fn contract_preserves_cycles() {
        let s = octahedron();
        for (a, b) in [(1, 2), (2, 3), (1, 6), (4, 5)] {
            let c = s.contract(v(a), v(b)).unwrap();
            assert!(c.image.is_cycle(), "contraction {a},{b} not a cycle");
        }
    }

    #[test]
    fn contraction_multiplicity_identity() {
        // |(S/uv)_F| = |S_F| + |S_{F-u+v}| - 2|S_{F+v}| for u in F, v not in F
        use itertools::Itertools;
        let s = cx(
            2,
            &[
                &[1, 2, 3],
                &[1, 3, 4],
                &[2, 3, 4],
                &[1, 2, 4],
                &[1, 2, 5],
                &[2, 4, 5],
                &[1, 2, 3], // repeated facet: multicomplex case
            ],
        );
        let (u, w) = (v(1), v(5));
        let c = s.contract(u, w).unwrap();
        let verts: Vec<VertexId> = s.vertex_set().into_iter().filter(|x| *x != w).collect();
        for f in verts.iter().copied().combinations(2) {
            let f = Simplex::new(f).unwrap();
            let lhs = c.image.star(&f).size() as i64;
            let rhs = if f.contains(u) {
                let f_swap = f.minus(u).plus(w);
                s.star(&f).size() as i64 + s.star(&f_swap).size() as i64
                    - 2 * s.star(&f.plus(w)).size() as i64
            } else {
                s.star(&f).size() as i64
            };
            assert_eq!(lhs, rhs, "multiplicity identity fails at {f}");
        }
    }

    #[test]
    fn pseudomanifold_tests() {
        assert!(octahedron().is_pseudomanifold().unwrap());
        assert!(octahedron().is_strongly_connected());

        let kk = canonical_kk(2, &[v(1), v(2), v(3), v(4)]).unwrap();
        let kk2 = canonical_kk(2, &[v(5), v(6), v(7), v(8)]).unwrap();
        let disjoint = kk.plus(&kk2);
        assert!(!disjoint.is_strongly_connected());
        assert!(!disjoint.is_pseudomanifold().unwrap());

        let multic = cx(2, &[&[1, 2, 3], &[1, 2, 3]]);
        assert!(multic.is_pseudomanifold().is_err());
    }

    #[test]
    fn pinched_sphere_is_circuit_not_pseudomanifold() {
        // Identify two vertices of a stacked sphere that have exactly one
        // common neighbour; the result is a circuit but not a pseudomanifold.
        let s = crate::fixtures::pinched_sphere();
        assert!(s.is_circuit());
        assert!(!s.is_pseudomanifold().unwrap());
    }

    #[test]
    fn canonical_constructions() {
        let k1 = canonical_kk(1, &[v(1), v(2), v(3)]).unwrap();
        assert_eq!(k1, cx(1, &[&[1, 2], &[1, 3], &[2, 3]]));

        let l1 = canonical_lk(1, &[v(1), v(2), v(3), v(4)]).unwrap();
        assert_eq!(l1.size(), 4);
        assert!(l1.is_circuit());
        // it is the 4-cycle: every vertex has degree 2
        for x in 1..=4 {
            assert_eq!(l1.star(&Simplex::from_labels(&[x]).unwrap()).size(), 2);
        }

        for k in 1..=3u32 {
            let verts: Vec<VertexId> = (0..k + 2).map(VertexId).collect();
            let kk = canonical_kk(k, &verts).unwrap();
            assert_eq!(kk.size(), (k + 2) as usize);
            assert!(kk.is_circuit());
            let verts: Vec<VertexId> = (0..k + 3).map(VertexId).collect();
            let lk = canonical_lk(k, &verts).unwrap();
            assert_eq!(lk.size(), 2 * (k as usize + 1));
            assert!(lk.is_circuit());
        }

        assert!(canonical_kk(2, &[v(1), v(2), v(3)]).is_err());
        assert!(canonical_lk(2, &[v(1), v(2), v(3), v(4)]).is_err());
    }

    #[test]
    fn brute_force_circuit_agreement_small() {
        // is_circuit agrees with subset enumeration on every sub-multiset of
        // a pool of triangles on 6 vertices.
        use itertools::Itertools;
        let pool = [
            [1u32, 2, 3],
            [1, 2, 4],
            [1, 3, 4],
            [2, 3, 4],
            [1, 2, 5],
            [1, 3, 5],
            [2, 3, 6],
        ];
        for r in 1..=pool.len() {
            for combo in pool.iter().combinations(r) {
                let s = cx(2, &combo.iter().map(|f| &f[..]).collect::<Vec<_>>());
                assert_eq!(
                    s.is_circuit(),
                    crate::oracle::brute_is_circuit(&s).unwrap(),
                    "disagreement on {s}"
                );
            }
        }
    }

    #[test]
    fn common_neighbour_bound_in_circuit_graphs() {
        // nontrivial circuit, uv an edge: u and v share at least k neighbours,
        // with equality iff the link of uv is the boundary of a (k-1)-simplex.
        let s = octahedron();
        let g = crate::graph::Graph::of_complex(&s);
        let k = 2;
        for (a, b) in g.edges() {
            let common = g.common_neighbours(a, b).len();
            assert!(common >= k);
            let lk = s.link(&Simplex::new(vec![a, b]).unwrap());
            let is_kk = lk.size() == k && lk.vertex_set().len() == k;
            assert_eq!(common == k, is_kk, "equality case mismatch at {a},{b}");
        }
    }
}
