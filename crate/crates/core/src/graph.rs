//! Simple undirected graphs: skeletons of complexes, vertex connectivity via
//! unit-capacity max flow with witness separators, clique-separator block
//! trees, planarity with an explicit face list, and stacked-sphere
//! recognition.

pub mod planarity;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplicial::{SimplicialMulticomplex, VertexId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is not {0}-connected")]
    NotConnectedEnough(usize),
    #[error("vertex set {0:?} is not a clique separator")]
    NotACliqueSeparator(Vec<u32>),
    #[error("graph does not have the {0}-cleavage property: separator {1:?} is not a clique")]
    NoCleavageProperty(usize, Vec<u32>),
    #[error("vertex {0} is not in the graph")]
    VertexAbsent(VertexId),
    #[error("invalid operation: {0}")]
    Invalid(String),
}

/// A finite simple graph on `VertexId` labels.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(VertexId(a), VertexId(b));
        }
        g
    }

    /// The 1-skeleton of a multicomplex.
    pub fn of_complex(s: &SimplicialMulticomplex) -> Self {
        let mut g = Graph::new();
        for f in s.distinct_facets() {
            let vs = f.vertices();
            if vs.len() == 1 {
                g.add_vertex(vs[0]);
            }
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn complete(labels: impl IntoIterator<Item = u32>) -> Self {
        let vs: Vec<VertexId> = labels.into_iter().map(VertexId).collect();
        let mut g = Graph::new();
        for &v in &vs {
            g.add_vertex(v);
        }
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) {
        assert_ne!(a, b, "loops are not allowed");
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
    }

    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) {
        self.adj.get_mut(&a).map(|s| s.remove(&b));
        self.adj.get_mut(&b).map(|s| s.remove(&a));
    }

    pub fn without_edge(&self, a: VertexId, b: VertexId) -> Graph {
        let mut g = self.clone();
        g.remove_edge(a, b);
        g
    }

    pub fn with_edge(&self, a: VertexId, b: VertexId) -> Graph {
        let mut g = self.clone();
        g.add_edge(a, b);
        g
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn common_neighbours(&self, a: VertexId, b: VertexId) -> BTreeSet<VertexId> {
        match (self.adj.get(&a), self.adj.get(&b)) {
            (Some(x), Some(y)) => x.intersection(y).copied().collect(),
            _ => BTreeSet::new(),
        }
    }

    /// Edges with endpoints in increasing order, canonically ordered.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m());
        for (&a, nbrs) in &self.adj {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn induced(&self, verts: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in verts {
            if self.contains_vertex(v) {
                g.add_vertex(v);
            }
        }
        for (a, b) in self.edges() {
            if verts.contains(&a) && verts.contains(&b) {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v);
        }
        for (a, b) in other.edges() {
            g.add_edge(a, b);
        }
        g
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n <= 1 || self.m() == n * (n - 1) / 2
    }

    pub fn is_clique(&self, verts: &BTreeSet<VertexId>) -> bool {
        let vs: Vec<VertexId> = verts.iter().copied().collect();
        vs.iter().all(|v| self.contains_vertex(*v))
            && vs
                .iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let start = *self.adj.keys().next().unwrap();
        self.component_of(start, &BTreeSet::new()).len() == self.n()
    }

    /// Connected component of `start` in `G - removed`.
    fn component_of(&self, start: VertexId, removed: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if !removed.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Components of `G - removed`.
    pub fn components_without(&self, removed: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
        let mut left: BTreeSet<VertexId> = self
            .vertices()
            .filter(|v| !removed.contains(v))
            .collect();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            let comp = self.component_of(start, removed);
            for v in &comp {
                left.remove(v);
            }
            out.push(comp);
        }
        out
    }

    /// Contracts `v` onto `u` without creating multiple edges.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Graph {
        assert_ne!(u, v);
        let mut g = Graph::new();
        for w in self.vertices() {
            if w != v {
                g.add_vertex(w);
            }
        }
        for (a, b) in self.edges() {
            let a = if a == v { u } else { a };
            let b = if b == v { u } else { b };
            if a != b {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// All cliques on exactly `size` vertices.
    pub fn cliques(&self, size: usize) -> Vec<BTreeSet<VertexId>> {
        let verts: Vec<VertexId> = self.vertices().collect();
        let mut out = Vec::new();
        let mut cur: Vec<VertexId> = Vec::new();
        fn extend(
            g: &Graph,
            verts: &[VertexId],
            from: usize,
            cur: &mut Vec<VertexId>,
            size: usize,
            out: &mut Vec<BTreeSet<VertexId>>,
        ) {
            if cur.len() == size {
                out.push(cur.iter().copied().collect());
                return;
            }
            for i in from..verts.len() {
                let v = verts[i];
                if cur.iter().all(|&u| g.has_edge(u, v)) {
                    cur.push(v);
                    extend(g, verts, i + 1, cur, size, out);
                    cur.pop();
                }
            }
        }
        extend(self, &verts, 0, &mut cur, size, &mut out);
        out
    }
}

/// Why a graph fails to be `t`-connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConnectivityWitness {
    /// Fewer than t+1 vertices and complete: no separator exists.
    TooSmall { n: usize },
    Disconnected,
    Separator(Vec<VertexId>),
}

/// Decides kappa(G) >= t; on failure produces a minimum separator when one
/// exists. Uses unit-vertex-capacity max flow over non-adjacent pairs.
pub fn vertex_connectivity_at_least(g: &Graph, t: usize) -> Result<(), ConnectivityWitness> {
    match vertex_connectivity(g) {
        (k, _) if k >= t => Ok(()),
        (_, Some(sep)) => Err(ConnectivityWitness::Separator(sep)),
        (0, None) if g.n() > 1 => Err(ConnectivityWitness::Disconnected),
        (_, None) => Err(ConnectivityWitness::TooSmall { n: g.n() }),
    }
}

/// Exact vertex connectivity with a minimum separator witness (None for
/// complete graphs, which have no separator). kappa(K_n) = n - 1.
pub fn vertex_connectivity(g: &Graph) -> (usize, Option<Vec<VertexId>>) {
    let n = g.n();
    if n == 0 {
        return (0, None);
    }
    if g.is_complete() {
        return (n - 1, None);
    }
    if !g.is_connected() {
        return (0, Some(vec![]));
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut best: Option<(usize, Vec<VertexId>)> = None;
    for (i, &s) in verts.iter().enumerate() {
        for &t in &verts[i + 1..] {
            if g.has_edge(s, t) {
                continue;
            }
            let cap = best.as_ref().map(|(k, _)| *k);
            let (flow, cut) = min_vertex_cut(g, s, t, cap);
            if let Some(cut) = cut {
                if best.as_ref().is_none_or(|(k, _)| flow < *k) {
                    best = Some((flow, cut));
                }
            }
        }
    }
    let (k, sep) = best.expect("non-complete graph has a non-adjacent pair");
    (k, Some(sep))
}

/// Minimum s-t vertex cut by augmenting paths on the split digraph.
/// Stops early once the flow reaches `cap` (the cut is then not computed).
fn min_vertex_cut(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    cap: Option<usize>,
) -> (usize, Option<Vec<VertexId>>) {
    // node 2i = v_in, 2i+1 = v_out for vertex index i
    let verts: Vec<VertexId> = g.vertices().collect();
    let idx: BTreeMap<VertexId, usize> = verts.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
    let nn = verts.len() * 2;
    // arcs as adjacency with capacities; store (to, cap, flow) and reverse index
    #[derive(Clone)]
    struct Arc {
        to: usize,
        cap: i32,
        flow: i32,
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nn];
    let add = |arcs: &mut Vec<Arc>, out: &mut Vec<Vec<usize>>, a: usize, b: usize, c: i32| {
        out[a].push(arcs.len());
        arcs.push(Arc { to: b, cap: c, flow: 0 });
        out[b].push(arcs.len());
        arcs.push(Arc { to: a, cap: 0, flow: 0 });
    };
    for (i, &v) in verts.iter().enumerate() {
        let c = if v == s || v == t { i32::MAX / 2 } else { 1 };
        add(&mut arcs, &mut out, 2 * i, 2 * i + 1, c);
    }
    for (a, b) in g.edges() {
        let (ia, ib) = (idx[&a], idx[&b]);
        add(&mut arcs, &mut out, 2 * ia + 1, 2 * ib, i32::MAX / 2);
        add(&mut arcs, &mut out, 2 * ib + 1, 2 * ia, i32::MAX / 2);
    }
    let (src, dst) = (2 * idx[&s] + 1, 2 * idx[&t]);
    let mut flow = 0usize;
    loop {
        if cap.is_some_and(|c| flow >= c) {
            return (flow, None);
        }
        // BFS for augmenting path
        let mut pred: Vec<Option<usize>> = vec![None; nn];
        let mut q = VecDeque::from([src]);
        let mut seen = vec![false; nn];
        seen[src] = true;
        while let Some(u) = q.pop_front() {
            for &ai in &out[u] {
                let a = &arcs[ai];
                if !seen[a.to] && a.cap - a.flow > 0 {
                    seen[a.to] = true;
                    pred[a.to] = Some(ai);
                    q.push_back(a.to);
                }
            }
        }
        if !seen[dst] {
            // min cut: vertices whose in->out arc crosses (in reachable, out not)
            let cut: Vec<VertexId> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| seen[2 * i] && !seen[2 * i + 1])
                .map(|(_, &v)| v)
                .collect();
            debug_assert_eq!(cut.len(), flow);
            return (flow, Some(cut));
        }
        let mut u = dst;
        while u != src {
            let ai = pred[u].unwrap();
            arcs[ai].flow += 1;
            arcs[ai ^ 1].flow -= 1;
            u = if ai.is_multiple_of(2) { arcs[ai + 1].to } else { arcs[ai - 1].to };
        }
        flow += 1;
    }
}

/// All t-vertex separators of G (subsets X of size t with G - X disconnected).
pub fn all_separators(g: &Graph, t: usize) -> Vec<BTreeSet<VertexId>> {
    use itertools::Itertools;
    let verts: Vec<VertexId> = g.vertices().collect();
    if verts.len() <= t + 1 {
        return Vec::new();
    }
    verts
        .iter()
        .copied()
        .combinations(t)
        .map(|c| c.into_iter().collect::<BTreeSet<_>>())
        .filter(|x| g.components_without(x).len() >= 2)
        .collect()
}

/// t-connected and every t-vertex separator is a clique.
pub fn has_cleavage_property(g: &Graph, t: usize) -> bool {
    check_cleavage(g, t).is_ok()
}

fn check_cleavage(g: &Graph, t: usize) -> Result<Vec<BTreeSet<VertexId>>, GraphError> {
    if vertex_connectivity_at_least(g, t).is_err() {
        return Err(GraphError::NotConnectedEnough(t));
    }
    let seps = all_separators(g, t);
    for x in &seps {
        if !g.is_clique(x) {
            return Err(GraphError::NoCleavageProperty(
                t,
                x.iter().map(|v| v.0).collect(),
            ));
        }
    }
    Ok(seps)
}

/// The graphs `G[H_i ∪ X]` for the components `H_i` of `G - X`, where `X`
/// must be a clique separator.
pub fn cleavage_graphs(g: &Graph, x: &BTreeSet<VertexId>) -> Result<Vec<Graph>, GraphError> {
    if !g.is_clique(x) || g.components_without(x).len() < 2 {
        return Err(GraphError::NotACliqueSeparator(
            x.iter().map(|v| v.0).collect(),
        ));
    }
    Ok(g.components_without(x)
        .into_iter()
        .map(|mut comp| {
            comp.extend(x.iter().copied());
            g.induced(&comp)
        })
        .collect())
}

/// The bipartite tree of (t+1)-blocks and t-vertex separators of a graph with
/// the t-cleavage property. A block and a separator are adjacent iff the
/// separator's vertices all lie in the block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockTree {
    pub t: usize,
    pub blocks: Vec<BTreeSet<VertexId>>,
    pub separators: Vec<BTreeSet<VertexId>>,
    /// (block index, separator index) incidences.
    pub edges: Vec<(usize, usize)>,
}

impl BlockTree {
    /// Tree sanity: connected and |edges| = |nodes| - 1.
    pub fn is_tree(&self) -> bool {
        let nodes = self.blocks.len() + self.separators.len();
        if nodes == 0 {
            return false;
        }
        if self.edges.len() + 1 != nodes {
            return false;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for &(b, s) in &self.edges {
            let s = self.blocks.len() + s;
            adj[b].push(s);
            adj[s].push(b);
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == nodes
    }

    pub fn block_graphs(&self, g: &Graph) -> Vec<Graph> {
        self.blocks.iter().map(|b| g.induced(b)).collect()
    }

    /// Union of the blocks in the subtree spanned by the given block indices.
    /// The indices must induce a connected subtree.
    pub fn subtree_union(&self, g: &Graph, block_indices: &[usize]) -> Graph {
        let mut verts = BTreeSet::new();
        for &i in block_indices {
            verts.extend(self.blocks[i].iter().copied());
        }
        g.induced(&verts)
    }
}

/// Builds the (t+1)-block tree by recursive splitting at clique separators.
pub fn block_tree(g: &Graph, t: usize) -> Result<BlockTree, GraphError> {
    let separators = check_cleavage(g, t)?;
    let mut blocks: BTreeSet<BTreeSet<VertexId>> = BTreeSet::new();
    split(g, t, &mut blocks);
    let blocks: Vec<BTreeSet<VertexId>> = blocks.into_iter().collect();
    let separators: Vec<BTreeSet<VertexId>> = separators;
    let mut edges = Vec::new();
    for (si, x) in separators.iter().enumerate() {
        for (bi, b) in blocks.iter().enumerate() {
            if x.is_subset(b) {
                edges.push((bi, si));
            }
        }
    }
    let bt = BlockTree {
        t,
        blocks,
        separators,
        edges,
    };
    debug_assert!(bt.is_tree(), "block/separator incidence is not a tree");
    Ok(bt)
}

fn split(g: &Graph, t: usize, blocks: &mut BTreeSet<BTreeSet<VertexId>>) {
    // find any t-separator; if none, g is a block
    let verts: Vec<VertexId> = g.vertices().collect();
    if verts.len() > t + 1 {
        use itertools::Itertools;
        for c in verts.iter().copied().combinations(t) {
            let x: BTreeSet<VertexId> = c.into_iter().collect();
            if g.components_without(&x).len() >= 2 {
                for piece in cleavage_graphs(g, &x).expect("clique separator") {
                    split(&piece, t, blocks);
                }
                return;
            }
        }
    }
    blocks.insert(g.vertex_set());
}

/// True iff `s` is a nontrivial circuit all of whose (k+2)-blocks are
/// complete graphs on k+2 vertices.
pub fn is_stacked_sphere(s: &SimplicialMulticomplex) -> bool {
    if !s.is_nontrivial_circuit() {
        return false;
    }
    let k = s.dim();
    if k < 1 {
        return false;
    }
    let g = Graph::of_complex(s);
    let Ok(bt) = block_tree(&g, (k + 1) as usize) else {
        return false;
    };
    bt.blocks.iter().all(|b| {
        b.len() == (k + 2) as usize && g.is_clique(b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simplicial::{canonical_kk, canonical_lk, subdivide_facet, Simplex};

    fn v(l: u32) -> VertexId {
        VertexId(l)
    }

    #[test]
    fn skeletons() {
        let kk = canonical_kk(2, &[v(1), v(2), v(3), v(4)]).unwrap();
        let g = Graph::of_complex(&kk);
        assert!(g.is_complete());
        assert_eq!(g.n(), 4);

        let l1 = canonical_lk(1, &[v(1), v(2), v(3), v(4)]).unwrap();
        let g = Graph::of_complex(&l1);
        assert_eq!(g.m(), 4);
        assert!(g.vertices().all(|x| g.degree(x) == 2));

        let oct = fixtures::octahedron();
        let g = Graph::of_complex(&oct);
        assert_eq!((g.n(), g.m()), (6, 12));
    }

    #[test]
    fn connectivity_basics() {
        let k5 = Graph::complete(1..=5);
        assert!(vertex_connectivity_at_least(&k5, 4).is_ok());
        assert!(vertex_connectivity_at_least(&k5, 5).is_err());

        let oct = Graph::of_complex(&fixtures::octahedron());
        assert!(vertex_connectivity_at_least(&oct, 4).is_ok());
        match vertex_connectivity_at_least(&oct, 5) {
            Err(ConnectivityWitness::Separator(sep)) => {
                assert_eq!(sep.len(), 4);
                let x: BTreeSet<VertexId> = sep.into_iter().collect();
                assert!(oct.components_without(&x).len() >= 2);
            }
            other => panic!("expected a 4-separator, got {other:?}"),
        }

        let (k, sep) = vertex_connectivity(&oct);
        assert_eq!(k, 4);
        assert!(sep.is_some());
    }

    #[test]
    fn connectivity_matches_brute_force() {
        let graphs = [
            Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]),
            Graph::of_complex(&fixtures::octahedron()),
            Graph::from_edges([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4)]),
            fixtures::k66(),
        ];
        for g in &graphs {
            let (k, _) = vertex_connectivity(g);
            let brute = crate::oracle::brute_min_separators(g).unwrap();
            match brute {
                Some((bk, seps)) => {
                    assert_eq!(k, bk, "kappa mismatch");
                    assert!(!seps.is_empty());
                }
                None => assert_eq!(k, g.n() - 1),
            }
        }
    }

    #[test]
    fn circuit_graphs_are_k_plus_1_connected() {
        for s in [
            fixtures::octahedron(),
            canonical_lk(2, &[v(1), v(2), v(3), v(4), v(5)]).unwrap(),
            fixtures::k7_torus(),
            fixtures::pinched_sphere(),
        ] {
            let g = Graph::of_complex(&s);
            assert!(
                vertex_connectivity_at_least(&g, (s.dim() + 1) as usize).is_ok(),
                "graph of circuit not (k+1)-connected"
            );
        }
    }

    #[test]
    fn contract_edge_cases() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]);
        let t = c4.contract_edge(v(1), v(2));
        assert_eq!((t.n(), t.m()), (3, 3));

        let k4 = Graph::complete(1..=4);
        let t = k4.contract_edge(v(1), v(2));
        assert!(t.is_complete());
        assert_eq!(t.n(), 3);
    }

    #[test]
    fn complex_and_graph_contraction_compatible() {
        // G(S/uv) = G(S)/uv for nonempty cycles without repeated facets
        for s in [fixtures::octahedron(), fixtures::k7_torus()] {
            let g = Graph::of_complex(&s);
            for (a, b) in g.edges() {
                let lhs = Graph::of_complex(&s.contract(a, b).unwrap().image);
                let rhs = g.contract_edge(a, b);
                assert_eq!(lhs, rhs, "contraction mismatch at {a},{b}");
            }
        }
    }

    #[test]
    fn block_tree_of_glued_cliques() {
        // two K5's glued on a K4
        let mut g = Graph::complete(1..=5);
        g = g.union(&Graph::complete(2..=6));
        let bt = block_tree(&g, 4).unwrap();
        assert_eq!(bt.blocks.len(), 2);
        assert_eq!(bt.separators.len(), 1);
        assert!(bt.is_tree());
        assert_eq!(
            bt.separators[0],
            [2, 3, 4, 5].map(v).into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn block_tree_single_block() {
        // 4-connected, so there is no 3-separator and a single 4-block
        let oct = Graph::of_complex(&fixtures::octahedron());
        let bt = block_tree(&oct, 3).unwrap();
        assert_eq!(bt.blocks.len(), 1);
        assert!(bt.separators.is_empty());
    }

    #[test]
    fn stacked_sphere_blocks() {
        // every facet subdivision adds one K4 block: n vertices, n-3 blocks
        let s = fixtures::stacked_sphere(8);
        let g = Graph::of_complex(&s);
        let bt = block_tree(&g, 3).unwrap();
        assert_eq!(bt.blocks.len(), 8 - 3);
        assert!(bt.blocks.iter().all(|b| b.len() == 4 && g.is_clique(b)));
        assert!(is_stacked_sphere(&s));
    }

    #[test]
    fn stacked_sphere_recognition() {
        let kk = canonical_kk(2, &[v(0), v(1), v(2), v(3)]).unwrap();
        assert!(is_stacked_sphere(&kk));
        let once = subdivide_facet(&kk, &Simplex::from_labels(&[0, 1, 2]).unwrap(), v(4));
        assert_eq!(once.size(), 6);
        assert!(is_stacked_sphere(&once));

        assert!(!is_stacked_sphere(&fixtures::octahedron()));
        assert!(!is_stacked_sphere(&fixtures::k7_torus()));
        // the canonical circuit on k+3 vertices is one subdivision of the
        // simplex boundary, hence a stacked sphere
        for k in 2..=3u32 {
            let verts: Vec<VertexId> = (0..k + 3).map(VertexId).collect();
            assert!(is_stacked_sphere(&canonical_lk(k, &verts).unwrap()));
        }
    }

    #[test]
    fn stacked_recognition_matches_subdivision_search() {
        for s in [
            fixtures::stacked_sphere(5),
            fixtures::stacked_sphere(7),
            fixtures::octahedron(),
            canonical_lk(2, &[v(1), v(2), v(3), v(4), v(5)]).unwrap(),
        ] {
            assert_eq!(
                is_stacked_sphere(&s),
                crate::oracle::brute_is_stacked_sphere(&s),
                "disagreement on {s}"
            );
        }
    }

    #[test]
    fn cleavage_union_property() {
        // two graphs with the t-cleavage property sharing a t-clique
        let g1 = Graph::of_complex(&fixtures::stacked_sphere(6));
        // relabel second sphere away from the first except for a facet triangle
        let s2 = fixtures::stacked_sphere(6);
        let map: BTreeMap<VertexId, VertexId> =
            (0..6).map(|i| (VertexId(i), VertexId(i + 10))).collect();
        let mut g2 = Graph::of_complex(&s2.relabel(&map));
        // glue on a triangle: identify three vertices via extra edges forming
        // a shared K3 with g1
        g2 = g2.union(&Graph::from_edges([(0, 10), (0, 11), (1, 10), (1, 11), (2, 10), (2, 11)]));
        let glued = g1.union(&g2);
        // not asserting cleavage for the artificial gluing above; instead test
        // the lemma-shaped case: union along an exactly-shared clique
        let h1 = Graph::complete(1..=5);
        let h2 = Graph::complete(3..=7);
        let u = h1.union(&h2);
        assert!(has_cleavage_property(&h1, 3));
        assert!(has_cleavage_property(&h2, 3));
        assert!(has_cleavage_property(&u, 3));
        let _ = glued;
    }

    #[test]
    fn subtree_union_of_circuit_blocks_is_circuit_graph() {
        // Lemma-shaped check: union of blocks in a subtree of the (k+2)-block
        // tree of a circuit graph is again the graph of a circuit. Drop one
        // leaf block; the rest is a subtree meeting it in one separator.
        let s = fixtures::stacked_sphere(7);
        let g = Graph::of_complex(&s);
        let bt = block_tree(&g, 3).unwrap();
        let leaf = (0..bt.blocks.len())
            .find(|&b| bt.edges.iter().filter(|(bi, _)| *bi == b).count() == 1)
            .expect("a tree has a leaf");
        let rest: Vec<usize> = (0..bt.blocks.len()).filter(|&b| b != leaf).collect();
        let h = bt.subtree_union(&g, &rest);
        let verts = h.vertex_set();
        let s1 = SimplicialMulticomplex::new(
            2,
            s.distinct_facets()
                .filter(|f| f.vertices().iter().all(|x| verts.contains(x)))
                .cloned()
                .collect::<Vec<_>>(),
        )
        .unwrap();
        match crate::fogelsanger::boundary_surgery_k1(&s, &s1).unwrap() {
            crate::fogelsanger::SurgeryK1::Completed(c) => {
                assert!(c.is_circuit());
                assert_eq!(Graph::of_complex(&c), h);
            }
            other => panic!("expected a completed circuit, got {other:?}"),
        }
    }

    #[test]
    fn clique_enumeration() {
        let oct = Graph::of_complex(&fixtures::octahedron());
        assert_eq!(oct.cliques(3).len(), 8);
        assert_eq!(oct.cliques(4).len(), 0);
        let k5 = Graph::complete(1..=5);
        assert_eq!(k5.cliques(3).len(), 10);
    }
}
