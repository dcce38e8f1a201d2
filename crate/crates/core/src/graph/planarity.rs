//! Planarity testing with an explicit combinatorial embedding.
//!
//! Uses the incremental face-splitting algorithm of Demoucron, Malgrange and
//! Pertuiset on biconnected pieces: grow an embedded subgraph one path at a
//! time, always placing a bridge that is forced into a unique admissible
//! face first. For planar input this never needs backtracking; a bridge with
//! no admissible face certifies non-planarity. Quadratic, which is plenty at
//! the graph sizes this crate handles, and it yields the face list needed to
//! compare a plane triangulation with a facet set.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{vertex_connectivity_at_least, Graph};
use crate::simplicial::{Simplex, VertexId};

/// Faces of a planar embedding, each a simple cycle of vertices. The list
/// includes the outer face, so a face-set may repeat (K3 has two copies of
/// its triangle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub faces: Vec<Vec<VertexId>>,
}

impl Embedding {
    /// Faces as vertex sets with multiplicity, in canonical order.
    pub fn face_multiset(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self
            .faces
            .iter()
            .map(|f| Simplex::new(f.clone()).expect("faces are simple cycles"))
            .collect();
        out.sort();
        out
    }
}

pub fn is_planar(g: &Graph) -> bool {
    if g.n() <= 4 {
        return true;
    }
    pieces(g).iter().all(|p| dmp(p).is_some())
}

/// Embedding of a 2-connected planar graph (n >= 3). `None` when non-planar.
pub fn plane_embedding(g: &Graph) -> Option<Embedding> {
    dmp(g).map(|faces| Embedding { faces })
}

/// Planar, with exactly 3|V| - 6 edges, and 3-connected or K3.
pub fn is_plane_triangulation(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || g.m() != 3 * n - 6 {
        return false;
    }
    if n == 3 {
        return g.is_complete();
    }
    vertex_connectivity_at_least(g, 3).is_ok() && is_planar(g)
}

/// The triangular faces of a plane triangulation, as a multiset of simplices.
/// `None` when `g` is not a plane triangulation.
pub fn triangulation_faces(g: &Graph) -> Option<Vec<Simplex>> {
    if !is_plane_triangulation(g) {
        return None;
    }
    let emb = plane_embedding(g)?;
    debug_assert!(emb.faces.iter().all(|f| f.len() == 3));
    Some(emb.face_multiset())
}

/// Maximal pieces on which planarity must be tested: split at cut vertices
/// and into connected components until 2-connected.
fn pieces(g: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut queue: Vec<Graph> = g
        .components_without(&BTreeSet::new())
        .into_iter()
        .map(|c| g.induced(&c))
        .collect();
    'outer: while let Some(h) = queue.pop() {
        if h.n() >= 3 {
            for v in h.vertices().collect::<Vec<_>>() {
                let removed = BTreeSet::from([v]);
                let comps = h.components_without(&removed);
                if comps.len() >= 2 {
                    for mut c in comps {
                        c.insert(v);
                        queue.push(h.induced(&c));
                    }
                    continue 'outer;
                }
            }
        }
        out.push(h);
    }
    out
}

/// A bridge relative to the embedded subgraph: either a single chord between
/// embedded vertices, or a component of the unembedded vertices plus its
/// attachment edges.
#[derive(Debug)]
enum Bridge {
    Chord(VertexId, VertexId),
    Component {
        inner: BTreeSet<VertexId>,
        attach: BTreeSet<VertexId>,
    },
}

impl Bridge {
    fn attachments(&self) -> BTreeSet<VertexId> {
        match self {
            Bridge::Chord(a, b) => BTreeSet::from([*a, *b]),
            Bridge::Component { attach, .. } => attach.clone(),
        }
    }
}

/// Core algorithm on a 2-connected (or small) graph. Returns the face list.
fn dmp(g: &Graph) -> Option<Vec<Vec<VertexId>>> {
    let n = g.n();
    let m = g.m();
    if n <= 2 || m <= 2 {
        return Some(Vec::new());
    }
    if m > 3 * n - 6 {
        return None;
    }
    let cycle = find_cycle(g)?;
    let mut faces = vec![cycle.clone(), {
        let mut r = cycle.clone();
        r.reverse();
        r
    }];
    let mut embedded = Graph::new();
    for i in 0..cycle.len() {
        embedded.add_edge(cycle[i], cycle[(i + 1) % cycle.len()]);
    }

    while embedded.m() < m {
        let bridges = find_bridges(g, &embedded);
        debug_assert!(!bridges.is_empty());
        // admissible faces per bridge
        let mut chosen: Option<(usize, usize)> = None; // (bridge, face)
        for (bi, b) in bridges.iter().enumerate() {
            let att = b.attachments();
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| {
                    let fs: BTreeSet<VertexId> = f.iter().copied().collect();
                    att.is_subset(&fs)
                })
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((bi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((bi, admissible[0]));
                    }
                }
            }
        }
        let (bi, fi) = chosen.expect("some bridge");
        let path = bridge_path(g, &bridges[bi]);
        embed_path(&mut faces, fi, &path);
        for w in path.windows(2) {
            embedded.add_edge(w[0], w[1]);
        }
    }
    debug_assert_eq!(faces.len(), 2 + m - n, "Euler count violated");
    Some(faces)
}

fn find_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let start = g.vertices().next()?;
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut stack = vec![(start, start)];
    let mut seen = BTreeSet::new();
    while let Some((v, p)) = stack.pop() {
        if !seen.insert(v) {
            continue;
        }
        parent.insert(v, p);
        for w in g.neighbours(v) {
            if w == p {
                continue;
            }
            if seen.contains(&w) {
                // back edge v-w: cycle w .. v w
                let mut path = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[&x];
                    path.push(x);
                }
                return Some(path);
            }
            stack.push((w, v));
        }
    }
    None
}

fn find_bridges(g: &Graph, embedded: &Graph) -> Vec<Bridge> {
    let emb_verts = embedded.vertex_set();
    let mut bridges = Vec::new();
    for (a, b) in g.edges() {
        if emb_verts.contains(&a) && emb_verts.contains(&b) && !embedded.has_edge(a, b) {
            bridges.push(Bridge::Chord(a, b));
        }
    }
    let mut left: BTreeSet<VertexId> = g.vertices().filter(|v| !emb_verts.contains(v)).collect();
    while let Some(&s) = left.iter().next() {
        let mut inner = BTreeSet::from([s]);
        let mut attach = BTreeSet::new();
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in g.neighbours(v) {
                if emb_verts.contains(&w) {
                    attach.insert(w);
                } else if inner.insert(w) {
                    q.push_back(w);
                }
            }
        }
        for v in &inner {
            left.remove(v);
        }
        bridges.push(Bridge::Component { inner, attach });
    }
    bridges
}

/// A path between two distinct attachment vertices through the bridge.
fn bridge_path(g: &Graph, b: &Bridge) -> Vec<VertexId> {
    match b {
        Bridge::Chord(a, b) => vec![*a, *b],
        Bridge::Component { inner, attach } => {
            let a = *attach.iter().next().expect("2-connected: >=2 attachments");
            // BFS from a through inner vertices to any other attachment
            let mut pred: BTreeMap<VertexId, VertexId> = BTreeMap::new();
            let mut q = VecDeque::from([a]);
            let mut seen = BTreeSet::from([a]);
            while let Some(v) = q.pop_front() {
                for w in g.neighbours(v) {
                    if seen.contains(&w) {
                        continue;
                    }
                    if inner.contains(&w) {
                        seen.insert(w);
                        pred.insert(w, v);
                        q.push_back(w);
                    } else if attach.contains(&w) && w != a && v != a {
                        // complete path a .. v w
                        let mut path = vec![w, v];
                        let mut x = v;
                        while x != a {
                            x = pred[&x];
                            path.push(x);
                        }
                        path.reverse();
                        return path;
                    }
                }
            }
            unreachable!("bridge of a 2-connected graph has two attachments");
        }
    }
}

/// Splits face `fi` along `path`, whose endpoints lie on the face.
fn embed_path(faces: &mut Vec<Vec<VertexId>>, fi: usize, path: &[VertexId]) {
    let face = faces.swap_remove(fi);
    let a = path[0];
    let b = *path.last().unwrap();
    let pa = face.iter().position(|&v| v == a).expect("endpoint on face");
    let pb = face.iter().position(|&v| v == b).expect("endpoint on face");
    let len = face.len();
    // arc from a forward to b (inclusive)
    let mut arc1 = Vec::new();
    let mut i = pa;
    loop {
        arc1.push(face[i]);
        if i == pb {
            break;
        }
        i = (i + 1) % len;
    }
    // arc from b forward to a (inclusive)
    let mut arc2 = Vec::new();
    let mut i = pb;
    loop {
        arc2.push(face[i]);
        if i == pa {
            break;
        }
        i = (i + 1) % len;
    }
    let interior = &path[1..path.len() - 1];
    // face 1: a -> ... -> b along the old face, back along the path
    let mut f1 = arc1;
    f1.extend(interior.iter().rev().copied());
    // face 2: b -> ... -> a along the old face, forward along the path
    let mut f2 = arc2;
    f2.extend(interior.iter().copied());
    faces.push(f1);
    faces.push(f2);
}
