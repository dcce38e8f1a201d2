//! Canonical forms of facet hypergraphs, for isomorphism testing and
//! enumeration dedup: individualization-refinement over the vertex colouring,
//! taking the least relabeled facet multiset across all discrete colourings
//! reached. Branching only individualizes inside the first non-singleton
//! colour class, so highly symmetric instances cost about |Aut| leaf
//! encodings instead of n! permutations.

use std::collections::BTreeMap;

use super::{SimplicialMulticomplex, VertexId};

/// A label-independent encoding; two multicomplexes are isomorphic iff their
/// canonical forms are equal.
pub fn canonical_form(s: &SimplicialMulticomplex) -> Vec<Vec<u32>> {
    let verts: Vec<VertexId> = s.vertex_set().into_iter().collect();
    let n = verts.len();
    if n == 0 {
        return Vec::new();
    }
    let vidx: BTreeMap<VertexId, usize> =
        verts.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
    let facets: Vec<Vec<usize>> = s
        .instances()
        .map(|f| f.vertices().iter().map(|v| vidx[v]).collect())
        .collect();

    let mut adj = vec![vec![false; n]; n];
    let mut facet_deg = vec![0u32; n];
    for f in &facets {
        for (i, &a) in f.iter().enumerate() {
            facet_deg[a] += 1;
            for &b in &f[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }

    let initial: Vec<u32> = {
        let data: Vec<(u32, u32)> = (0..n)
            .map(|v| (facet_deg[v], adj[v].iter().filter(|&&b| b).count() as u32))
            .collect();
        intern(&data)
    };

    let ctx = Ctx { n, adj, facets };
    let mut best: Option<Vec<Vec<u32>>> = None;
    search(&ctx, refine(&ctx, initial), &mut best);
    best.expect("at least one discrete colouring")
}

struct Ctx {
    n: usize,
    adj: Vec<Vec<bool>>,
    facets: Vec<Vec<usize>>,
}

/// Refines a colouring by sorted neighbour colours until the class count is
/// stable.
fn refine(ctx: &Ctx, mut colour: Vec<u32>) -> Vec<u32> {
    loop {
        let data: Vec<(u32, Vec<u32>)> = (0..ctx.n)
            .map(|v| {
                let mut nc: Vec<u32> = (0..ctx.n)
                    .filter(|&w| ctx.adj[v][w])
                    .map(|w| colour[w])
                    .collect();
                nc.sort_unstable();
                (colour[v], nc)
            })
            .collect();
        let refined = intern(&data);
        if class_count(&refined) == class_count(&colour) {
            return refined;
        }
        colour = refined;
    }
}

fn class_count(colour: &[u32]) -> usize {
    let mut c: Vec<u32> = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Replaces ordered data with dense ranks preserving order.
fn intern<T: Ord + Clone>(data: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = data.to_vec();
    sorted.sort();
    sorted.dedup();
    data.iter()
        .map(|d| sorted.binary_search(d).unwrap() as u32)
        .collect()
}

fn search(ctx: &Ctx, colour: Vec<u32>, best: &mut Option<Vec<Vec<u32>>>) {
    if class_count(&colour) == ctx.n {
        // discrete: vertex v gets label colour[v]
        let mut enc: Vec<Vec<u32>> = ctx
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| colour[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        enc.sort();
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    }
    // first colour class with at least two members
    let target = (0..ctx.n)
        .map(|v| colour[v])
        .filter(|&c| colour.iter().filter(|&&x| x == c).count() >= 2)
        .min()
        .expect("non-discrete colouring has a splittable class");
    for v in 0..ctx.n {
        if colour[v] != target {
            continue;
        }
        // individualize v below its class, preserving the relative order of
        // all other colours
        let data: Vec<(u32, u32)> = (0..ctx.n)
            .map(|w| (colour[w], if w == v { 0 } else { 1 }))
            .collect();
        search(ctx, refine(ctx, intern(&data)), best);
    }
}

pub fn is_isomorphic(a: &SimplicialMulticomplex, b: &SimplicialMulticomplex) -> bool {
    a.dim() == b.dim()
        && a.size() == b.size()
        && a.vertex_set().len() == b.vertex_set().len()
        && canonical_form(a) == canonical_form(b)
}
