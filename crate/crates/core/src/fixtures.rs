//! Named complexes and graphs used across tests, the acceptance suite and
//! the CLI examples.

use crate::graph::Graph;
use crate::simplicial::{
    canonical_lk, make_complex, subdivide_facet, Simplex, SimplicialMulticomplex, VertexId,
};

/// Boundary of the octahedron: poles 1 and 6 over the 4-cycle 2-3-5-4.
pub fn octahedron() -> SimplicialMulticomplex {
    make_complex(
        2,
        &[
            vec![1, 2, 3],
            vec![1, 3, 5],
            vec![1, 5, 4],
            vec![1, 4, 2],
            vec![6, 2, 3],
            vec![6, 3, 5],
            vec![6, 5, 4],
            vec![6, 4, 2],
        ],
    )
    .unwrap()
}

/// Boundary of the icosahedron: apexes 0 and 11 over two pentagonal bands.
pub fn icosahedron() -> SimplicialMulticomplex {
    let mut f: Vec<Vec<u32>> = Vec::new();
    for i in 0..5u32 {
        let (a, b) = (1 + i, 1 + (i + 1) % 5); // upper pentagon 1..5
        let (c, d) = (6 + i, 6 + (i + 1) % 5); // lower pentagon 6..10
        f.push(vec![0, a, b]);
        f.push(vec![a, b, d]);
        f.push(vec![a, c, d]);
        f.push(vec![c, d, 11]);
    }
    make_complex(2, &f).unwrap()
}

/// The 7-vertex triangulation of the torus whose graph is K7:
/// facets {i, i+1, i+3} and {i, i+2, i+3} modulo 7.
pub fn k7_torus() -> SimplicialMulticomplex {
    let mut f = Vec::new();
    for i in 0..7u32 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    make_complex(2, &f).unwrap()
}

/// K_{6,6} on vertex classes 0..5 and 6..11.
pub fn k66() -> Graph {
    Graph::from_edges((0..6u32).flat_map(|a| (6..12u32).map(move |b| (a, b))))
}

/// Hexahedron facets: the 6-facet bipyramid, i.e. the canonical 5-vertex
/// 2-circuit with non-complete graph.
pub fn hexahedron() -> SimplicialMulticomplex {
    canonical_lk(2, &(1..=5).map(VertexId).collect::<Vec<_>>()).unwrap()
}

/// A stacked 2-sphere on `n >= 4` vertices: repeated subdivision of the
/// canonically first facet of the boundary of a tetrahedron.
pub fn stacked_sphere(n: usize) -> SimplicialMulticomplex {
    assert!(n >= 4);
    let mut s = make_complex(2, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
        .unwrap();
    for fresh in 4..n {
        let facet = s.distinct_facets().next().unwrap().clone();
        s = subdivide_facet(&s, &facet, VertexId(fresh as u32));
    }
    s
}

/// A 2-circuit that is not a pseudomanifold: a stacked sphere in which two
/// vertices with exactly one common neighbour have been identified. The edge
/// {1,5} of the result lies in four facets.
pub fn pinched_sphere() -> SimplicialMulticomplex {
    let s = make_complex(2, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
        .unwrap();
    let s = subdivide_facet(&s, &Simplex::from_labels(&[0, 1, 2]).unwrap(), VertexId(4));
    let s = subdivide_facet(&s, &Simplex::from_labels(&[1, 2, 3]).unwrap(), VertexId(5));
    let s = subdivide_facet(&s, &Simplex::from_labels(&[0, 1, 4]).unwrap(), VertexId(6));
    // N(5) = {1,2,3}, N(6) = {0,1,4}: identify 6 onto 5
    let facets: Vec<Simplex> = s
        .distinct_facets()
        .map(|f| {
            if f.contains(VertexId(6)) {
                f.minus(VertexId(6)).plus(VertexId(5))
            } else {
                f.clone()
            }
        })
        .collect();
    SimplicialMulticomplex::new(2, facets).unwrap()
}

/// A torus triangulation with a singular (pinched) vertex: subdivide two
/// facets of the K7 torus and identify the two fresh vertices, which share
/// exactly one neighbour.
pub fn pinched_torus() -> SimplicialMulticomplex {
    let s = k7_torus();
    let s = subdivide_facet(&s, &Simplex::from_labels(&[0, 1, 3]).unwrap(), VertexId(7));
    let s = subdivide_facet(&s, &Simplex::from_labels(&[1, 2, 4]).unwrap(), VertexId(8));
    // N(7) = {0,1,3}, N(8) = {1,2,4}: identify 8 onto 7
    let facets: Vec<Simplex> = s
        .distinct_facets()
        .map(|f| {
            if f.contains(VertexId(8)) {
                f.minus(VertexId(8)).plus(VertexId(7))
            } else {
                f.clone()
            }
        })
        .collect();
    SimplicialMulticomplex::new(2, facets).unwrap()
}

/// The 8-facet sphere used to illustrate star completions: star of vertex 1
/// over the 5-cycle 2-3-4-5-6 plus three facets through vertex 2. The edge
/// {1,2} contracts to three doubled triangles.
pub fn fig_sphere() -> SimplicialMulticomplex {
    // u=1, v=2, w=3, x=4, y=5, z=6
    make_complex(
        2,
        &[
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 6, 2],
            vec![2, 3, 4],
            vec![2, 4, 5],
            vec![2, 5, 6],
        ],
    )
    .unwrap()
}

/// Two octahedra sharing one facet triangle, as a single 2-circuit with a
/// 3-clique separator {1,2,3}.
pub fn octahedron_pair() -> SimplicialMulticomplex {
    let a = octahedron_on([1, 2, 3, 4, 5, 6]);
    let b = octahedron_on([1, 2, 3, 7, 8, 9]);
    a.symm_diff(&b).unwrap()
}

/// Octahedron with antipodal pairs (v[0],v[3]), (v[1],v[4]), (v[2],v[5]);
/// contains the facet {v[0],v[1],v[2]}.
pub fn octahedron_on(v: [u32; 6]) -> SimplicialMulticomplex {
    let mut f = Vec::new();
    for a in [v[0], v[3]] {
        for b in [v[1], v[4]] {
            for c in [v[2], v[5]] {
                f.push(vec![a, b, c]);
            }
        }
    }
    make_complex(2, &f).unwrap()
}

/// The K7 torus with a stacked appendage: one facet subdivided by a fresh
/// vertex, giving a planar K4 block hanging off the non-planar torus block.
pub fn torus_with_appendage() -> SimplicialMulticomplex {
    let s = k7_torus();
    subdivide_facet(&s, &Simplex::from_labels(&[0, 1, 3]).unwrap(), VertexId(7))
}

/// Two tetrahedron boundaries sharing one triangle, as a simplicial complex
/// (set of facets).
pub fn two_tetrahedra_sharing_triangle() -> SimplicialMulticomplex {
    make_complex(
        2,
        &[
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
            vec![1, 2, 5],
            vec![1, 3, 5],
            vec![2, 3, 5],
        ],
    )
    .unwrap()
}

/// Facets of the cyclic d-polytope on n vertices by Gale's evenness
/// condition: Y is a facet iff every pair of elements outside Y has an even
/// number of elements of Y strictly between them.
pub fn cyclic_polytope_boundary(d: usize, n: usize) -> SimplicialMulticomplex {
    use itertools::Itertools;
    assert!(n > d && d >= 2);
    let facets: Vec<Vec<u32>> = (1..=n as u32)
        .combinations(d)
        .filter(|y| {
            let inside =
                |a: u32, b: u32| y.iter().filter(|&&k| a < k && k < b).count() % 2 == 0;
            let outside: Vec<u32> = (1..=n as u32).filter(|x| !y.contains(x)).collect();
            outside
                .iter()
                .tuple_combinations()
                .all(|(&a, &b)| inside(a.min(b), a.max(b)))
        })
        .collect();
    make_complex(d as u32 - 1, &facets).unwrap()
}
