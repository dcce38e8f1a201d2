//! Exact decision procedures for the rigidity, global rigidity and matroid
//! connectivity of graphs arising from simplicial circuits.
//!
//! The crate is organised around a small number of layers:
//!
//! * [`simplicial`] — Z₂ combinatorics of simplicial multicomplexes: boundaries,
//!   stars, links, cycle/circuit tests, circuit extraction and contraction.
//! * [`fogelsanger`] — the star-completion construction and the decomposition of
//!   a circuit into smaller circuits overlapping in cliques, with a verifier.
//! * [`graph`] — graphs of complexes, vertex connectivity with witness
//!   separators, planarity with an explicit face list, clique-separator block
//!   trees and stacked-sphere recognition.
//! * [`linalg`] — dense exact linear algebra over a fixed prime field and over
//!   arbitrary-precision rationals.
//! * [`rigidity`] — rigidity matrices, randomized generic rank, stress spaces,
//!   the full-rank-stress certificate for global rigidity, and coincident
//!   rigidity.
//! * [`decision`] — the theorem-backed verdicts (global rigidity of circuit
//!   graphs, extremal edge counts, redundant edges, matroid connectivity) with
//!   re-checkable witnesses.
//! * [`oracle`] — independent brute-force ground truth: exhaustive circuit
//!   enumeration, subset-based circuit tests, exhaustive separator search and
//!   exact-rational rank audits.
//! * [`io`] — facet/edge file formats and the JSON verdict schema.

pub mod decision;
pub mod fixtures;
pub mod fogelsanger;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod rigidity;
pub mod simplicial;
pub mod z2;

pub use simplicial::{Simplex, SimplicialMulticomplex, VertexId};
