//! The MAG-graph isomorphism witness: composite vertex `v` maps to graph
//! vertex `vertex_to_index(v) + 1`, and the edge bitset carries over verbatim.

use crate::bits::BitString;
use crate::codec::text::{parse_magtxt_with_cap, write_magtxt};
use crate::error::{MagError, Result};
use crate::indexing::edge_index_to_pair;
use crate::mag::{CompanionTuple, SimpleMag, SizeCap};

/// A simple undirected graph on vertices `{1, …, n}`. Edge presence uses the
/// same triangular indexing as MAGs, over 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalGraph {
    n: u64,
    edges: BitString,
}

impl ClassicalGraph {
    pub fn new(n: u64, edges: BitString) -> Result<Self> {
        let tau = CompanionTuple::new(vec![n])?;
        if edges.len() != tau.num_possible_edges() {
            return Err(MagError::LengthMismatch {
                expected: tau.num_possible_edges(),
                got: edges.len(),
            });
        }
        Ok(ClassicalGraph { n, edges })
    }

    pub fn vertex_count(&self) -> u64 {
        self.n
    }

    pub fn edge_bits(&self) -> &BitString {
        &self.edges
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.count_ones()
    }

    /// Whether `{x, y}` (0-based vertex indices) is an edge.
    pub fn has_edge(&self, x: u64, y: u64) -> bool {
        match crate::indexing::pair_to_edge_index(x, y) {
            Ok(j) => j.0 < self.edges.len() && self.edges.get(j.0),
            Err(_) => false,
        }
    }

    /// Degree of every vertex, indexed from 0.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n as usize];
        for j in self.edges.iter_ones() {
            let (a, b) = edge_index_to_pair(crate::indexing::EdgeIndex(j));
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// The graph viewed as a first-order MAG with companion tuple `(n)`.
    pub fn as_first_order_mag(&self) -> SimpleMag {
        let tau = CompanionTuple::new(vec![self.n]).expect("validated at construction");
        SimpleMag::from_edge_bits(tau, self.edges.clone()).expect("lengths agree")
    }

    /// Same layout as `.magtxt` with `tau: n`.
    pub fn to_text(&self) -> String {
        write_magtxt(&self.as_first_order_mag())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mag = parse_magtxt_with_cap(text, SizeCap::default())?;
        if mag.tau().order() != 1 {
            return Err(MagError::Parse {
                line: 1,
                msg: format!("a graph has a single aspect, got tau {}", mag.tau()),
            });
        }
        ClassicalGraph::new(mag.tau().sizes()[0], mag.edge_bits().clone())
    }
}

pub fn mag_to_graph(mag: &SimpleMag) -> ClassicalGraph {
    ClassicalGraph {
        n: mag.tau().num_composite_vertices(),
        edges: mag.edge_bits().clone(),
    }
}

/// Lifts a graph into the space `tau`; the inverse of [`mag_to_graph`].
pub fn graph_to_mag(g: &ClassicalGraph, tau: &CompanionTuple) -> Result<SimpleMag> {
    if tau.num_composite_vertices() != g.n {
        return Err(MagError::VertexCountMismatch {
            graph: g.n,
            tuple: tau.num_composite_vertices(),
        });
    }
    SimpleMag::from_edge_bits(tau.clone(), g.edges.clone())
}

/// Checks `e ∈ E(mag) ⟺ {f(π_o(e)), f(π_d(e))} ∈ E(g)` for every possible
/// composite edge, where `f[i]` is the 0-based graph vertex assigned to the
/// composite vertex with linear index `i`.
pub fn check_mag_graph_isomorphism(mag: &SimpleMag, g: &ClassicalGraph, f: &[u64]) -> Result<bool> {
    let n = mag.tau().num_composite_vertices();
    if n != g.n {
        return Err(MagError::VertexCountMismatch { graph: g.n, tuple: n });
    }
    check_permutation(f, n)?;
    for j in 0..mag.tau().num_possible_edges() {
        let (a, b) = edge_index_to_pair(crate::indexing::EdgeIndex(j));
        if mag.edge_bits().get(j) != g.has_edge(f[a as usize], f[b as usize]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_permutation(f: &[u64], n: u64) -> Result<()> {
    if f.len() as u64 != n {
        return Err(MagError::NotPermutation(format!(
            "{} entries for {n} vertices",
            f.len()
        )));
    }
    let mut seen = vec![false; f.len()];
    for (i, &t) in f.iter().enumerate() {
        if t >= n {
            return Err(MagError::NotPermutation(format!("f({i}) = {t} is out of range")));
        }
        if std::mem::replace(&mut seen[t as usize], true) {
            return Err(MagError::NotPermutation(format!("{t} is hit twice")));
        }
    }
    Ok(())
}

/// The canonical witness: the identity on linear indices.
pub fn canonical_bijection(tau: &CompanionTuple) -> Vec<u64> {
    (0..tau.num_composite_vertices()).collect()
}

/// Relabels `g` so that vertex `i` becomes `f[i]`.
pub fn relabel(g: &ClassicalGraph, f: &[u64]) -> Result<ClassicalGraph> {
    check_permutation(f, g.n)?;
    let mut edges = BitString::zeros(g.edges.len());
    for j in g.edges.iter_ones() {
        let (a, b) = edge_index_to_pair(crate::indexing::EdgeIndex(j));
        let k = crate::indexing::pair_to_edge_index(f[a as usize], f[b as usize])?;
        edges.set(k.0, true);
    }
    Ok(ClassicalGraph { n: g.n, edges })
}
