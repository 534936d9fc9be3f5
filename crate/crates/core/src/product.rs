//! Cartesian products of hypergraphs, graphs and L2-sections.
//!
//! Product vertices are flat tuples `(p1,...,pk)`, one part per factor. The
//! n-ary product is a left fold of the binary one that keeps the tuples flat.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::hypergraph::{Graph, Hyperedge, Hypergraph, HypergraphError};
use crate::sections::{pair, L2Section, Pair};
use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("a product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A vertex of a product, as the list of its factor coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleVertex {
    parts: Vec<VertexId>,
}

impl TupleVertex {
    pub fn new(parts: Vec<VertexId>) -> Self {
        TupleVertex { parts }
    }

    pub fn parts(&self) -> &[VertexId] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The rendered name `(p1,...,pk)`.
    pub fn to_vertex(&self) -> VertexId {
        VertexId::tuple(&self.parts)
    }

    /// Splits a rendered tuple back into its parts.
    pub fn parse(v: &VertexId) -> Option<Self> {
        v.tuple_parts().map(TupleVertex::new)
    }
}

/// Vertex and edge lists of a partially folded product, kept as part lists.
struct Fold {
    vertices: Vec<Vec<VertexId>>,
    edges: Vec<Vec<Vec<VertexId>>>,
}

impl Fold {
    fn start(h: &Hypergraph) -> Self {
        Fold {
            vertices: h.vertices().iter().map(|v| vec![v.clone()]).collect(),
            edges: h
                .edges()
                .iter()
                .map(|e| e.vertices().iter().map(|v| vec![v.clone()]).collect())
                .collect(),
        }
    }

    fn extend(self, h: &Hypergraph) -> Self {
        let extended = |p: &Vec<VertexId>, u: &VertexId| {
            let mut q = p.clone();
            q.push(u.clone());
            q
        };
        let mut vertices = Vec::with_capacity(self.vertices.len() * h.vertex_count());
        for p in &self.vertices {
            for u in h.vertices() {
                vertices.push(extended(p, u));
            }
        }
        let mut edges = Vec::new();
        // {x} × e for x in the accumulated vertex set, e in the new factor
        for x in &self.vertices {
            for e in h.edges() {
                edges.push(e.vertices().iter().map(|u| extended(x, u)).collect());
            }
        }
        // e × {u} for e in the accumulated edge set, u in the new factor
        for e in &self.edges {
            for u in h.vertices() {
                edges.push(e.iter().map(|p| extended(p, u)).collect());
            }
        }
        Fold { vertices, edges }
    }

    fn finish(self) -> Result<Hypergraph, HypergraphError> {
        let edges = self
            .edges
            .into_iter()
            .map(|e| Hyperedge::new(e.iter().map(VertexId::tuple)))
            .collect::<Result<Vec<_>, _>>()?;
        Hypergraph::new(edges)
    }
}

/// The Cartesian product of two or more hypergraphs, in the given order.
pub fn hyper_product(factors: &[Hypergraph]) -> Result<Hypergraph, ProductError> {
    if factors.len() < 2 {
        return Err(ProductError::TooFewFactors(factors.len()));
    }
    let fold = factors[1..].iter().fold(Fold::start(&factors[0]), Fold::extend);
    Ok(fold.finish()?)
}

pub fn graph_product(factors: &[Graph]) -> Result<Graph, ProductError> {
    let hs: Vec<Hypergraph> = factors.iter().map(|g| g.as_hypergraph().clone()).collect();
    Ok(Graph::try_from(hyper_product(&hs)?)?)
}

/// Product of two L2-sections: the skeleton is the graph product, an edge
/// inside a copy `{x} × Γ₂` carries `Γ₂`'s labels lifted by `{x} ×`, and an
/// edge inside `Γ₁ × {u}` carries `Γ₁`'s labels lifted by `× {u}`.
pub fn l2_product(first: &L2Section, second: &L2Section) -> Result<L2Section, ProductError> {
    let skeleton = graph_product(&[first.skeleton().clone(), second.skeleton().clone()])?;
    let t = |a: &VertexId, b: &VertexId| VertexId::tuple([a, b]);
    let mut labels: BTreeMap<Pair, BTreeSet<Hyperedge>> = BTreeMap::new();
    for x in first.skeleton().vertices() {
        for ((u, v), set) in second.labels() {
            let lifted = set
                .iter()
                .map(|e| Hyperedge::new(e.vertices().iter().map(|w| t(x, w))))
                .collect::<Result<BTreeSet<_>, _>>()?;
            labels.insert(pair(&t(x, u), &t(x, v)), lifted);
        }
    }
    for ((x, y), set) in first.labels() {
        for u in second.skeleton().vertices() {
            let lifted = set
                .iter()
                .map(|e| Hyperedge::new(e.vertices().iter().map(|z| t(z, u))))
                .collect::<Result<BTreeSet<_>, _>>()?;
            labels.insert(pair(&t(x, u), &t(y, u)), lifted);
        }
    }
    Ok(L2Section::from_parts_unchecked(skeleton, labels))
}
