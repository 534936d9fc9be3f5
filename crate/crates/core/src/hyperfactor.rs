//! Prime factorization of connected conformal hypergraphs.
//!
//! The hypergraph is replaced by its labelled 2-section, the unlabelled
//! skeleton is factored as a graph, and each factor layer keeps the labels of
//! its edges. Those labels are exactly the hyperedges of the corresponding
//! hypergraph factor.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::graphfactor::{coords_json, factor_graph, FactorError};
use crate::hypergraph::Hypergraph;
use crate::product::{hyper_product, TupleVertex};
use crate::sections::{inverse_l2, is_conformal, l2_section, subsection, SectionError};
use crate::vertex::VertexId;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperfactorError {
    #[error("hypergraph is disconnected")]
    Disconnected,
    #[error("hypergraph is not conformal (witness {{{}}})", .witness.iter().map(VertexId::as_str).collect::<Vec<_>>().join(","))]
    NotConformal { witness: Vec<VertexId> },
    #[error("more than {0} maximal cliques")]
    CliqueLimit(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<FactorError> for HyperfactorError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Disconnected => HyperfactorError::Disconnected,
            FactorError::Inconsistent(msg) => HyperfactorError::Inconsistent(msg),
            other => HyperfactorError::Inconsistent(other.to_string()),
        }
    }
}

/// `H ≅ H₁ □ … □ H_k` with the coordinate witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphFactorization {
    /// Factors as partial hypergraphs of `H` through `base`.
    pub factors: Vec<Hypergraph>,
    pub base: VertexId,
    pub coords: BTreeMap<VertexId, TupleVertex>,
}

impl HypergraphFactorization {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn product(&self) -> Hypergraph {
        if self.factors.len() == 1 {
            return self.factors[0].clone();
        }
        hyper_product(&self.factors).expect("factors are valid hypergraphs")
    }

    /// Checks that `coords` is a bijection onto `V(H₁) × … × V(H_k)` and that
    /// every hyperedge of `h` maps onto a product hyperedge `{x₁}×…×e×…×{x_k}`
    /// with `e` a hyperedge of the matching factor, with equal counts.
    pub fn verify(&self, h: &Hypergraph) -> Result<(), HyperfactorError> {
        let fail = |msg: String| Err(HyperfactorError::Inconsistent(msg));
        let factors = &self.factors;
        if self.coords.len() != h.vertex_count() || self.coords.keys().ne(h.vertices().iter()) {
            return fail("coordinate map does not cover the vertex set".into());
        }
        let expected_n: usize = factors.iter().map(Hypergraph::vertex_count).product();
        if expected_n != h.vertex_count() {
            return fail(format!("{} vertices but the factors multiply to {expected_n}", h.vertex_count()));
        }
        let image: BTreeSet<&TupleVertex> = self.coords.values().collect();
        if image.len() != self.coords.len() {
            return fail("coordinate map is not injective".into());
        }
        for (v, t) in &self.coords {
            if t.len() != factors.len() || t.parts().iter().zip(factors).any(|(p, f)| !f.vertices().contains(p)) {
                return fail(format!("coordinates of {v} leave the factor vertex sets"));
            }
        }
        for e in h.edges() {
            let tuples: Vec<&TupleVertex> = e.vertices().iter().map(|v| &self.coords[v]).collect();
            let first = tuples[0];
            let varying: Vec<usize> = (0..factors.len())
                .filter(|&i| tuples.iter().any(|t| t.parts()[i] != first.parts()[i]))
                .collect();
            if varying.len() != 1 {
                return fail(format!("hyperedge {e} varies in {} coordinates", varying.len()));
            }
            let i = varying[0];
            let projected = crate::Hyperedge::new(tuples.iter().map(|t| t.parts()[i].clone()));
            if !projected.is_ok_and(|p| factors[i].contains_edge(&p)) {
                return fail(format!("hyperedge {e} does not project onto a hyperedge of factor {i}"));
            }
        }
        let expected_m: usize = (0..factors.len())
            .map(|i| {
                factors[i].edge_count()
                    * factors
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, f)| f.vertex_count())
                        .product::<usize>()
            })
            .sum();
        if expected_m != h.edge_count() {
            return fail(format!("{} hyperedges but the product has {expected_m}", h.edge_count()));
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "prime": self.is_prime(),
            "factors": self.factors.iter().map(Hypergraph::to_json_value).collect::<Vec<_>>(),
            "coords": coords_json(&self.coords),
        })
    }
}

/// Prime factorization of a connected conformal hypergraph.
///
/// Connectivity and conformality are checked first. The skeleton of the
/// labelled 2-section is factored as a graph; each factor layer becomes a
/// subsection (its label closure is checked, not assumed) and the factor is
/// the hypergraph rebuilt from that subsection's labels.
pub fn factor_hypergraph(h: &Hypergraph, limits: &Limits) -> Result<HypergraphFactorization, HyperfactorError> {
    if !h.is_connected() {
        return Err(HyperfactorError::Disconnected);
    }
    let report = is_conformal(h, limits.max_cliques).map_err(|e| match e {
        SectionError::CliqueLimit(n) => HyperfactorError::CliqueLimit(n),
        other => HyperfactorError::Inconsistent(other.to_string()),
    })?;
    if !report.conformal {
        return Err(HyperfactorError::NotConformal { witness: report.witness.unwrap_or_default() });
    }

    let section = l2_section(h);
    let graph_fact = factor_graph(section.skeleton())?;
    let mut factors = Vec::with_capacity(graph_fact.k());
    for (i, layer) in graph_fact.factors.iter().enumerate() {
        let edges = layer.edge_pairs().map(|(a, b)| (a.clone(), b.clone()));
        let sub = subsection(&section, edges)
            .map_err(|e| HyperfactorError::Inconsistent(format!("layer {i} is not a subsection: {e}")))?;
        let factor = inverse_l2(&sub)
            .map_err(|e| HyperfactorError::Inconsistent(format!("layer {i} does not rebuild: {e}")))?;
        factors.push(factor);
    }
    let fact = HypergraphFactorization { factors, base: graph_fact.base, coords: graph_fact.coords };
    fact.verify(h)?;
    Ok(fact)
}
