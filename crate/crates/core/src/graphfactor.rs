//! Prime factorization of connected graphs with respect to the Cartesian
//! product.
//!
//! The edge set is split into product-relation classes: the transitive
//! closure of the distance relation (θ) together with the relation that joins
//! two adjacent edges unless they span exactly one induced square. Each class
//! is one prime factor. The factor graphs are the layers through a base
//! vertex, coordinates come from nearest-vertex projections onto those layers,
//! and the resulting isomorphism is verified before anything is returned.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::hypergraph::{Graph, Indexed};
use crate::product::{graph_product, TupleVertex};
use crate::sections::Pair;
use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("edges {} {} and {} {} do not share exactly one vertex", .0.0, .0.1, .1.0, .1.1)]
    NotAdjacent(Pair, Pair),
    #[error("projection of {vertex} is not unique ({candidates} closest layer vertices)")]
    NonUniqueProjection { vertex: VertexId, candidates: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Hop distances between all vertex pairs of a connected graph.
#[derive(Debug, Clone)]
pub struct Distances {
    index: HashMap<VertexId, usize>,
    n: usize,
    d: Vec<u32>,
}

impl Distances {
    pub fn get(&self, a: &VertexId, b: &VertexId) -> Option<usize> {
        let (i, j) = (*self.index.get(a)?, *self.index.get(b)?);
        Some(self.at(i, j) as usize)
    }

    fn at(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    fn idx(&self, v: &VertexId) -> Result<usize, FactorError> {
        self.index.get(v).copied().ok_or_else(|| FactorError::UnknownVertex(v.clone()))
    }
}

fn bfs(ix: &Indexed, src: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; ix.n()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &w in &ix.adj[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn distances_indexed(ix: &Indexed) -> Result<Distances, FactorError> {
    let rows: Vec<Vec<u32>> = (0..ix.n()).into_par_iter().map(|s| bfs(ix, s)).collect();
    if rows.first().is_some_and(|r| r.contains(&u32::MAX)) {
        return Err(FactorError::Disconnected);
    }
    Ok(Distances { index: ix.index.clone(), n: ix.n(), d: rows.concat() })
}

pub fn all_pairs_distances(g: &Graph) -> Result<Distances, FactorError> {
    distances_indexed(&g.indexed())
}

/// Djoković–Winkler relation: `uv θ xy` iff `d(u,x) + d(v,y) ≠ d(u,y) + d(v,x)`.
///
/// The test is symmetric under swapping the endpoints of either edge.
pub fn theta_related(e: (&VertexId, &VertexId), f: (&VertexId, &VertexId), dist: &Distances) -> Result<bool, FactorError> {
    let (u, v, x, y) = (dist.idx(e.0)?, dist.idx(e.1)?, dist.idx(f.0)?, dist.idx(f.1)?);
    Ok(theta_ix(dist, u, v, x, y))
}

fn theta_ix(dist: &Distances, u: usize, v: usize, x: usize, y: usize) -> bool {
    dist.at(u, x) + dist.at(v, y) != dist.at(u, y) + dist.at(v, x)
}

/// Induced squares spanned by two adjacent edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareCount {
    pub count: usize,
    pub common_triangle: bool,
}

/// For adjacent edges `uv` and `uw`: whether `vw` closes a triangle, and the
/// number of vertices `z ≠ u` adjacent to both `v` and `w` but not to `u`
/// (zero when `vw` is an edge).
pub fn count_induced_squares(
    g: &Graph,
    e: (&VertexId, &VertexId),
    f: (&VertexId, &VertexId),
) -> Result<SquareCount, FactorError> {
    let not_adjacent = || {
        FactorError::NotAdjacent(
            crate::sections::pair(e.0, e.1),
            crate::sections::pair(f.0, f.1),
        )
    };
    if !g.has_edge(e.0, e.1) || !g.has_edge(f.0, f.1) {
        return Err(not_adjacent());
    }
    let ends_e = [e.0, e.1];
    let shared: Vec<&VertexId> = ends_e.iter().copied().filter(|a| *a == f.0 || *a == f.1).collect();
    if shared.len() != 1 {
        return Err(not_adjacent());
    }
    let u = shared[0];
    let v = if e.0 == u { e.1 } else { e.0 };
    let w = if f.0 == u { f.1 } else { f.0 };
    let ix = g.indexed();
    let (u, v, w) = (ix.index[u], ix.index[v], ix.index[w]);
    Ok(square_count_ix(&ix, u, v, w))
}

fn square_count_ix(ix: &Indexed, u: usize, v: usize, w: usize) -> SquareCount {
    if ix.adjacent(v, w) {
        return SquareCount { count: 0, common_triangle: true };
    }
    let (av, aw) = (&ix.adj[v], &ix.adj[w]);
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < av.len() && j < aw.len() {
        match av[i].cmp(&aw[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let z = av[i];
                if z != u && !ix.adjacent(z, u) {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    SquareCount { count, common_triangle: false }
}

/// A partition of the edge set into classes `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassPartition {
    class_of: BTreeMap<Pair, usize>,
    k: usize,
}

impl EdgeClassPartition {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, a: &VertexId, b: &VertexId) -> Option<usize> {
        self.class_of.get(&crate::sections::pair(a, b)).copied()
    }

    pub fn assignments(&self) -> &BTreeMap<Pair, usize> {
        &self.class_of
    }

    /// Edges of each class, in class order.
    pub fn classes(&self) -> Vec<Vec<Pair>> {
        let mut out = vec![Vec::new(); self.k];
        for (p, &c) in &self.class_of {
            out[c].push(p.clone());
        }
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Class index per edge of `ix.edges`, plus the class count. Classes are
/// numbered by their smallest edge.
fn classes_indexed(ix: &Indexed, dist: &Distances) -> (Vec<usize>, usize) {
    let m = ix.edges.len();
    let mut uf = UnionFind::new(m);
    for i in 0..m {
        let (u, v) = ix.edges[i];
        for j in i + 1..m {
            let (x, y) = ix.edges[j];
            if theta_ix(dist, u, v, x, y) {
                uf.union(i, j);
            }
        }
    }
    let edge_id: HashMap<(usize, usize), usize> =
        ix.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let id = |a: usize, b: usize| edge_id[&(a.min(b), a.max(b))];
    for u in 0..ix.n() {
        let nbrs = &ix.adj[u];
        for (a, &v) in nbrs.iter().enumerate() {
            for &w in &nbrs[a + 1..] {
                let sq = square_count_ix(ix, u, v, w);
                if sq.common_triangle || sq.count != 1 {
                    uf.union(id(u, v), id(u, w));
                }
            }
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut class = Vec::with_capacity(m);
    for i in 0..m {
        let root = uf.find(i);
        let next = label.len();
        class.push(*label.entry(root).or_insert(next));
    }
    (class, label.len())
}

/// Product-relation classes of a connected graph. One class means prime.
pub fn sigma_classes(g: &Graph) -> Result<EdgeClassPartition, FactorError> {
    let ix = g.indexed();
    let dist = distances_indexed(&ix)?;
    let (class, k) = classes_indexed(&ix, &dist);
    let class_of = ix
        .edges
        .iter()
        .zip(class)
        .map(|(&(a, b), c)| ((ix.names[a].clone(), ix.names[b].clone()), c))
        .collect();
    Ok(EdgeClassPartition { class_of, k })
}

/// The vertex of `layer` closest to `v`, which must be unique.
pub fn project(dist: &Distances, layer: &Graph, v: &VertexId) -> Result<VertexId, FactorError> {
    let vi = dist.idx(v)?;
    let mut best: Option<(u32, &VertexId)> = None;
    let mut ties = 0;
    for x in layer.vertices() {
        let d = dist.at(vi, dist.idx(x)?);
        match best {
            Some((bd, _)) if d > bd => {}
            Some((bd, _)) if d == bd => ties += 1,
            _ => {
                best = Some((d, x));
                ties = 1;
            }
        }
    }
    match best {
        Some((_, x)) if ties == 1 => Ok(x.clone()),
        _ => Err(FactorError::NonUniqueProjection { vertex: v.clone(), candidates: ties }),
    }
}

/// A factorization `G ≅ G₁ □ … □ G_k` with its coordinate witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFactorization {
    /// Layers through `base`, one per prime factor.
    pub factors: Vec<Graph>,
    pub base: VertexId,
    /// Coordinates of every vertex of the factored graph.
    pub coords: BTreeMap<VertexId, TupleVertex>,
}

impl GraphFactorization {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }

    /// The product of the factors (the single factor itself when prime).
    pub fn product(&self) -> Graph {
        if self.factors.len() == 1 {
            return self.factors[0].clone();
        }
        graph_product(&self.factors).expect("factors are valid graphs")
    }

    /// Checks that `coords` is a bijection onto the product vertex set that
    /// carries the edges of `g` exactly onto the product edges.
    pub fn verify(&self, g: &Graph) -> Result<(), FactorError> {
        verify_coords(g, &self.factors, &self.coords)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "factors": self.factors.iter().map(|f| f.to_json_value()).collect::<Vec<_>>(),
            "coords": coords_json(&self.coords),
        })
    }
}

pub(crate) fn coords_json(coords: &BTreeMap<VertexId, TupleVertex>) -> Value {
    let mut map = Map::new();
    for (v, t) in coords {
        map.insert(v.to_string(), json!(t.parts().iter().map(VertexId::as_str).collect::<Vec<_>>()));
    }
    Value::Object(map)
}

fn verify_coords(g: &Graph, factors: &[Graph], coords: &BTreeMap<VertexId, TupleVertex>) -> Result<(), FactorError> {
    let fail = |msg: String| {
        let sizes: Vec<String> =
            factors.iter().map(|f| format!("{}v/{}e", f.vertex_count(), f.edge_count())).collect();
        Err(FactorError::Inconsistent(format!("{msg} (factor sizes [{}])", sizes.join(", "))))
    };
    if coords.len() != g.vertex_count() || coords.keys().ne(g.vertices().iter()) {
        return fail("coordinate map does not cover the vertex set".into());
    }
    let expected_n: usize = factors.iter().map(|f| f.vertex_count()).product();
    if expected_n != g.vertex_count() {
        return fail(format!("{} vertices but the factors multiply to {expected_n}", g.vertex_count()));
    }
    let image: BTreeSet<&TupleVertex> = coords.values().collect();
    if image.len() != coords.len() {
        return fail("coordinate map is not injective".into());
    }
    for (v, t) in coords {
        if t.len() != factors.len() || t.parts().iter().zip(factors).any(|(p, f)| !f.vertices().contains(p)) {
            return fail(format!("coordinates of {v} leave the factor vertex sets"));
        }
    }
    for (a, b) in g.edge_pairs() {
        let (ta, tb) = (&coords[a], &coords[b]);
        let diff: Vec<usize> = (0..factors.len()).filter(|&i| ta.parts()[i] != tb.parts()[i]).collect();
        if diff.len() != 1 || !factors[diff[0]].has_edge(&ta.parts()[diff[0]], &tb.parts()[diff[0]]) {
            return fail(format!("edge {a} {b} does not map to a product edge"));
        }
    }
    let expected_m: usize = (0..factors.len())
        .map(|i| {
            factors[i].edge_count()
                * factors.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.vertex_count()).product::<usize>()
        })
        .sum();
    if expected_m != g.edge_count() {
        return fail(format!("{} edges but the product has {expected_m}", g.edge_count()));
    }
    Ok(())
}

/// Prime factorization of a connected graph.
///
/// The base vertex is the smallest vertex name, factors are ordered by the
/// smallest edge of their class, and the result is verified against `g`.
pub fn factor_graph(g: &Graph) -> Result<GraphFactorization, FactorError> {
    let ix = g.indexed();
    let dist = distances_indexed(&ix)?;
    let (class, k) = classes_indexed(&ix, &dist);
    let base = ix.names[0].clone();
    if k == 1 {
        let coords = g.vertices().iter().map(|v| (v.clone(), TupleVertex::new(vec![v.clone()]))).collect();
        return Ok(GraphFactorization { factors: vec![g.clone()], base, coords });
    }

    let mut class_adj: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); ix.n()]; k];
    for (&(a, b), &c) in ix.edges.iter().zip(&class) {
        class_adj[c][a].push(b);
        class_adj[c][b].push(a);
    }
    let mut factors = Vec::with_capacity(k);
    for (c, adj) in class_adj.iter().enumerate() {
        let mut seen = vec![false; ix.n()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut edges = Vec::new();
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if u < w {
                    edges.push((ix.names[u].clone(), ix.names[w].clone()));
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if edges.is_empty() {
            return Err(FactorError::Inconsistent(format!("class {c} has no edge at the base vertex {base}")));
        }
        factors.push(Graph::new(edges).map_err(|e| FactorError::Inconsistent(e.to_string()))?);
    }

    let mut coords = BTreeMap::new();
    for v in g.vertices() {
        let parts = factors
            .iter()
            .map(|layer| project(&dist, layer, v))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| FactorError::Inconsistent(e.to_string()))?;
        coords.insert(v.clone(), TupleVertex::new(parts));
    }
    let fact = GraphFactorization { factors, base, coords };
    fact.verify(g)?;
    Ok(fact)
}
