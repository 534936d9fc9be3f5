//! Isomorphism of hypergraphs and of L2-sections.
//!
//! Exact backtracking. Candidates are filtered by per-vertex invariants and
//! by pairwise co-occurrence counts with the already mapped vertices; a
//! hyperedge is checked as soon as its last vertex is mapped. Intended for
//! small instances, where a witness mapping is more useful than a canonical
//! form.

mod generate;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde_json::{json, Map, Value};
use thiserror::Error;

pub use generate::{random_conformal_hypergraph, random_connected_graph, random_hypergraph, random_relabel};

use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphError};
use crate::sections::L2Section;
use crate::vertex::VertexId;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism search over {size} vertices exceeds the limit of {limit}")]
    SizeLimit { size: usize, limit: usize },
}

/// A vertex bijection witnessing an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub mapping: BTreeMap<VertexId, VertexId>,
}

impl IsoWitness {
    pub fn inverse(&self) -> IsoWitness {
        IsoWitness { mapping: self.mapping.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    /// Image of a hypergraph under the mapping.
    pub fn apply(&self, h: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
        h.relabel(|v| self.mapping[v].clone())
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (a, b) in &self.mapping {
            map.insert(a.to_string(), json!(b.as_str()));
        }
        json!({ "mapping": map })
    }
}

/// An indexed isomorphism problem between two structures on `n` vertices.
struct Problem<'a> {
    n: usize,
    invariant_a: Vec<Vec<usize>>,
    invariant_b: Vec<Vec<usize>>,
    /// Symmetric pair codes; a mapping must preserve them.
    pair_a: Vec<Vec<u32>>,
    pair_b: Vec<Vec<u32>>,
    groups_a: Vec<Vec<usize>>,
    groups_b: HashSet<Vec<usize>>,
    leaf: &'a dyn Fn(&[usize]) -> bool,
}

impl Problem<'_> {
    fn solve(&self) -> Option<Vec<usize>> {
        let mut a_sorted = self.invariant_a.clone();
        let mut b_sorted = self.invariant_b.clone();
        a_sorted.sort();
        b_sorted.sort();
        if a_sorted != b_sorted {
            return None;
        }
        let order = self.order();
        let mut position = vec![0; self.n];
        for (d, &v) in order.iter().enumerate() {
            position[v] = d;
        }
        let mut completes: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (gi, g) in self.groups_a.iter().enumerate() {
            let last = g.iter().map(|&v| position[v]).max().expect("non-empty group");
            completes[last].push(gi);
        }
        let mut state = State { map: vec![usize::MAX; self.n], used: vec![false; self.n] };
        if self.extend(&order, &completes, 0, &mut state) {
            Some(state.map)
        } else {
            None
        }
    }

    /// Vertices in an order that keeps each next vertex tied to the mapped
    /// prefix: most already ordered partners first, then rarest invariant.
    fn order(&self) -> Vec<usize> {
        let mut freq: HashMap<&Vec<usize>, usize> = HashMap::new();
        for inv in &self.invariant_a {
            *freq.entry(inv).or_default() += 1;
        }
        let mut placed = vec![false; self.n];
        let mut links = vec![0usize; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let next = (0..self.n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], std::cmp::Reverse(freq[&self.invariant_a[v]]), std::cmp::Reverse(v)))
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
            for (w, &code) in self.pair_a[next].iter().enumerate() {
                if code != 0 {
                    links[w] += 1;
                }
            }
        }
        order
    }

    fn extend(&self, order: &[usize], completes: &[Vec<usize>], depth: usize, st: &mut State) -> bool {
        if depth == self.n {
            return (self.leaf)(&st.map);
        }
        let a = order[depth];
        for b in 0..self.n {
            if st.used[b] || self.invariant_a[a] != self.invariant_b[b] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&prev| self.pair_a[a][prev] == self.pair_b[b][st.map[prev]]);
            if !consistent {
                continue;
            }
            st.map[a] = b;
            st.used[b] = true;
            let groups_ok = completes[depth].iter().all(|&gi| {
                let mut image: Vec<usize> = self.groups_a[gi].iter().map(|&v| st.map[v]).collect();
                image.sort_unstable();
                self.groups_b.contains(&image)
            });
            if groups_ok && self.extend(order, completes, depth + 1, st) {
                return true;
            }
            st.used[b] = false;
            st.map[a] = usize::MAX;
        }
        false
    }
}

struct State {
    map: Vec<usize>,
    used: Vec<bool>,
}

struct Indexed<'a> {
    names: Vec<&'a VertexId>,
}

impl<'a> Indexed<'a> {
    fn new(vertices: &'a BTreeSet<VertexId>) -> Self {
        Indexed { names: vertices.iter().collect() }
    }

    fn of(&self, v: &VertexId) -> usize {
        self.names.binary_search(&v).expect("known vertex")
    }

    fn group(&self, e: &Hyperedge) -> Vec<usize> {
        e.vertices().iter().map(|v| self.of(v)).collect()
    }
}

fn check_size(n: usize, limits: &Limits) -> Result<(), IsoError> {
    if n > limits.max_iso_vertices {
        return Err(IsoError::SizeLimit { size: n, limit: limits.max_iso_vertices });
    }
    Ok(())
}

/// Vertex invariants, pair codes and hyperedges as index groups.
type Tables = (Vec<Vec<usize>>, Vec<Vec<u32>>, Vec<Vec<usize>>);

fn hyper_tables(h: &Hypergraph, ix: &Indexed) -> Tables {
    let n = ix.names.len();
    let mut pair = vec![vec![0u32; n]; n];
    let mut sizes = vec![Vec::new(); n];
    let groups: Vec<Vec<usize>> = h.edges().iter().map(|e| ix.group(e)).collect();
    for g in &groups {
        for (i, &a) in g.iter().enumerate() {
            sizes[a].push(g.len());
            for &b in &g[i + 1..] {
                pair[a][b] += 1;
                pair[b][a] += 1;
            }
        }
    }
    let invariant = (0..n)
        .map(|v| {
            let mut inv = sizes[v].clone();
            inv.sort_unstable();
            inv.push(usize::MAX);
            inv.push(pair[v].iter().filter(|&&c| c > 0).count());
            inv
        })
        .collect();
    (invariant, pair, groups)
}

/// Finds a vertex bijection mapping the hyperedges of `a` exactly onto those
/// of `b`, if there is one.
pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph, limits: &Limits) -> Result<Option<IsoWitness>, IsoError> {
    check_size(a.vertex_count().max(b.vertex_count()), limits)?;
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let (ia, ib) = (Indexed::new(a.vertices()), Indexed::new(b.vertices()));
    let (inv_a, pair_a, groups_a) = hyper_tables(a, &ia);
    let (inv_b, pair_b, groups_b) = hyper_tables(b, &ib);
    let accept = |_: &[usize]| true;
    let problem = Problem {
        n: a.vertex_count(),
        invariant_a: inv_a,
        invariant_b: inv_b,
        pair_a,
        pair_b,
        groups_a,
        groups_b: groups_b.into_iter().collect(),
        leaf: &accept,
    };
    Ok(problem.solve().map(|map| witness(&ia, &ib, &map)))
}

fn witness(ia: &Indexed, ib: &Indexed, map: &[usize]) -> IsoWitness {
    IsoWitness {
        mapping: map.iter().enumerate().map(|(i, &j)| (ia.names[i].clone(), ib.names[j].clone())).collect(),
    }
}

/// Interned label-size profiles so that pair codes agree across both sides.
fn l2_tables(
    s: &L2Section,
    ix: &Indexed,
    profiles: &mut HashMap<Vec<usize>, u32>,
) -> Tables {
    let n = ix.names.len();
    let mut pair = vec![vec![0u32; n]; n];
    let mut profile_of_vertex = vec![Vec::new(); n];
    for ((x, y), set) in s.labels() {
        let mut profile: Vec<usize> = set.iter().map(Hyperedge::len).collect();
        profile.sort_unstable();
        let next = profiles.len() as u32 + 1;
        let code = *profiles.entry(profile).or_insert(next);
        let (i, j) = (ix.of(x), ix.of(y));
        pair[i][j] = code;
        pair[j][i] = code;
        profile_of_vertex[i].push(code as usize);
        profile_of_vertex[j].push(code as usize);
    }
    let invariant = profile_of_vertex
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p
        })
        .collect();
    let labelled: BTreeSet<&Hyperedge> = s.labels().values().flatten().collect();
    let groups = labelled.into_iter().map(|e| ix.group(e)).collect();
    (invariant, pair, groups)
}

/// Isomorphism of L2-sections: a bijection preserving skeleton edges and
/// carrying the label set of every edge onto the label set of its image.
pub fn l2_isomorphic(first: &L2Section, second: &L2Section, limits: &Limits) -> Result<Option<IsoWitness>, IsoError> {
    let (sa, sb) = (first.skeleton(), second.skeleton());
    check_size(sa.vertex_count().max(sb.vertex_count()), limits)?;
    if sa.vertex_count() != sb.vertex_count() || sa.edge_count() != sb.edge_count() {
        return Ok(None);
    }
    let (ia, ib) = (Indexed::new(sa.vertices()), Indexed::new(sb.vertices()));
    let mut profiles = HashMap::new();
    let (inv_a, pair_a, groups_a) = l2_tables(first, &ia, &mut profiles);
    let (inv_b, pair_b, groups_b) = l2_tables(second, &ib, &mut profiles);
    let labels_match = |map: &[usize]| {
        first.labels().iter().all(|((x, y), set)| {
            let image = |v: &VertexId| ib.names[map[ia.of(v)]];
            let target: Option<&BTreeSet<Hyperedge>> = second.label(image(x), image(y));
            let mapped: Option<BTreeSet<Hyperedge>> = set
                .iter()
                .map(|e| Hyperedge::new(e.vertices().iter().map(|v| image(v).clone())).ok())
                .collect();
            target.is_some() && mapped.as_ref() == target
        })
    };
    let problem = Problem {
        n: sa.vertex_count(),
        invariant_a: inv_a,
        invariant_b: inv_b,
        pair_a,
        pair_b,
        groups_a,
        groups_b: groups_b.into_iter().collect(),
        leaf: &labels_match,
    };
    Ok(problem.solve().map(|map| witness(&ia, &ib, &map)))
}
