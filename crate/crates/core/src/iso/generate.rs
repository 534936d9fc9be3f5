//! Seeded random instances. Output depends only on the arguments.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Graph, Hyperedge, Hypergraph};
use crate::sections::maximal_cliques;
use crate::vertex::VertexId;

fn name(prefix: &str, i: usize) -> VertexId {
    VertexId::new(format!("{prefix}{i}")).expect("generated names are valid tokens")
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A connected graph on `v0..v{n-1}`: each pair is an edge with probability
/// `edge_prob`, then random edges between distinct components are added
/// until the graph is connected.
///
/// # Panics
/// If `n < 2`.
pub fn random_connected_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    assert!(n >= 2, "a connected graph needs at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob.clamp(0.0, 1.0)) {
                edges.push((i, j));
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    loop {
        let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        let crossing: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| roots[i] != roots[j])
            .collect();
        let Some(&(i, j)) = crossing.choose(&mut rng) else { break };
        edges.push((i, j));
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    Graph::new(edges.into_iter().map(|(i, j)| (name("v", i), name("v", j)))).expect("edges are valid pairs")
}

/// The clique hypergraph of [`random_connected_graph`]: its hyperedges are the
/// maximal cliques of that graph, so it is conformal and connected, and its
/// 2-section is the graph.
pub fn random_conformal_hypergraph(n: usize, edge_prob: f64, seed: u64) -> Hypergraph {
    let g = random_connected_graph(n, edge_prob, seed);
    let cliques = maximal_cliques(&g, usize::MAX).expect("no limit");
    Hypergraph::new(cliques.into_iter().map(|c| Hyperedge::new(c).expect("cliques of a graph have two vertices")))
        .expect("maximal cliques form a simple hypergraph")
}

/// A simple hypergraph drawn from `m` random subsets of `v0..v{n-1}` with
/// sizes in `2..=max_rank`; subsets contained in others are dropped. It need
/// not be connected or conformal.
///
/// # Panics
/// If `n < 2` or `max_rank < 2`.
pub fn random_hypergraph(n: usize, m: usize, max_rank: usize, seed: u64) -> Hypergraph {
    assert!(n >= 2 && max_rank >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<usize> = (0..n).collect();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..m.max(1) {
        let size = rng.gen_range(2..=max_rank.min(n));
        let mut s: Vec<usize> = pool.choose_multiple(&mut rng, size).copied().collect();
        s.sort_unstable();
        sets.insert(s);
    }
    let maximal: Vec<&Vec<usize>> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .collect();
    Hypergraph::new(
        maximal.into_iter().map(|s| Hyperedge::new(s.iter().map(|&i| name("v", i))).expect("distinct vertices")),
    )
    .expect("maximal sets form a simple hypergraph")
}

/// A copy of `h` with its vertices renamed to `{prefix}0..` by a random
/// permutation.
pub fn random_relabel(h: &Hypergraph, prefix: &str, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<usize> = (0..h.vertex_count()).collect();
    targets.shuffle(&mut rng);
    let index: Vec<&VertexId> = h.vertices().iter().collect();
    h.relabel(|v| name(prefix, targets[index.binary_search(&v).expect("vertex of h")]))
        .expect("a permutation keeps the hypergraph valid")
}
