//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! search code it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use hyperprod::graphfactor::factor_graph;
use hyperprod::iso::{are_isomorphic, random_connected_graph};
use hyperprod::{Graph, Hypergraph, Limits, VertexId};

pub fn v(s: &str) -> VertexId {
    VertexId::new(s).unwrap()
}

pub fn hg(lists: &[&[&str]]) -> Hypergraph {
    Hypergraph::from_lists(lists).unwrap()
}

pub fn path(n: usize, prefix: &str) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    Graph::new(names.windows(2).map(|w| (v(&w[0]), v(&w[1])))).unwrap()
}

pub fn complete(n: usize, prefix: &str) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((v(&format!("{prefix}{i}")), v(&format!("{prefix}{j}"))));
        }
    }
    Graph::new(pairs).unwrap()
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
        pairs.push((format!("o{i}"), format!("i{i}")));
        pairs.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
    }
    Graph::new(pairs.iter().map(|(a, b)| (v(a), v(b)))).unwrap()
}

/// Every subset that is a clique and has no clique strictly above it.
pub fn brute_maximal_cliques(g: &Graph) -> BTreeSet<BTreeSet<VertexId>> {
    let vs: Vec<&VertexId> = g.vertices().iter().collect();
    let n = vs.len();
    assert!(n <= 16);
    let is_clique = |mask: u32| {
        (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || g.has_edge(vs[i], vs[j])))
    };
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| m.count_ones() >= 2 && is_clique(m)).collect();
    let clique_set: BTreeSet<u32> = cliques.iter().copied().collect();
    cliques
        .iter()
        .filter(|&&m| (0..n).all(|i| m >> i & 1 == 1 || !clique_set.contains(&(m | 1 << i))))
        .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| vs[i].clone()).collect())
        .collect()
}

/// Shortest path lengths by enumerating all simple paths from every vertex.
pub fn path_enumeration_distances(g: &Graph) -> BTreeMap<(VertexId, VertexId), usize> {
    fn walk(g: &Graph, at: &VertexId, seen: &mut Vec<VertexId>, best: &mut BTreeMap<VertexId, usize>) {
        let len = seen.len() - 1;
        let entry = best.entry(at.clone()).or_insert(usize::MAX);
        *entry = (*entry).min(len);
        for w in g.neighbors(at) {
            if !seen.contains(w) {
                seen.push(w.clone());
                walk(g, w, seen, best);
                seen.pop();
            }
        }
    }
    let mut out = BTreeMap::new();
    for s in g.vertices() {
        let mut best = BTreeMap::new();
        walk(g, s, &mut vec![s.clone()], &mut best);
        for (t, d) in best {
            out.insert((s.clone(), t), d);
        }
    }
    out
}

pub fn bfs_distances(g: &Graph, s: &VertexId) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::from([(s.clone(), 0)]);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for y in g.neighbors(&x) {
            if !dist.contains_key(y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y.clone());
            }
        }
    }
    dist
}

fn proper(h: &Hypergraph, index: &BTreeMap<&VertexId, usize>, colors: &[usize], strong: bool) -> bool {
    h.edges().iter().all(|e| {
        let cs: Vec<usize> = e.vertices().iter().map(|x| colors[index[x]]).collect();
        if strong {
            cs.iter().collect::<BTreeSet<_>>().len() == cs.len()
        } else {
            cs.iter().any(|&c| c != cs[0])
        }
    })
}

/// Whether some assignment of `k` colors is proper, trying every one of the
/// `k^n` assignments in order.
pub fn brute_colorable(h: &Hypergraph, k: usize, strong: bool) -> bool {
    let n = h.vertex_count();
    let index: BTreeMap<&VertexId, usize> = h.vertices().iter().enumerate().map(|(i, x)| (x, i)).collect();
    if k == 0 {
        return n == 0;
    }
    let mut colors = vec![0usize; n];
    loop {
        if proper(h, &index, &colors, strong) {
            return true;
        }
        let mut i = 0;
        while i < n && colors[i] == k - 1 {
            colors[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        colors[i] += 1;
    }
}

pub fn brute_chromatic_number(h: &Hypergraph, strong: bool) -> usize {
    (1..=h.vertex_count()).find(|&k| brute_colorable(h, k, strong)).unwrap()
}

/// Smallest number of colors on hyperedges such that intersecting hyperedges
/// differ, by exhaustive search.
pub fn brute_chromatic_index(h: &Hypergraph) -> usize {
    let edges: Vec<_> = h.edges().iter().collect();
    let m = edges.len();
    for k in 1..=m {
        let mut colors = vec![0usize; m];
        loop {
            let ok = (0..m).all(|i| {
                (i + 1..m).all(|j| colors[i] != colors[j] || edges[i].intersection_size(edges[j]) == 0)
            });
            if ok {
                return k;
            }
            let mut i = 0;
            while i < m && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            colors[i] += 1;
        }
    }
    m
}

/// Whether `map` carries the hyperedges of `a` exactly onto those of `b`.
pub fn is_isomorphism(a: &Hypergraph, b: &Hypergraph, map: &BTreeMap<VertexId, VertexId>) -> bool {
    if map.len() != a.vertex_count() || map.keys().ne(a.vertices().iter()) {
        return false;
    }
    let image: BTreeSet<&VertexId> = map.values().collect();
    if image.len() != map.len() || image.into_iter().ne(b.vertices().iter()) {
        return false;
    }
    let mapped: BTreeSet<BTreeSet<&VertexId>> =
        a.edges().iter().map(|e| e.vertices().iter().map(|x| &map[x]).collect()).collect();
    let target: BTreeSet<BTreeSet<&VertexId>> = b.edges().iter().map(|e| e.vertices().iter().collect()).collect();
    mapped == target
}

/// Isomorphism by trying every permutation (Heap's algorithm).
pub fn brute_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let src: Vec<VertexId> = a.vertices().iter().cloned().collect();
    let mut dst: Vec<VertexId> = b.vertices().iter().cloned().collect();
    let n = dst.len();
    let check = |dst: &[VertexId]| is_isomorphism(a, b, &src.iter().cloned().zip(dst.iter().cloned()).collect());
    if check(&dst) {
        return true;
    }
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                dst.swap(0, i);
            } else {
                dst.swap(c[i], i);
            }
            if check(&dst) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Multiset equality up to isomorphism. Greedy matching is exact because
/// isomorphism is an equivalence relation.
pub fn same_multiset_up_to_iso(a: &[Hypergraph], b: &[Hypergraph], limits: &Limits) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = (0..b.len()).find(|&j| !used[j] && are_isomorphic(x, &b[j], limits).unwrap().is_some());
        hit.map(|j| used[j] = true).is_some()
    })
}

/// A connected graph on `n` vertices that `factor_graph` reports prime,
/// searching seeds upward from `seed`.
pub fn random_prime_graph(n: usize, p: f64, seed: u64) -> (Graph, u64) {
    (seed..)
        .map(|s| (random_connected_graph(n, p, s), s))
        .find(|(g, _)| factor_graph(g).unwrap().is_prime())
        .unwrap()
}

/// Renames every vertex `x` to `prefix` + `x`, with tuples kept intact.
pub fn prefixed(h: &Hypergraph, prefix: &str) -> Hypergraph {
    h.relabel(|x| v(&format!("{prefix}{}", x.as_str().replace(['(', ')', ','], "_")))).unwrap()
}

/// The product built straight from the definition: hyperedges `{x} × e` and
/// `e × {u}` over plain string tuples.
pub fn definitional_product(a: &Hypergraph, b: &Hypergraph) -> (BTreeSet<Vec<String>>, BTreeSet<Vec<String>>) {
    let tuple = |x: &VertexId, y: &VertexId| format!("({},{})", x.as_str(), y.as_str());
    let mut a1 = BTreeSet::new();
    for x in a.vertices() {
        for e in b.edges() {
            let mut t: Vec<String> = e.vertices().iter().map(|y| tuple(x, y)).collect();
            t.sort();
            a1.insert(t);
        }
    }
    let mut a2 = BTreeSet::new();
    for e in a.edges() {
        for u in b.vertices() {
            let mut t: Vec<String> = e.vertices().iter().map(|x| tuple(x, u)).collect();
            t.sort();
            a2.insert(t);
        }
    }
    (a1, a2)
}

pub fn edge_strings(h: &Hypergraph) -> BTreeSet<Vec<String>> {
    h.edges().iter().map(|e| e.vertices().iter().map(|x| x.to_string()).collect()).collect()
}
