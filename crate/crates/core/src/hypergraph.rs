//! Finite simple hypergraphs and graphs.
//!
//! A [`Hypergraph`] is a covering family of vertex sets: every vertex lies in
//! at least one hyperedge, every hyperedge has at least two vertices, and no
//! hyperedge is contained in another. A [`Graph`] is the special case where
//! every hyperedge is a pair.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use serde_json::{json, Value};
use thiserror::Error;

use crate::vertex::{VertexError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error("vertex {0} appears twice in one hyperedge")]
    DuplicateVertex(VertexId),
    #[error("hyperedge {{{0}}} is a loop (fewer than two vertices)")]
    Loop(String),
    #[error("not simple: hyperedge {inner} is contained in {outer}")]
    NonSimple { inner: Hyperedge, outer: Hyperedge },
    #[error("empty hypergraph")]
    Empty,
    #[error("hyperedge {0} does not have exactly two vertices")]
    NotAGraph(Hyperedge),
    #[error("line has {0} tokens, a graph edge needs exactly 2")]
    WrongArity(usize),
    #[error("structured input: {0}")]
    Structured(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<HypergraphError>,
    },
}

/// A hyperedge: a sorted, duplicate-free list of at least two vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperedge(Vec<VertexId>);

impl Hyperedge {
    pub fn new<I>(vertices: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateVertex(w[0].clone()));
        }
        if vs.len() < 2 {
            let shown = vs.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ");
            return Err(HypergraphError::Loop(shown));
        }
        Ok(Hyperedge(vs))
    }

    /// The edge `{a, b}` of a graph.
    pub fn pair(a: VertexId, b: VertexId) -> Result<Self, HypergraphError> {
        Hyperedge::new([a, b])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// `self ⊆ other`, by a merge over both sorted lists.
    pub fn is_subset(&self, other: &Hyperedge) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn intersection_size(&self, other: &Hyperedge) -> usize {
        self.0.iter().filter(|v| other.contains(v)).count()
    }

    /// All unordered vertex pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(i, a)| self.0[i + 1..].iter().map(move |b| (a, b)))
    }

    /// The hyperedge as one `.hg` line: space-separated sorted tokens.
    pub fn to_line(&self) -> String {
        self.0.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ")
    }

    pub(crate) fn from_sorted_unchecked(vs: Vec<VertexId>) -> Self {
        debug_assert!(vs.len() >= 2 && vs.windows(2).all(|w| w[0] < w[1]));
        Hyperedge(vs)
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(VertexId::as_str).collect::<Vec<_>>().join(","))
    }
}

/// A finite simple hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Hyperedge>,
}

/// Degree statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub rank: usize,
    pub degree: BTreeMap<VertexId, usize>,
}

/// Which flavour of input `parse_hypergraph` expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Hypergraph,
    Graph,
}

impl Hypergraph {
    /// Builds a hypergraph from its hyperedges. Repeated hyperedges collapse
    /// into one; containment between distinct hyperedges is rejected.
    pub fn new<I>(edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = Hyperedge>,
    {
        let edges: BTreeSet<Hyperedge> = edges.into_iter().collect();
        if edges.is_empty() {
            return Err(HypergraphError::Empty);
        }
        check_simple(&edges)?;
        let vertices = edges.iter().flat_map(|e| e.0.iter().cloned()).collect();
        Ok(Hypergraph { vertices, edges })
    }

    /// Convenience constructor from string tokens, mostly for tests and
    /// examples: `Hypergraph::from_lists(&[&["a", "b", "c"], &["c", "d"]])`.
    pub fn from_lists<S: AsRef<str>>(lists: &[&[S]]) -> Result<Self, HypergraphError> {
        let mut edges = Vec::with_capacity(lists.len());
        for list in lists {
            let vs = list
                .iter()
                .map(|s| VertexId::new(s.as_ref()))
                .collect::<Result<Vec<_>, _>>()?;
            edges.push(Hyperedge::new(vs)?);
        }
        Hypergraph::new(edges)
    }

    pub(crate) fn from_parts_unchecked(edges: BTreeSet<Hyperedge>) -> Self {
        let vertices = edges.iter().flat_map(|e| e.0.iter().cloned()).collect();
        Hypergraph { vertices, edges }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Hyperedge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Hyperedge) -> bool {
        self.edges.contains(e)
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn stats(&self) -> Stats {
        let mut degree: BTreeMap<VertexId, usize> =
            self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for e in &self.edges {
            for v in e.vertices() {
                *degree.get_mut(v).expect("vertex of hyperedge") += 1;
            }
        }
        Stats {
            n: self.vertices.len(),
            m: self.edges.len(),
            max_degree: degree.values().copied().max().unwrap_or(0),
            rank: self.edges.iter().map(Hyperedge::len).max().unwrap_or(0),
            degree,
        }
    }

    /// True iff the 2-section is connected.
    pub fn is_connected(&self) -> bool {
        let index: HashMap<&VertexId, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..index.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = index.len();
        for e in &self.edges {
            let first = index[&e.0[0]];
            for v in &e.0[1..] {
                let (a, b) = (find(&mut parent, first), find(&mut parent, index[v]));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        components == 1
    }

    /// Canonical `.hg` text: one sorted hyperedge per line, lines sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&e.to_line());
            out.push('\n');
        }
        out
    }

    /// Canonical structured form `{"vertices": [...], "hyperedges": [[...]]}`.
    pub fn to_json_value(&self) -> Value {
        json!({
            "vertices": self.vertices.iter().map(VertexId::as_str).collect::<Vec<_>>(),
            "hyperedges": self
                .edges
                .iter()
                .map(|e| e.0.iter().map(VertexId::as_str).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(value: &Value) -> Result<Self, HypergraphError> {
        let bad = |msg: &str| HypergraphError::Structured(msg.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let edges_v = obj
            .get("hyperedges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"hyperedges\" array"))?;
        let mut edges = BTreeSet::new();
        for ev in edges_v {
            let arr = ev.as_array().ok_or_else(|| bad("hyperedge is not an array"))?;
            let vs = arr
                .iter()
                .map(|t| {
                    t.as_str()
                        .ok_or_else(|| bad("vertex is not a string"))
                        .and_then(|s| VertexId::new(s).map_err(HypergraphError::from))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let e = Hyperedge::new(vs)?;
            if !edges.insert(e.clone()) {
                return Err(HypergraphError::NonSimple { inner: e.clone(), outer: e });
            }
        }
        let h = Hypergraph::new(edges)?;
        if let Some(vs) = obj.get("vertices") {
            let vs = vs.as_array().ok_or_else(|| bad("\"vertices\" is not an array"))?;
            let listed = vs
                .iter()
                .map(|t| {
                    t.as_str()
                        .ok_or_else(|| bad("vertex is not a string"))
                        .and_then(|s| VertexId::new(s).map_err(HypergraphError::from))
                })
                .collect::<Result<BTreeSet<_>, _>>()?;
            if listed != h.vertices {
                return Err(bad("\"vertices\" differs from the union of the hyperedges"));
            }
        }
        Ok(h)
    }

    pub fn from_json(text: &str) -> Result<Self, HypergraphError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| HypergraphError::Structured(e.to_string()))?;
        Hypergraph::from_json_value(&value)
    }

    /// Applies a vertex renaming. The map must be injective on the vertex set.
    pub fn relabel<F>(&self, mut f: F) -> Result<Hypergraph, HypergraphError>
    where
        F: FnMut(&VertexId) -> VertexId,
    {
        let map: BTreeMap<&VertexId, VertexId> = self.vertices.iter().map(|v| (v, f(v))).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Hyperedge::new(e.0.iter().map(|v| map[v].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Hypergraph::new(edges)
    }
}

fn check_simple(edges: &BTreeSet<Hyperedge>) -> Result<(), HypergraphError> {
    let mut incidence: HashMap<&VertexId, Vec<&Hyperedge>> = HashMap::new();
    for e in edges {
        for v in &e.0 {
            incidence.entry(v).or_default().push(e);
        }
    }
    for e in edges {
        // any superset of e must contain e's first vertex
        for f in &incidence[&e.0[0]] {
            if f.len() > e.len() && e.is_subset(f) {
                return Err(HypergraphError::NonSimple { inner: e.clone(), outer: (*f).clone() });
            }
        }
    }
    Ok(())
}

/// Parses the `.hg` text format.
///
/// `#` starts a comment, blank lines are skipped, and every other line is one
/// hyperedge given as whitespace-separated vertex tokens. Duplicate lines are
/// rejected as non-simple input.
pub fn parse_hypergraph(text: &str, kind: InputKind) -> Result<Hypergraph, HypergraphError> {
    let at = |line: usize, e: HypergraphError| HypergraphError::AtLine { line, source: Box::new(e) };
    let mut edges: BTreeMap<Hyperedge, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if kind == InputKind::Graph && tokens.len() != 2 {
            return Err(at(line_no, HypergraphError::WrongArity(tokens.len())));
        }
        let vs = tokens
            .iter()
            .map(|t| VertexId::new(*t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| at(line_no, e.into()))?;
        let e = Hyperedge::new(vs).map_err(|e| at(line_no, e))?;
        if edges.contains_key(&e) {
            return Err(at(line_no, HypergraphError::NonSimple { inner: e.clone(), outer: e }));
        }
        edges.insert(e, line_no);
    }
    Hypergraph::new(edges.into_keys())
}

/// A simple graph: a hypergraph whose hyperedges are all pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    inner: Hypergraph,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new<I>(edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let edges = edges
            .into_iter()
            .map(|(a, b)| Hyperedge::pair(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Graph::try_from(Hypergraph::new(edges)?)
    }

    /// `Graph::from_pairs(&[("a", "b"), ("b", "c")])`.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, HypergraphError> {
        let edges = pairs
            .iter()
            .map(|(a, b)| Ok((VertexId::new(*a)?, VertexId::new(*b)?)))
            .collect::<Result<Vec<_>, HypergraphError>>()?;
        Graph::new(edges)
    }

    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        Graph::try_from(parse_hypergraph(text, InputKind::Graph)?)
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.inner
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.inner
    }

    pub fn neighbors(&self, v: &VertexId) -> impl Iterator<Item = &VertexId> + '_ {
        self.adjacency.get(v).into_iter().flatten()
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adjacency.get(a).is_some_and(|n| n.contains(b))
    }

    /// Edges as sorted pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.inner.edges.iter().map(|e| (&e.0[0], &e.0[1]))
    }

    pub(crate) fn indexed(&self) -> Indexed {
        Indexed::new(self)
    }
}

impl TryFrom<Hypergraph> for Graph {
    type Error = HypergraphError;

    fn try_from(h: Hypergraph) -> Result<Self, Self::Error> {
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for e in &h.edges {
            if e.len() != 2 {
                return Err(HypergraphError::NotAGraph(e.clone()));
            }
            adjacency.entry(e.0[0].clone()).or_default().insert(e.0[1].clone());
            adjacency.entry(e.0[1].clone()).or_default().insert(e.0[0].clone());
        }
        Ok(Graph { inner: h, adjacency })
    }
}

impl Deref for Graph {
    type Target = Hypergraph;

    fn deref(&self) -> &Hypergraph {
        &self.inner
    }
}

/// Integer-indexed view of a graph. Index order follows vertex order, so
/// index comparisons agree with name comparisons.
#[derive(Debug, Clone)]
pub(crate) struct Indexed {
    pub names: Vec<VertexId>,
    pub index: HashMap<VertexId, usize>,
    pub adj: Vec<Vec<usize>>,
    /// Edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Indexed {
    fn new(g: &Graph) -> Self {
        let names: Vec<VertexId> = g.vertices().iter().cloned().collect();
        let index: HashMap<VertexId, usize> =
            names.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut adj = vec![Vec::new(); names.len()];
        let mut edges = Vec::with_capacity(g.edge_count());
        for (a, b) in g.edge_pairs() {
            let (i, j) = (index[a], index[b]);
            adj[i].push(j);
            adj[j].push(i);
            edges.push((i, j));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        edges.sort_unstable();
        Indexed { names, index, adj, edges }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}
