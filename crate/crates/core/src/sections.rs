//! 2-sections, labelled 2-sections (L2-sections) and conformality.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::hypergraph::{Graph, Hyperedge, Hypergraph, HypergraphError};
use crate::vertex::VertexId;

/// An unordered vertex pair stored as `(a, b)` with `a < b`.
pub type Pair = (VertexId, VertexId);

pub fn pair(a: &VertexId, b: &VertexId) -> Pair {
    if a < b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn show(p: &Pair) -> String {
    format!("{} {}", p.0, p.1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error("label map and skeleton disagree on edge {}", show(.0))]
    UnknownEdge(Pair),
    #[error("edge {} has an empty label set", show(.0))]
    EmptyLabels(Pair),
    #[error("hyperedge {hyperedge} labels edge {} but does not contain it", show(.pair))]
    LabelMissesPair { hyperedge: Hyperedge, pair: Pair },
    #[error("hyperedge {hyperedge} is a label but pair {} does not carry it", show(.missing))]
    Closure { hyperedge: Hyperedge, missing: Pair },
    #[error("subsection condition violated: hyperedge {hyperedge} is labelled but pair {} is not in the edge subset", show(.missing))]
    UnclosedLabel { hyperedge: Hyperedge, missing: Pair },
    #[error("edge {} is not an edge of the skeleton", show(.0))]
    NotInSkeleton(Pair),
    #[error("empty edge subset")]
    EmptySubsection,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("more than {0} maximal cliques")]
    CliqueLimit(usize),
}

/// The 2-section: same vertices, `{x, y}` an edge iff some hyperedge holds both.
pub fn two_section(h: &Hypergraph) -> Graph {
    let edges: BTreeSet<Hyperedge> = h
        .edges()
        .iter()
        .flat_map(|e| e.pairs().map(|(a, b)| Hyperedge::from_sorted_unchecked(vec![a.clone(), b.clone()])))
        .collect();
    Graph::try_from(Hypergraph::from_parts_unchecked(edges)).expect("pairs form a graph")
}

/// A 2-section whose edges are labelled by the hyperedges containing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L2Section {
    skeleton: Graph,
    labels: BTreeMap<Pair, BTreeSet<Hyperedge>>,
}

impl L2Section {
    /// Validates and assembles a section from a skeleton and a label map.
    pub fn new(skeleton: Graph, labels: BTreeMap<Pair, BTreeSet<Hyperedge>>) -> Result<Self, SectionError> {
        for (a, b) in skeleton.edge_pairs() {
            let p = (a.clone(), b.clone());
            if !labels.contains_key(&p) {
                return Err(SectionError::UnknownEdge(p));
            }
        }
        for (p, set) in &labels {
            if !skeleton.has_edge(&p.0, &p.1) || p.0 >= p.1 {
                return Err(SectionError::UnknownEdge(p.clone()));
            }
            if set.is_empty() {
                return Err(SectionError::EmptyLabels(p.clone()));
            }
            for e in set {
                if !e.contains(&p.0) || !e.contains(&p.1) {
                    return Err(SectionError::LabelMissesPair { hyperedge: e.clone(), pair: p.clone() });
                }
            }
        }
        let section = L2Section { skeleton, labels };
        section.check_closure()?;
        Ok(section)
    }

    pub fn skeleton(&self) -> &Graph {
        &self.skeleton
    }

    pub fn labels(&self) -> &BTreeMap<Pair, BTreeSet<Hyperedge>> {
        &self.labels
    }

    pub fn label(&self, a: &VertexId, b: &VertexId) -> Option<&BTreeSet<Hyperedge>> {
        self.labels.get(&pair(a, b))
    }

    /// Every labelled hyperedge must appear on each of its vertex pairs.
    fn check_closure(&self) -> Result<(), SectionError> {
        let all: BTreeSet<&Hyperedge> = self.labels.values().flatten().collect();
        for e in all {
            for (a, b) in e.pairs() {
                let p = (a.clone(), b.clone());
                if !self.labels.get(&p).is_some_and(|s| s.contains(e)) {
                    return Err(SectionError::Closure { hyperedge: e.clone(), missing: p });
                }
            }
        }
        Ok(())
    }

    /// `{"edges": [{"edge": [x, y], "labels": [[...], ...]}, ...]}`.
    pub fn to_json_value(&self) -> Value {
        let edges: Vec<Value> = self
            .labels
            .iter()
            .map(|(p, set)| {
                json!({
                    "edge": [p.0.as_str(), p.1.as_str()],
                    "labels": set
                        .iter()
                        .map(|e| e.vertices().iter().map(VertexId::as_str).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "edges": edges })
    }

    /// One line per edge: `x y | a b c | a b d`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (p, set) in &self.labels {
            out.push_str(&show(p));
            for e in set {
                out.push_str(" | ");
                out.push_str(&e.to_line());
            }
            out.push('\n');
        }
        out
    }

    pub(crate) fn from_parts_unchecked(skeleton: Graph, labels: BTreeMap<Pair, BTreeSet<Hyperedge>>) -> Self {
        L2Section { skeleton, labels }
    }
}

pub fn l2_section(h: &Hypergraph) -> L2Section {
    let mut labels: BTreeMap<Pair, BTreeSet<Hyperedge>> = BTreeMap::new();
    for e in h.edges() {
        for (a, b) in e.pairs() {
            labels.entry((a.clone(), b.clone())).or_default().insert(e.clone());
        }
    }
    L2Section { skeleton: two_section(h), labels }
}

/// Rebuilds the hypergraph whose hyperedges are the union of all labels.
pub fn inverse_l2(section: &L2Section) -> Result<Hypergraph, SectionError> {
    section.check_closure()?;
    let edges: BTreeSet<Hyperedge> = section.labels.values().flatten().cloned().collect();
    Ok(Hypergraph::new(edges)?)
}

/// Restricts a section to an edge subset. Every hyperedge labelling a kept
/// edge must have all of its pairs kept as well.
pub fn subsection<I>(section: &L2Section, edges: I) -> Result<L2Section, SectionError>
where
    I: IntoIterator<Item = Pair>,
{
    let kept: BTreeSet<Pair> = edges.into_iter().map(|(a, b)| pair(&a, &b)).collect();
    if kept.is_empty() {
        return Err(SectionError::EmptySubsection);
    }
    let mut labels = BTreeMap::new();
    for p in &kept {
        let set = section.labels.get(p).ok_or_else(|| SectionError::NotInSkeleton(p.clone()))?;
        labels.insert(p.clone(), set.clone());
    }
    for set in labels.values() {
        for e in set {
            for (a, b) in e.pairs() {
                let q = (a.clone(), b.clone());
                if !kept.contains(&q) {
                    return Err(SectionError::UnclosedLabel { hyperedge: e.clone(), missing: q });
                }
            }
        }
    }
    let skeleton = Graph::new(kept.iter().cloned())?;
    Ok(L2Section { skeleton, labels })
}

/// All inclusion-maximal cliques, each sorted, listed in lexicographic order.
///
/// Bron–Kerbosch with Tomita pivoting over bitsets. Fails once more than
/// `limit` cliques have been produced.
pub fn maximal_cliques(g: &Graph, limit: usize) -> Result<Vec<Vec<VertexId>>, SectionError> {
    let ix = g.indexed();
    let n = ix.n();
    let words = n.div_ceil(64).max(1);
    let mut nbr = vec![vec![0u64; words]; n];
    for (a, list) in ix.adj.iter().enumerate() {
        for &b in list {
            nbr[a][b / 64] |= 1 << (b % 64);
        }
    }
    let mut p = vec![0u64; words];
    for v in 0..n {
        p[v / 64] |= 1 << (v % 64);
    }
    let x = vec![0u64; words];
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(&nbr, &mut r, p, x, &mut out, limit)?;
    let mut cliques: Vec<Vec<VertexId>> = out
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c.into_iter().map(|i| ix.names[i].clone()).collect()
        })
        .collect();
    cliques.sort();
    Ok(cliques)
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let t = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + t)
        })
    })
}

fn bron_kerbosch(
    nbr: &[Vec<u64>],
    r: &mut Vec<usize>,
    mut p: Vec<u64>,
    mut x: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<(), SectionError> {
    if p.iter().all(|&w| w == 0) {
        if x.iter().all(|&w| w == 0) {
            if out.len() >= limit {
                return Err(SectionError::CliqueLimit(limit));
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = bits(&p)
        .chain(bits(&x))
        .max_by_key(|&u| p.iter().zip(&nbr[u]).map(|(a, b)| (a & b).count_ones()).sum::<u32>())
        .expect("p is non-empty");
    let outside: Vec<u64> = p.iter().zip(&nbr[pivot]).map(|(a, b)| a & !b).collect();
    let candidates: Vec<usize> = bits(&outside).collect();
    for v in candidates {
        let np: Vec<u64> = p.iter().zip(&nbr[v]).map(|(a, b)| a & b).collect();
        let nx: Vec<u64> = x.iter().zip(&nbr[v]).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(nbr, r, np, nx, out, limit)?;
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
    Ok(())
}

/// Outcome of a conformality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalityReport {
    pub conformal: bool,
    /// A maximal clique that is not a hyperedge, or else a hyperedge that is
    /// not a maximal clique. Present iff not conformal.
    pub witness: Option<Vec<VertexId>>,
}

impl ConformalityReport {
    pub fn to_json_value(&self) -> Value {
        json!({
            "conformal": self.conformal,
            "witness": self.witness.as_ref().map(|w| w.iter().map(VertexId::as_str).collect::<Vec<_>>()),
        })
    }
}

/// A hypergraph is conformal iff its hyperedges are exactly the maximal
/// cliques of its 2-section.
pub fn is_conformal(h: &Hypergraph, clique_limit: usize) -> Result<ConformalityReport, SectionError> {
    let cliques = maximal_cliques(&two_section(h), clique_limit)?;
    let clique_set: BTreeSet<&[VertexId]> = cliques.iter().map(Vec::as_slice).collect();
    if let Some(c) = cliques.iter().find(|c| !h.edges().iter().any(|e| e.vertices() == c.as_slice())) {
        return Ok(ConformalityReport { conformal: false, witness: Some(c.clone()) });
    }
    if let Some(e) = h.edges().iter().find(|e| !clique_set.contains(e.vertices())) {
        return Ok(ConformalityReport { conformal: false, witness: Some(e.vertices().to_vec()) });
    }
    Ok(ConformalityReport { conformal: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    fn e(xs: &[&str]) -> Hyperedge {
        Hyperedge::new(xs.iter().map(|s| v(s))).unwrap()
    }

    fn p(a: &str, b: &str) -> Pair {
        pair(&v(a), &v(b))
    }

    fn h(lists: &[&[&str]]) -> Hypergraph {
        Hypergraph::from_lists(lists).unwrap()
    }

    #[test]
    fn two_section_examples() {
        let g = two_section(&h(&[&["a", "b", "c"]]));
        assert_eq!(g.to_text(), "a b\na c\nb c\n");
        let g = two_section(&h(&[&["a", "b"], &["b", "c"]]));
        assert_eq!(g.to_text(), "a b\nb c\n");
    }

    #[test]
    fn l2_labels() {
        let s = l2_section(&h(&[&["a", "b", "c"], &["a", "b", "d"]]));
        let abc = e(&["a", "b", "c"]);
        let abd = e(&["a", "b", "d"]);
        assert_eq!(s.labels()[&p("a", "b")], BTreeSet::from([abc.clone(), abd.clone()]));
        assert_eq!(s.labels()[&p("a", "c")], BTreeSet::from([abc.clone()]));
        assert_eq!(s.labels()[&p("a", "d")], BTreeSet::from([abd.clone()]));
        assert_eq!(s.labels()[&p("b", "c")], BTreeSet::from([abc]));
        assert_eq!(s.labels()[&p("b", "d")], BTreeSet::from([abd]));
        assert_eq!(s.labels().len(), 5);
    }

    #[test]
    fn single_edge_round_trip() {
        let g = Graph::from_pairs(&[("a", "b")]).unwrap();
        let labels = BTreeMap::from([(p("a", "b"), BTreeSet::from([e(&["a", "b"])]))]);
        let s = L2Section::new(g, labels).unwrap();
        assert_eq!(inverse_l2(&s).unwrap(), h(&[&["a", "b"]]));
        assert_eq!(s.to_json_value().to_string(), r#"{"edges":[{"edge":["a","b"],"labels":[["a","b"]]}]}"#);
    }

    #[test]
    fn new_rejects_broken_closure() {
        let g = Graph::from_pairs(&[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let labels = BTreeMap::from([
            (p("a", "b"), BTreeSet::from([e(&["a", "b", "c"])])),
            (p("a", "c"), BTreeSet::from([e(&["a", "c"])])),
            (p("b", "c"), BTreeSet::from([e(&["b", "c"])])),
        ]);
        assert!(matches!(L2Section::new(g, labels), Err(SectionError::Closure { .. })));
    }

    #[test]
    fn inverse_detects_non_simple_labels() {
        let g = Graph::from_pairs(&[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let abc = e(&["a", "b", "c"]);
        let labels = BTreeMap::from([
            (p("a", "b"), BTreeSet::from([abc.clone(), e(&["a", "b"])])),
            (p("a", "c"), BTreeSet::from([abc.clone()])),
            (p("b", "c"), BTreeSet::from([abc])),
        ]);
        let s = L2Section::new(g, labels).unwrap();
        assert!(matches!(inverse_l2(&s), Err(SectionError::Hypergraph(HypergraphError::NonSimple { .. }))));
    }

    #[test]
    fn subsection_examples() {
        let s = l2_section(&h(&[&["a", "b", "c"], &["c", "d"]]));
        let sub = subsection(&s, [p("a", "b"), p("a", "c"), p("b", "c")]).unwrap();
        assert_eq!(inverse_l2(&sub).unwrap(), h(&[&["a", "b", "c"]]));

        let err = subsection(&s, [p("a", "b"), p("a", "c")]).unwrap_err();
        assert_eq!(err, SectionError::UnclosedLabel { hyperedge: e(&["a", "b", "c"]), missing: p("b", "c") });
        assert!(matches!(subsection(&s, [p("a", "d")]), Err(SectionError::NotInSkeleton(_))));
        assert_eq!(subsection(&s, []), Err(SectionError::EmptySubsection));
    }

    #[test]
    fn cliques_small() {
        let tri = Graph::from_pairs(&[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(maximal_cliques(&tri, 10).unwrap(), vec![vec![v("a"), v("b"), v("c")]]);
        let path = Graph::from_pairs(&[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(maximal_cliques(&path, 10).unwrap(), vec![vec![v("a"), v("b")], vec![v("b"), v("c")]]);
        assert_eq!(maximal_cliques(&path, 1), Err(SectionError::CliqueLimit(1)));
    }

    #[test]
    fn conformality_examples() {
        let r = is_conformal(&h(&[&["a", "b"], &["b", "c"], &["a", "c"]]), 100).unwrap();
        assert!(!r.conformal);
        assert_eq!(r.witness, Some(vec![v("a"), v("b"), v("c")]));
        let r = is_conformal(&h(&[&["a", "b", "c"]]), 100).unwrap();
        assert!(r.conformal && r.witness.is_none());
        assert_eq!(r.to_json_value().to_string(), r#"{"conformal":true,"witness":null}"#);
    }
}
