//! Exact vertex and edge colorings, and coloring a product from its factors.
//!
//! A weak coloring leaves no hyperedge monochromatic; a strong coloring gives
//! the vertices of each hyperedge pairwise distinct colors, which is the same
//! as a proper coloring of the 2-section. The chromatic index is the chromatic
//! number of the intersection graph of the hyperedges.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::hyperfactor::{factor_hypergraph, HyperfactorError};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::product::TupleVertex;
use crate::sections::two_section;
use crate::vertex::VertexId;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorMode {
    Weak,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {0} has no color")]
    Partial(VertexId),
    #[error("exact search over {size} items exceeds the limit of {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("coloring of factor {factor} does not use exactly the colors 0..{k}")]
    NotSurjective { factor: usize, k: usize },
    #[error("{colorings} colorings but {counts} chromatic numbers")]
    LengthMismatch { colorings: usize, counts: usize },
    #[error(transparent)]
    Factor(#[from] HyperfactorError),
}

/// A vertex coloring with colors `0, 1, 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    pub assignment: BTreeMap<VertexId, usize>,
}

impl Coloring {
    pub fn new(assignment: BTreeMap<VertexId, usize>) -> Self {
        Coloring { assignment }
    }

    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Self, crate::VertexError> {
        let assignment = pairs
            .iter()
            .map(|(v, c)| Ok((VertexId::new(*v)?, *c)))
            .collect::<Result<_, crate::VertexError>>()?;
        Ok(Coloring { assignment })
    }

    pub fn get(&self, v: &VertexId) -> Option<usize> {
        self.assignment.get(v).copied()
    }

    /// `|Im(f)|`.
    pub fn used_colors(&self) -> usize {
        self.assignment.values().collect::<BTreeSet<_>>().len()
    }

    /// True iff the image is exactly `0..k`.
    pub fn is_surjective_onto(&self, k: usize) -> bool {
        let image: BTreeSet<usize> = self.assignment.values().copied().collect();
        image.len() == k && image.iter().all(|&c| c < k)
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (v, c) in &self.assignment {
            map.insert(v.to_string(), json!(c));
        }
        json!({ "k": self.used_colors(), "assignment": map })
    }
}

/// A hyperedge coloring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeColoring {
    pub assignment: BTreeMap<Hyperedge, usize>,
}

impl EdgeColoring {
    pub fn used_colors(&self) -> usize {
        self.assignment.values().collect::<BTreeSet<_>>().len()
    }

    /// Intersecting hyperedges must differ.
    pub fn is_proper(&self) -> bool {
        let edges: Vec<(&Hyperedge, &usize)> = self.assignment.iter().collect();
        edges.iter().enumerate().all(|(i, (e, c))| {
            edges[i + 1..].iter().all(|(f, d)| c != d || e.intersection_size(f) == 0)
        })
    }

    /// Keys are hyperedges in `.hg` line form.
    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (e, c) in &self.assignment {
            map.insert(e.to_line(), json!(c));
        }
        json!({ "k": self.used_colors(), "assignment": map })
    }
}

pub fn verify_coloring(h: &Hypergraph, f: &Coloring, mode: ColorMode) -> Result<bool, ColoringError> {
    if let Some(v) = h.vertices().iter().find(|v| !f.assignment.contains_key(*v)) {
        return Err(ColoringError::Partial(v.clone()));
    }
    let ok = h.edges().iter().all(|e| {
        let colors: Vec<usize> = e.vertices().iter().map(|v| f.assignment[v]).collect();
        match mode {
            ColorMode::Weak => colors.iter().any(|&c| c != colors[0]),
            ColorMode::Strong => colors.iter().collect::<BTreeSet<_>>().len() == colors.len(),
        }
    });
    Ok(ok)
}

/// Constraint system for the exact search: `n` items and groups of item
/// indices, none of which may end up monochromatic.
struct Search<'a> {
    groups: &'a [Vec<usize>],
    member_of: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    k: usize,
    color: Vec<Option<usize>>,
    assigned_in_group: Vec<usize>,
    /// `seen[v][c]`: assigned neighbors of `v` with color `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(n: usize, groups: &'a [Vec<usize>], k: usize) -> Self {
        let mut member_of = vec![Vec::new(); n];
        let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (gi, g) in groups.iter().enumerate() {
            for &v in g {
                member_of[v].push(gi);
                neighbors[v].extend(g.iter().copied().filter(|&w| w != v));
            }
        }
        Search {
            groups,
            member_of,
            neighbors: neighbors.into_iter().map(|s| s.into_iter().collect()).collect(),
            k,
            color: vec![None; n],
            assigned_in_group: vec![0; groups.len()],
            seen: vec![vec![0; k]; n],
            saturation: vec![0; n],
        }
    }

    /// Uncolored item with the most distinct neighbor colors, then the
    /// highest degree, then the lowest index.
    fn pick(&self) -> Option<usize> {
        (0..self.color.len())
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.neighbors[v].len(), std::cmp::Reverse(v)))
    }

    fn allowed(&self, v: usize, c: usize) -> bool {
        self.member_of[v].iter().all(|&gi| {
            let g = &self.groups[gi];
            self.assigned_in_group[gi] + 1 < g.len()
                || g.iter().any(|&w| w != v && self.color[w] != Some(c))
        })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        for &gi in &self.member_of[v] {
            self.assigned_in_group[gi] += 1;
        }
        for &w in &self.neighbors[v] {
            if self.seen[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.seen[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = None;
        for &gi in &self.member_of[v] {
            self.assigned_in_group[gi] -= 1;
        }
        for &w in &self.neighbors[v] {
            self.seen[w][c] -= 1;
            if self.seen[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else { return true };
        // a color beyond `used` is interchangeable with any other unused one
        for c in 0..self.k.min(used + 1) {
            if !self.allowed(v, c) {
                continue;
            }
            self.assign(v, c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// Smallest `k ≥ lower` admitting a coloring of `n` items in which no group
/// is monochromatic, with such a coloring. Colors are exactly `0..k`.
fn min_coloring(n: usize, groups: &[Vec<usize>], lower: usize) -> (usize, Vec<usize>) {
    let mut k = lower.max(1);
    loop {
        let mut search = Search::new(n, groups, k);
        if search.solve(0) {
            let colors: Vec<usize> = search.color.into_iter().map(|c| c.expect("complete")).collect();
            return (k, colors);
        }
        k += 1;
    }
}

/// Exact chromatic number (weak) or strong chromatic number of `h`.
pub fn chromatic_number(h: &Hypergraph, mode: ColorMode, limits: &Limits) -> Result<(usize, Coloring), ColoringError> {
    let n = h.vertex_count();
    if n > limits.max_exact_vertices {
        return Err(ColoringError::SizeLimit { size: n, limit: limits.max_exact_vertices });
    }
    let names: Vec<&VertexId> = h.vertices().iter().collect();
    let index = |v: &VertexId| names.binary_search(&v).expect("vertex of h");
    let (groups, lower) = match mode {
        ColorMode::Weak => {
            let groups: Vec<Vec<usize>> =
                h.edges().iter().map(|e| e.vertices().iter().map(index).collect()).collect();
            (groups, 2)
        }
        ColorMode::Strong => {
            let groups: Vec<Vec<usize>> = two_section(h)
                .edge_pairs()
                .map(|(a, b)| vec![index(a), index(b)])
                .collect();
            // every hyperedge is a clique of the 2-section
            (groups, h.stats().rank.max(2))
        }
    };
    let (k, colors) = min_coloring(n, &groups, lower);
    let assignment = names.into_iter().cloned().zip(colors).collect();
    Ok((k, Coloring { assignment }))
}

/// Exact chromatic index `q(h)` with a witnessing edge coloring.
pub fn chromatic_index(h: &Hypergraph, limits: &Limits) -> Result<(usize, EdgeColoring), ColoringError> {
    let m = h.edge_count();
    if m > limits.max_exact_vertices {
        return Err(ColoringError::SizeLimit { size: m, limit: limits.max_exact_vertices });
    }
    let edges: Vec<&Hyperedge> = h.edges().iter().collect();
    let mut groups = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if edges[i].intersection_size(edges[j]) > 0 {
                groups.push(vec![i, j]);
            }
        }
    }
    // the hyperedges through one vertex pairwise intersect
    let (q, colors) = min_coloring(m, &groups, h.stats().max_degree);
    let assignment = edges.into_iter().cloned().zip(colors).collect();
    Ok((q, EdgeColoring { assignment }))
}

/// `q(h) = Δ(h)`.
pub fn has_colored_hyperedge_property(h: &Hypergraph, limits: &Limits) -> Result<bool, ColoringError> {
    Ok(chromatic_index(h, limits)?.0 == h.stats().max_degree)
}

fn check_inputs(colorings: &[Coloring], counts: &[usize]) -> Result<usize, ColoringError> {
    if colorings.len() != counts.len() {
        return Err(ColoringError::LengthMismatch { colorings: colorings.len(), counts: counts.len() });
    }
    for (i, (f, &k)) in colorings.iter().zip(counts).enumerate() {
        if !f.is_surjective_onto(k) {
            return Err(ColoringError::NotSurjective { factor: i, k });
        }
    }
    Ok(counts.iter().copied().max().unwrap_or(0))
}

fn mod_sum<'a, I>(colorings: &[Coloring], parts: I, modulus: usize) -> usize
where
    I: IntoIterator<Item = &'a VertexId>,
{
    parts.into_iter().zip(colorings).map(|(p, f)| f.assignment[p]).sum::<usize>() % modulus
}

/// Colors every vertex `(x₁,…,x_k)` of the product of the colorings' domains
/// with `(f₁(x₁) + … + f_k(x_k)) mod max kᵢ`.
///
/// Each `fᵢ` must use exactly the colors `0..kᵢ`. With a single factor the
/// coloring is returned unchanged.
pub fn combine_colorings(colorings: &[Coloring], counts: &[usize]) -> Result<Coloring, ColoringError> {
    let modulus = check_inputs(colorings, counts)?;
    if colorings.len() == 1 {
        return Ok(colorings[0].clone());
    }
    let mut tuples: Vec<Vec<VertexId>> = vec![Vec::new()];
    for f in colorings {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                f.assignment.keys().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    let assignment = tuples
        .into_iter()
        .map(|t| {
            let c = mod_sum(colorings, &t, modulus);
            (VertexId::tuple(&t), c)
        })
        .collect();
    Ok(Coloring { assignment })
}

/// Same formula, applied through an explicit coordinate map.
pub fn combine_through_coords(
    colorings: &[Coloring],
    counts: &[usize],
    coords: &BTreeMap<VertexId, TupleVertex>,
) -> Result<Coloring, ColoringError> {
    let modulus = check_inputs(colorings, counts)?;
    let assignment = coords
        .iter()
        .map(|(v, t)| (v.clone(), mod_sum(colorings, t.parts(), modulus)))
        .collect();
    Ok(Coloring { assignment })
}

/// Minimal weak coloring of a connected conformal hypergraph from minimal
/// colorings of its prime factors.
pub fn col_algorithm(h: &Hypergraph, limits: &Limits) -> Result<Coloring, ColoringError> {
    let fact = factor_hypergraph(h, limits)?;
    let results = fact
        .factors
        .par_iter()
        .map(|f| chromatic_number(f, ColorMode::Weak, limits))
        .collect::<Result<Vec<_>, _>>()?;
    let (counts, colorings): (Vec<usize>, Vec<Coloring>) = results.into_iter().unzip();
    combine_through_coords(&colorings, &counts, &fact.coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(lists: &[&[&str]]) -> Hypergraph {
        Hypergraph::from_lists(lists).unwrap()
    }

    fn v(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    #[test]
    fn verify_modes() {
        let g = h(&[&["a", "b", "c"]]);
        let f = Coloring::from_pairs(&[("a", 0), ("b", 0), ("c", 1)]).unwrap();
        assert!(verify_coloring(&g, &f, ColorMode::Weak).unwrap());
        assert!(!verify_coloring(&g, &f, ColorMode::Strong).unwrap());
        let mono = Coloring::from_pairs(&[("a", 0), ("b", 0), ("c", 0)]).unwrap();
        assert!(!verify_coloring(&g, &mono, ColorMode::Weak).unwrap());
        let partial = Coloring::from_pairs(&[("a", 0), ("b", 1)]).unwrap();
        assert_eq!(verify_coloring(&g, &partial, ColorMode::Weak), Err(ColoringError::Partial(v("c"))));
    }

    #[test]
    fn chromatic_numbers_of_a_triple() {
        let g = h(&[&["a", "b", "c"]]);
        let lim = Limits::default();
        let (k, f) = chromatic_number(&g, ColorMode::Weak, &lim).unwrap();
        assert_eq!(k, 2);
        assert!(verify_coloring(&g, &f, ColorMode::Weak).unwrap());
        let (k, f) = chromatic_number(&g, ColorMode::Strong, &lim).unwrap();
        assert_eq!(k, 3);
        assert!(verify_coloring(&g, &f, ColorMode::Strong).unwrap());
    }

    #[test]
    fn odd_cycle_needs_three() {
        let c5 = h(&[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "e"], &["a", "e"]]);
        let (k, f) = chromatic_number(&c5, ColorMode::Weak, &Limits::default()).unwrap();
        assert_eq!(k, 3);
        assert_eq!(f.used_colors(), 3);
    }

    #[test]
    fn size_limit() {
        let g = h(&[&["a", "b", "c"]]);
        let lim = Limits { max_exact_vertices: 2, ..Limits::default() };
        assert_eq!(
            chromatic_number(&g, ColorMode::Weak, &lim),
            Err(ColoringError::SizeLimit { size: 3, limit: 2 })
        );
    }

    #[test]
    fn chromatic_index_examples() {
        let lim = Limits::default();
        let (q, f) = chromatic_index(&h(&[&["a", "b"], &["c", "d"]]), &lim).unwrap();
        assert_eq!(q, 1);
        assert!(f.is_proper());
        let g = h(&[&["a", "b", "c"], &["c", "d", "e"]]);
        assert_eq!(chromatic_index(&g, &lim).unwrap().0, 2);
        assert_eq!(g.stats().max_degree, 2);
        assert!(has_colored_hyperedge_property(&h(&[&["a", "b"], &["c", "d"]]), &lim).unwrap());
        let tri = h(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        assert_eq!(chromatic_index(&tri, &lim).unwrap().0, 3);
        assert!(!has_colored_hyperedge_property(&tri, &lim).unwrap());
    }

    #[test]
    fn combine_two_edges() {
        let f1 = Coloring::from_pairs(&[("x", 0), ("y", 1)]).unwrap();
        let f2 = Coloring::from_pairs(&[("u", 0), ("v", 1)]).unwrap();
        let f = combine_colorings(&[f1.clone(), f2], &[2, 2]).unwrap();
        let expect = Coloring::from_pairs(&[("(x,u)", 0), ("(x,v)", 1), ("(y,u)", 1), ("(y,v)", 0)]).unwrap();
        assert_eq!(f, expect);
        assert_eq!(combine_colorings(std::slice::from_ref(&f1), &[2]).unwrap(), f1);
    }

    #[test]
    fn combine_uses_max_colors() {
        let f1 = Coloring::from_pairs(&[("x", 0), ("y", 1)]).unwrap();
        let f2 = Coloring::from_pairs(&[("u", 0), ("v", 1), ("w", 2)]).unwrap();
        assert_eq!(combine_colorings(&[f1, f2], &[2, 3]).unwrap().used_colors(), 3);
    }

    #[test]
    fn combine_rejects_gaps() {
        let f1 = Coloring::from_pairs(&[("x", 0), ("y", 2)]).unwrap();
        let f2 = Coloring::from_pairs(&[("u", 0), ("v", 1)]).unwrap();
        assert_eq!(
            combine_colorings(&[f1, f2.clone()], &[2, 2]),
            Err(ColoringError::NotSurjective { factor: 0, k: 2 })
        );
        assert!(matches!(combine_colorings(&[f2], &[2, 2]), Err(ColoringError::LengthMismatch { .. })));
    }

    #[test]
    fn col_on_triple_times_edge() {
        let p = crate::product::hyper_product(&[h(&[&["x", "y", "z"]]), h(&[&["u", "v"]])]).unwrap();
        let f = col_algorithm(&p, &Limits::default()).unwrap();
        assert_eq!(f.used_colors(), 2);
        assert!(verify_coloring(&p, &f, ColorMode::Weak).unwrap());
    }
}
