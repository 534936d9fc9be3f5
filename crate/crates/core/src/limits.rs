/// Size guards for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count (or hyperedge count, for the chromatic index)
    /// accepted by the exact coloring search.
    pub max_exact_vertices: usize,
    /// Maximal-clique enumeration stops with an error past this many cliques.
    pub max_cliques: usize,
    /// Largest vertex count accepted by the isomorphism search.
    pub max_iso_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_exact_vertices: 24, max_cliques: 100_000, max_iso_vertices: 64 }
    }
}
