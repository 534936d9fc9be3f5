//! Exact chromatic numbers, the chromatic index, and a minimal coloring built
//! from the prime factors.

use hyperprod::coloring::{chromatic_index, chromatic_number, col_algorithm, verify_coloring, ColorMode};
use hyperprod::product::hyper_product;
use hyperprod::{Hypergraph, Limits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let a = Hypergraph::from_lists(&[&["a", "b", "c"], &["c", "d"]])?;
    let b = Hypergraph::from_lists(&[&["x", "y", "z"]])?;
    let h = hyper_product(&[a.clone(), b.clone()])?;

    for mode in [ColorMode::Weak, ColorMode::Strong] {
        let ka = chromatic_number(&a, mode, &limits)?.0;
        let kb = chromatic_number(&b, mode, &limits)?.0;
        let k = chromatic_number(&h, mode, &limits)?.0;
        println!("{mode:?}: factors {ka} and {kb}, product {k}");
    }

    let (q, _) = chromatic_index(&h, &limits)?;
    println!("chromatic index {q}, max degree {}", h.stats().max_degree);

    let f = col_algorithm(&h, &limits)?;
    assert!(verify_coloring(&h, &f, ColorMode::Weak)?);
    println!("combined coloring uses {} colors:", f.used_colors());
    for (v, c) in f.assignment.iter().take(6) {
        println!("  {v} -> {c}");
    }
    Ok(())
}
