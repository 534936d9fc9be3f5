//! Prime factorization of a connected conformal hypergraph.

use hyperprod::hyperfactor::factor_hypergraph;
use hyperprod::iso::random_conformal_hypergraph;
use hyperprod::product::hyper_product;
use hyperprod::{Hypergraph, Limits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Hypergraph::from_lists(&[&["x", "y", "z"]])?;
    let b = random_conformal_hypergraph(5, 0.6, 3);
    let h = hyper_product(&[a, b])?;
    println!("product: {} vertices, {} hyperedges", h.vertex_count(), h.edge_count());

    let f = factor_hypergraph(&h, &Limits::default())?;
    for (i, factor) in f.factors.iter().enumerate() {
        println!("factor {i}:\n{}", factor.to_text());
    }

    let not_conformal = Hypergraph::from_lists(&[&["a", "b"], &["b", "c"], &["a", "c"]])?;
    match factor_hypergraph(&not_conformal, &Limits::default()) {
        Ok(_) => unreachable!(),
        Err(e) => println!("triangle of pairs: {e}"),
    }
    Ok(())
}
