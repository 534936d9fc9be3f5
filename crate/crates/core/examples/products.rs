//! Cartesian products of hypergraphs and the counting identities they obey.

use hyperprod::product::hyper_product;
use hyperprod::Hypergraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let triangle = Hypergraph::from_lists(&[&["x", "y", "z"]])?;
    let path = Hypergraph::from_lists(&[&["u", "v"], &["v", "w"]])?;

    let p = hyper_product(&[triangle.clone(), path.clone()])?;
    print!("{}", p.to_text());

    let (s, s1, s2) = (p.stats(), triangle.stats(), path.stats());
    println!("n = {} = {} * {}", s.n, s1.n, s2.n);
    println!("m = {} = {} * {} + {} * {}", s.m, s1.n, s2.m, s2.n, s1.m);
    println!("max degree = {} = {} + {}", s.max_degree, s1.max_degree, s2.max_degree);

    // three factors give flat triples
    let edge = Hypergraph::from_lists(&[&["0", "1"]])?;
    let cube = hyper_product(&[edge.clone(), edge.clone(), edge])?;
    println!("cube: {} vertices, e.g. {}", cube.vertex_count(), cube.vertices().iter().next().unwrap());
    Ok(())
}
