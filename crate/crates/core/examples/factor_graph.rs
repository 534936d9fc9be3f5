//! Prime factorization of a graph, with the coordinate witness.

use hyperprod::graphfactor::factor_graph;
use hyperprod::iso::random_connected_graph;
use hyperprod::product::graph_product;
use hyperprod::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k3 = Graph::from_pairs(&[("a", "b"), ("b", "c"), ("a", "c")])?;
    let p3 = Graph::from_pairs(&[("x", "y"), ("y", "z")])?;
    let other = random_connected_graph(4, 0.5, 7);
    let g = graph_product(&[k3, p3, other])?;
    println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());

    let f = factor_graph(&g)?;
    println!("{} prime factors through base {}", f.k(), f.base);
    for (i, layer) in f.factors.iter().enumerate() {
        println!("factor {i}: {} vertices, {} edges", layer.vertex_count(), layer.edge_count());
    }
    let (v, t) = f.coords.iter().nth(5).unwrap();
    println!("coords of {v}: {}", t.to_vertex());
    f.verify(&g)?;
    Ok(())
}
