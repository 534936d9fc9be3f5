//! Isomorphism tests with witnesses, on random hypergraphs.

use hyperprod::iso::{are_isomorphic, l2_isomorphic, random_conformal_hypergraph, random_relabel};
use hyperprod::sections::l2_section;
use hyperprod::Limits;

fn main() {
    let limits = Limits::default();
    let h = random_conformal_hypergraph(7, 0.5, 42);
    let copy = random_relabel(&h, "w", 1);
    print!("{}", h.to_text());

    let w = are_isomorphic(&h, &copy, &limits).unwrap().expect("a relabelled copy is isomorphic");
    println!("witness: {}", w.to_json_value());
    assert_eq!(w.apply(&h).unwrap(), copy);

    let l2 = l2_isomorphic(&l2_section(&h), &l2_section(&copy), &limits).unwrap();
    println!("labelled 2-sections isomorphic: {}", l2.is_some());

    let other = random_conformal_hypergraph(7, 0.5, 43);
    println!("seed 43 isomorphic to seed 42: {}", are_isomorphic(&h, &other, &limits).unwrap().is_some());
}
