mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use common::*;
use hyperprod::coloring::{chromatic_number, verify_coloring, ColorMode};
use hyperprod::iso::{
    are_isomorphic, l2_isomorphic, random_conformal_hypergraph, random_connected_graph, random_hypergraph,
    random_relabel,
};
use hyperprod::product::hyper_product;
use hyperprod::sections::{l2_section, subsection, two_section, L2Section};
use hyperprod::{parse_hypergraph, Hypergraph, InputKind, Limits, VertexId};

fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=7, 1usize..=8, 2usize..=4, any::<u64>()).prop_map(|(n, m, r, seed)| random_hypergraph(n, m, r, seed))
}

fn arb_conformal() -> impl Strategy<Value = Hypergraph> {
    (2usize..=6, 0.2f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_conformal_hypergraph(n, p, seed))
}

fn assert_valid(h: &Hypergraph) -> Result<(), TestCaseError> {
    let covered: BTreeSet<&VertexId> = h.edges().iter().flat_map(|e| e.vertices()).collect();
    prop_assert!(covered.into_iter().eq(h.vertices().iter()));
    for e in h.edges() {
        prop_assert!(e.len() >= 2);
        for f in h.edges() {
            prop_assert!(e == f || !e.vertices().iter().all(|x| f.contains(x)));
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn text_and_json_round_trip(h in arb_hypergraph()) {
        assert_valid(&h)?;
        let text = h.to_text();
        prop_assert_eq!(parse_hypergraph(&text, InputKind::Hypergraph).unwrap(), h.clone());
        prop_assert_eq!(Hypergraph::from_json(&h.to_json()).unwrap(), h.clone());
        // equal hypergraphs serialize byte-identically, whatever order they were built in
        let reversed: Vec<_> = h.edges().iter().rev().cloned().collect();
        let rebuilt = Hypergraph::new(reversed).unwrap();
        prop_assert_eq!(rebuilt.to_text(), text);
        prop_assert_eq!(rebuilt.to_json(), h.to_json());
    }

    #[test]
    fn degrees_sum_to_hyperedge_sizes(h in arb_hypergraph()) {
        let s = h.stats();
        let by_scan: BTreeMap<&VertexId, usize> = h
            .vertices()
            .iter()
            .map(|x| (x, h.edges().iter().filter(|e| e.contains(x)).count()))
            .collect();
        prop_assert_eq!(s.degree.values().sum::<usize>(), h.edges().iter().map(|e| e.len()).sum::<usize>());
        for (x, d) in &s.degree {
            prop_assert_eq!(by_scan[x], *d);
        }
        prop_assert_eq!(s.max_degree, by_scan.values().copied().max().unwrap());
        prop_assert_eq!(s.rank, h.edges().iter().map(|e| e.len()).max().unwrap());
    }

    #[test]
    fn product_degrees_add(a in arb_hypergraph(), b in arb_hypergraph()) {
        let p = hyper_product(&[a.clone(), b.clone()]).unwrap();
        assert_valid(&p)?;
        let (a1, a2) = definitional_product(&a, &b);
        for x in a.vertices() {
            for u in b.vertices() {
                let t = format!("({x},{u})");
                let brute = a1.iter().chain(&a2).filter(|e| e.contains(&t)).count();
                prop_assert_eq!(p.degree(&v(&t)), brute);
                prop_assert_eq!(brute, a.degree(x) + b.degree(u));
            }
        }
    }

    #[test]
    fn product_is_associative_up_to_flattening(a in arb_hypergraph(), b in arb_hypergraph(), c in arb_hypergraph()) {
        let flat = hyper_product(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let ab = hyper_product(&[a.clone(), b.clone()]).unwrap();
        let nested = hyper_product(&[ab, c.clone()]).unwrap();
        prop_assert_eq!(nested.relabel(VertexId::flattened).unwrap(), flat.clone());
        let bc = hyper_product(&[b, c]).unwrap();
        let right = hyper_product(&[a, bc]).unwrap();
        prop_assert_eq!(right.relabel(VertexId::flattened).unwrap(), flat);
    }

    #[test]
    fn product_is_commutative_up_to_isomorphism(a in arb_hypergraph(), b in arb_hypergraph()) {
        prop_assume!(a.vertex_count() * b.vertex_count() <= 24);
        let ab = hyper_product(&[a.clone(), b.clone()]).unwrap();
        let ba = hyper_product(&[b, a]).unwrap();
        let w = are_isomorphic(&ab, &ba, &Limits::default()).unwrap();
        prop_assert!(w.is_some_and(|w| is_isomorphism(&ab, &ba, &w.mapping)));
    }

    #[test]
    fn products_of_connected_factors_are_connected(a in arb_conformal(), b in arb_conformal()) {
        prop_assert!(hyper_product(&[a, b]).unwrap().is_connected());
    }

    #[test]
    fn two_section_is_the_l2_skeleton(h in arb_hypergraph()) {
        let section = l2_section(&h);
        prop_assert_eq!(section.skeleton(), &two_section(&h));
        for ((x, y), labels) in section.labels() {
            let brute: BTreeSet<_> = h.edges().iter().filter(|e| e.contains(x) && e.contains(y)).cloned().collect();
            prop_assert_eq!(labels, &brute);
        }
    }

    #[test]
    fn strong_colorings_are_weak(h in arb_hypergraph()) {
        let (ks, f) = chromatic_number(&h, ColorMode::Strong, &Limits::default()).unwrap();
        let (kw, _) = chromatic_number(&h, ColorMode::Weak, &Limits::default()).unwrap();
        prop_assert!(verify_coloring(&h, &f, ColorMode::Weak).unwrap());
        prop_assert!(kw <= ks);
        prop_assert!(ks >= h.stats().rank);
    }

    #[test]
    fn subsections_satisfy_closure(h in arb_hypergraph(), pick in any::<u64>()) {
        let section = l2_section(&h);
        let edges: Vec<_> = section.labels().keys().cloned().collect();
        let chosen: Vec<_> = edges.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, e)| e.clone()).collect();
        if let Ok(sub) = subsection(&section, chosen.clone()) {
            let kept: BTreeSet<_> = chosen.into_iter().collect();
            for labels in sub.labels().values() {
                for e in labels {
                    for (a, b) in e.pairs() {
                        prop_assert!(kept.contains(&(a.clone(), b.clone())));
                    }
                }
            }
            prop_assert!(L2Section::new(sub.skeleton().clone(), sub.labels().clone()).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn isomorphism_is_an_equivalence(h in arb_hypergraph(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let limits = Limits::default();
        let same = are_isomorphic(&h, &h, &limits).unwrap();
        prop_assert!(same.is_some_and(|w| is_isomorphism(&h, &h, &w.mapping)));
        let b = random_relabel(&h, "b", s1);
        let c = random_relabel(&b, "c", s2);
        let ab = are_isomorphic(&h, &b, &limits).unwrap().unwrap();
        let bc = are_isomorphic(&b, &c, &limits).unwrap().unwrap();
        // symmetric: the inverse witness works backwards
        prop_assert!(is_isomorphism(&b, &h, &ab.inverse().mapping));
        // transitive: composing the witnesses gives one from h to c
        let composed: BTreeMap<VertexId, VertexId> =
            ab.mapping.iter().map(|(x, y)| (x.clone(), bc.mapping[y].clone())).collect();
        prop_assert!(is_isomorphism(&h, &c, &composed));
        prop_assert!(are_isomorphic(&h, &c, &limits).unwrap().is_some());
        // the witness re-checked through canonical serialization
        prop_assert_eq!(ab.apply(&h).unwrap().to_text(), b.to_text());
    }

    #[test]
    fn conformal_isomorphism_follows_two_sections(
        n in 3usize..=6, p in 0.3f64..0.8, s1 in any::<u64>(), s2 in any::<u64>(), relabel in any::<bool>()
    ) {
        let limits = Limits::default();
        let a = random_conformal_hypergraph(n, p, s1);
        let b = if relabel { random_relabel(&a, "w", s2) } else { random_conformal_hypergraph(n, p, s2) };
        let direct = are_isomorphic(&a, &b, &limits).unwrap().is_some();
        let sections = are_isomorphic(&two_section(&a), &two_section(&b), &limits).unwrap().is_some();
        prop_assert_eq!(direct, sections);
    }

    #[test]
    fn l2_isomorphism_follows_hypergraphs(
        n in 3usize..=6, m in 1usize..=6, s1 in any::<u64>(), s2 in any::<u64>(), relabel in any::<bool>()
    ) {
        let limits = Limits::default();
        let a = random_hypergraph(n, m, 3, s1);
        let b = if relabel { random_relabel(&a, "w", s2) } else { random_hypergraph(n, m, 3, s2) };
        let (la, lb) = (l2_section(&a), l2_section(&b));
        let w = l2_isomorphic(&la, &lb, &limits).unwrap();
        prop_assert_eq!(w.is_some(), brute_isomorphic(&a, &b));
        if let Some(w) = w {
            prop_assert!(is_isomorphism(&a, &b, &w.mapping));
            prop_assert!(is_isomorphism(la.skeleton(), lb.skeleton(), &w.mapping));
        }
    }

    #[test]
    fn generators_are_deterministic(n in 2usize..=8, p in 0.0f64..=1.0, seed in any::<u64>()) {
        prop_assert_eq!(random_connected_graph(n, p, seed), random_connected_graph(n, p, seed));
        let h = random_conformal_hypergraph(n, p, seed);
        prop_assert_eq!(&h, &random_conformal_hypergraph(n, p, seed));
        prop_assert!(h.is_connected());
        prop_assert_eq!(random_hypergraph(n, 4, 3, seed), random_hypergraph(n, 4, 3, seed));
    }
}

#[test]
fn same_skeleton_different_labels_are_not_l2_isomorphic() {
    let one = l2_section(&hg(&[&["a", "b", "c"]]));
    let three = l2_section(&hg(&[&["a", "b"], &["b", "c"], &["a", "c"]]));
    assert_eq!(one.skeleton(), three.skeleton());
    assert!(l2_isomorphic(&one, &three, &Limits::default()).unwrap().is_none());
    let abc = hg(&[&["a", "b", "c"]]);
    let w = l2_isomorphic(&one, &one, &Limits::default()).unwrap().unwrap();
    assert!(is_isomorphism(&abc, &abc, &w.mapping));
}

#[test]
fn two_vertex_generator_is_a_single_edge() {
    for seed in 0..20 {
        assert_eq!(random_conformal_hypergraph(2, 0.0, seed), hg(&[&["v0", "v1"]]));
    }
}
