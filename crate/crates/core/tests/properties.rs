use proptest::prelude::*;

use readk::cover::{cover_to_formula, extend_cover_to_duplicate, validate_cover};
use readk::formula::{make_nonredundant, find_redundancy, find_redundancy_by_subformulas, parse_formula};
use readk::graph::{chain_graph, duplicate_vertex, Graph};
use readk::sample::{random_chain_cover, random_formula};
use readk::sop::{csop, graph_of_function, is_normal, phi_of_graph, sop, SopForm, Term};
use readk::truth_table::{tables_equal, TruthTable};
use readk::{Exec, Formula};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn formula(nvars: u32) -> impl Strategy<Value = Formula> {
    let leaf = (1..=nvars).prop_map(|i| Formula::var(format!("a{i}")));
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Sum),
            prop::collection::vec(inner, 2..4).prop_map(Formula::Prod),
        ]
    })
    .prop_map(Formula::normalize)
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
            let mut edges = Vec::new();
            let mut e = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[e] {
                        edges.push((names[u].clone(), names[v].clone()));
                    }
                    e += 1;
                }
            }
            Graph::new(names, edges).unwrap()
        })
    })
}

fn minterms(f: &Formula) -> SopForm {
    let t = TruthTable::new(f).unwrap();
    SopForm::from_name_lists(t.minterms(Exec::Sequential))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sop_is_minimal_true_points(f in formula(8)) {
        prop_assert_eq!(sop(&f).unwrap(), minterms(&f));
    }

    #[test]
    fn sop_is_an_antichain(f in formula(8)) {
        let s = sop(&f).unwrap();
        for a in s.terms() {
            for b in s.terms() {
                prop_assert!(a == b || !a.is_subset(b));
            }
        }
    }

    #[test]
    fn csop_absorbs_to_sop(f in formula(6)) {
        let c = csop(&f).unwrap();
        prop_assert_eq!(SopForm::from_terms(c.clone()), sop(&f).unwrap());
        for t in sop(&f).unwrap().terms() {
            prop_assert!(c.contains(t));
        }
    }

    #[test]
    fn render_parse_round_trip(f in formula(6)) {
        let text = f.to_string();
        let back = parse_formula(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert!(back.is_normalized());
    }

    #[test]
    fn nonredundant_rewrite(f in formula(6)) {
        let g = make_nonredundant(&f);
        prop_assert!(tables_equal(&f, &g).unwrap());
        prop_assert_eq!(sop(&f).unwrap(), sop(&g).unwrap());
        let (before, after) = (f.occurrences(), g.occurrences());
        for (v, c) in &after.counts {
            prop_assert!(*c <= before.get(v));
        }
        prop_assert!(find_redundancy(&g).is_none());
        prop_assert_eq!(find_redundancy(&f).is_some(), find_redundancy_by_subformulas(&f).is_some());
    }

    #[test]
    fn occurrence_profile(f in formula(6)) {
        let p = f.occurrences();
        prop_assert_eq!(p.counts.iter().map(|(_, c)| c).sum::<usize>(), f.leaf_count());
        prop_assert_eq!(p.read_index, p.counts.iter().map(|&(_, c)| c).max().unwrap());
        prop_assert!(p.counts.iter().all(|&(_, c)| c >= 1));
    }

    #[test]
    fn cliques_hold_terms(f in formula(6)) {
        let s = sop(&f).unwrap();
        let g = graph_of_function(&s);
        let phi = phi_of_graph(&g);
        for t in s.terms() {
            prop_assert!(phi.terms().iter().any(|c| t.is_subset(c)));
        }
    }

    #[test]
    fn triangle_free_graphs_are_normal(g in graph(7)) {
        if g.is_triangle_free() {
            prop_assert!(is_normal(&phi_of_graph(&g)));
            let s = phi_of_graph(&g);
            prop_assert_eq!(graph_of_function(&s).edge_count(), g.edge_count());
        }
    }

    #[test]
    fn duplicates_keep_triangle_freeness(n in 1usize..8, pick in any::<prop::sample::Index>()) {
        let g = chain_graph(n).unwrap();
        let v = g.vertices()[pick.index(g.vertex_count())].clone();
        let d = duplicate_vertex(&g, &v, "w").unwrap();
        prop_assert!(d.is_triangle_free() && d.is_bipartite());
        prop_assert!(!d.has_edge(&v, "w"));
    }

    #[test]
    fn random_covers_compile(n in 1usize..7, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = chain_graph(n).unwrap();
        let c = random_chain_cover(&mut rng, n);
        let r = validate_cover(&g, &c).unwrap();
        prop_assert!(r.valid);
        let f = cover_to_formula(&c).unwrap();
        prop_assert_eq!(f.occurrences().read_index, r.multiplicity);
        prop_assert_eq!(sop(&f).unwrap(), phi_of_graph(&g));
        let d = extend_cover_to_duplicate(&c, "x1", "x0").unwrap();
        let r2 = validate_cover(&duplicate_vertex(&g, "x1", "x0").unwrap(), &d).unwrap();
        prop_assert!(r2.valid);
        prop_assert_eq!(r2.multiplicity, r.multiplicity);
    }
}

#[test]
fn sampled_formulas_match_tables_up_to_14_vars() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let f = random_formula(&mut rng, 14, 24);
        assert_eq!(sop(&f).unwrap(), minterms(&f), "{f}");
    }
}

#[test]
fn chain_graphs_nest() {
    for n in 1..32 {
        let small = chain_graph(n).unwrap();
        let big = chain_graph(n + 1).unwrap();
        let keep: Vec<&str> = small.vertices().iter().map(String::as_str).collect();
        assert_eq!(big.induced(&keep).unwrap().edges(), small.edges());
        assert!(small.is_bipartite() && small.is_triangle_free());
    }
    assert!(chain_graph(32).unwrap().is_triangle_free());
}

#[test]
fn trivial_extension_of_every_small_chain() {
    for n in 1..=8 {
        let phi = phi_of_graph(&chain_graph(n).unwrap());
        let f = phi.to_formula().unwrap();
        assert!(readk::sop::is_extension_of_chain(&f, n).unwrap());
    }
    assert_eq!(Term::new(["y1", "x1"]).to_string(), "x1*y1");
}
