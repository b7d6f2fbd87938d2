use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use readk::graph::chain_graph;
use readk::sample::{all_graphs, random_nonredundant_extension, random_peelable};
use readk::search::oracle::FunctionOracle;
use readk::search::{
    decide_readability, decide_readability_with, find_2mult_by_scan, find_2mult_for_edge, has_read_k_extension,
    peel_step, Decision, EnumerateOptions, PeelOutcome, SearchBudget,
};
use readk::sop::{chain_index, phi_of_graph, read1_check, sop};
use readk::{Exec, Formula, Handle};

fn oracle(n: usize, k: usize) -> FunctionOracle {
    match FunctionOracle::build(n, k, &SearchBudget::default(), Exec::default()).unwrap() {
        Decision::Yes(o) => o,
        d => panic!("oracle incomplete: {d}"),
    }
}

fn enum_only() -> EnumerateOptions {
    EnumerateOptions { use_cover_witness: false, ..Default::default() }
}

#[test]
fn enumeration_agrees_with_function_oracle() {
    let budget = SearchBudget::default();
    for n in 1..=5 {
        for k in 1..=2 {
            let o = oracle(n, k);
            for g in all_graphs(n).into_iter().filter(|g| g.is_triangle_free()) {
                let expect = o.graph_is_read_k(&g).unwrap();
                for opts in [enum_only(), EnumerateOptions::default()] {
                    let d = decide_readability_with(&g, k, &budget, &opts).unwrap().decision;
                    assert!(!d.is_unknown());
                    assert_eq!(d.is_yes(), expect, "n={n} k={k} edges={:?}", g.edges());
                    if let Decision::Yes(f) = d {
                        assert_eq!(sop(&f).unwrap(), phi_of_graph(&g));
                        assert!(f.occurrences().read_index <= k);
                    }
                }
            }
        }
    }
}

#[test]
fn read1_characterization_up_to_six_vertices() {
    let budget = SearchBudget::default();
    for n in 1..=6 {
        for g in all_graphs(n).into_iter().filter(|g| g.is_triangle_free()) {
            let d = decide_readability_with(&g, 1, &budget, &enum_only()).unwrap().decision;
            assert!(!d.is_unknown());
            assert_eq!(read1_check(&phi_of_graph(&g)), d.is_yes(), "edges={:?}", g.edges());
        }
    }
}

#[test]
fn chain_extension_answers() {
    let b = SearchBudget::default();
    assert!(has_read_k_extension(2, 1, &b).unwrap().decision.is_no());
    assert!(decide_readability(&chain_graph(2).unwrap(), 1, &b).unwrap().decision.is_no());
    assert!(has_read_k_extension(1, 1, &b).unwrap().decision.is_yes());
    assert!(!oracle(4, 1).has_chain_extension(2));
    assert!(oracle(4, 2).has_chain_extension(2));
    for n in 1..=3 {
        let ext = has_read_k_extension(n, 1, &b).unwrap().decision;
        let read = decide_readability(&chain_graph(n).unwrap(), 1, &b).unwrap().decision;
        if ext.is_no() {
            assert!(read.is_no());
        }
    }
}

fn chain_n(f: &Formula) -> usize {
    f.variables().iter().map(|v| chain_index(v).unwrap().1).max().unwrap()
}

#[test]
fn two_mult_exists_for_every_edge() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..150 {
        let n = rng.gen_range(2..=3);
        let f = random_nonredundant_extension(&mut rng, n);
        let n = chain_n(&f);
        for i in 1..=n {
            for j in i..=n {
                let t = find_2mult_for_edge(&f, i, j).unwrap_or_else(|e| panic!("{f} ({i},{j}): {e}"));
                assert!(find_2mult_by_scan(&f, i, j).contains(&t), "{f} ({i},{j})");
            }
        }
    }
}

#[test]
fn peeling_keeps_the_chain() {
    let mut rng = StdRng::seed_from_u64(77);
    let mut peeled = 0;
    for _ in 0..150 {
        let n = rng.gen_range(2..=3);
        let f = random_peelable(&mut rng, n);
        let mut handles: Vec<Handle> = f.subformula_handles();
        handles.retain(|h| matches!(f.subformula(h), Some(Formula::Prod(c)) if c.len() == 2));
        for h in handles {
            if let Ok(PeelOutcome::Peeled { psi, read_before, read_after }) = peel_step(&f, &h, n) {
                peeled += 1;
                assert!(read_after < read_before);
                let s = sop(&psi).unwrap();
                let mixed: Vec<String> = s
                    .terms()
                    .iter()
                    .filter(|t| t.vars().iter().any(|v| v.starts_with('x')) && t.vars().iter().any(|v| v.starts_with('y')))
                    .map(|t| t.to_string())
                    .collect();
                let edges: Vec<String> = (1..=n).flat_map(|i| (i..=n).map(move |j| format!("x{i}*y{j}"))).collect();
                let mut sorted = mixed.clone();
                sorted.sort();
                let mut want = edges.clone();
                want.sort();
                assert_eq!(sorted, want, "{f} -> {psi}");
                assert!(s.terms().iter().all(|t| t.len() >= 2), "{psi}");
            }
        }
    }
    assert!(peeled >= 150, "only {peeled} successful peels");
}
