use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drd_core::enumeration::{
    canonical_form, enumerate_bicyclic, enumerate_by_growth, enumerate_two_cycle_bicyclic,
    extremal_search, survey, Population,
};
use drd_core::resistance::{degree_resistance, resistance_matrix};
use drd_core::verify::{random_connected, random_tree_edges};
use drd_core::{identify_vertices, BicyclicClass, Graph, Rational};

/// Lengths of all simple cycles, found by testing every edge subset for
/// being a connected 2-regular subgraph.
fn cycle_lengths(g: &Graph) -> Vec<usize> {
    let edges = g.edges();
    assert!(edges.len() <= 16);
    let mut out = Vec::new();
    for mask in 1u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = (0..edges.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let mut deg = vec![0; g.n()];
        for &(a, b) in &chosen {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let used: Vec<usize> = (0..g.n()).filter(|&v| deg[v] == 2).collect();
        let sub = Graph::new(g.n(), &chosen).unwrap();
        let reach = sub.bfs_distances(used[0]);
        if used.iter().all(|&v| reach[v].is_some()) {
            out.push(chosen.len());
        }
    }
    out.sort_unstable();
    out
}

fn random_bicyclic(seed: u64, n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = random_tree_edges(&mut rng, n);
        while edges.len() < n + 1 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let e = (a.min(b), a.max(b));
            if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                edges.push(e);
            }
        }
        if let Ok(g) = Graph::new(n, &edges) {
            return g;
        }
    }
}

fn relabel_random(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn classification_matches_cycle_count(seed in any::<u64>(), n in 4usize..=10) {
        let g = random_bicyclic(seed, n);
        let cycles = cycle_lengths(&g);
        match g.classify_bicyclic() {
            BicyclicClass::TwoCycles { p, q, path_len } => {
                prop_assert_eq!(cycles, vec![p, q]);
                let base = g.two_cycle_base().unwrap();
                prop_assert_eq!(base.path_len(), path_len);
                prop_assert_eq!((base.first.len(), base.second.len()), (p, q));
            }
            BicyclicClass::Theta => {
                prop_assert_eq!(cycles.len(), 3);
                prop_assert!(g.two_cycle_base().is_none());
            }
            BicyclicClass::NotBicyclic => prop_assert!(false, "connected with n + 1 edges"),
        }
    }

    #[test]
    fn two_core_is_idempotent(seed in any::<u64>(), n in 4usize..=10) {
        let g = random_bicyclic(seed, n);
        let (core, map) = g.two_core().unwrap();
        prop_assert!(core.degrees().iter().all(|&d| d >= 2));
        prop_assert_eq!(core.m() - core.n(), g.m() - g.n());
        let (again, map2) = core.two_core().unwrap();
        prop_assert_eq!(&again, &core);
        prop_assert_eq!(map2, (0..core.n()).collect::<Vec<_>>());
        prop_assert_eq!(map.len(), core.n());
    }

    #[test]
    fn identification_counts(seed in any::<u64>(), n1 in 1usize..=7, n2 in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = random_connected(&mut rng, n1, n1);
        let g2 = random_connected(&mut rng, n2, n2);
        let (u1, u2) = (rng.gen_range(0..n1), rng.gen_range(0..n2));
        let (g, x) = identify_vertices(&g1, u1, &g2, u2);
        prop_assert_eq!(g.n(), n1 + n2 - 1);
        prop_assert_eq!(g.m(), g1.m() + g2.m());
        prop_assert_eq!(x, u1);
        prop_assert_eq!(g.degree(x), g1.degree(u1) + g2.degree(u2));
        prop_assert!(g.is_connected());
    }

    #[test]
    fn resistance_is_label_free(seed in any::<u64>(), n in 2usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        let (a, b) = (resistance_matrix(&g).unwrap(), resistance_matrix(&h).unwrap());
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(a.get(u, v), b.get(perm[u], perm[v]));
                prop_assert_eq!(a.get(u, v), a.get(v, u));
            }
        }
        prop_assert_eq!(degree_resistance(&g).unwrap(), degree_resistance(&h).unwrap());
    }
}

#[test]
fn canonical_form_survives_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..100 {
        let n = 5 + trial % 6;
        let g = random_bicyclic(trial as u64, n);
        let h = relabel_random(&g, &mut rng);
        assert_eq!(
            canonical_form(&g).unwrap(),
            canonical_form(&h).unwrap(),
            "trial {trial}"
        );
    }
}

fn resistance_multiset(g: &Graph) -> Vec<Rational> {
    let r = resistance_matrix(g).unwrap();
    let mut all: Vec<Rational> = (0..g.n())
        .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
        .map(|(u, v)| r.get(u, v).clone())
        .collect();
    all.sort();
    all
}

#[test]
fn canonical_form_separates_distinguishable_graphs() {
    let graphs: Vec<Graph> = (0..80).map(|s| random_bicyclic(1000 + s, 7)).collect();
    for a in &graphs {
        for b in &graphs {
            let mut da = a.degrees();
            let mut db = b.degrees();
            da.sort_unstable();
            db.sort_unstable();
            if da != db || resistance_multiset(a) != resistance_multiset(b) {
                assert_ne!(canonical_form(a).unwrap(), canonical_form(b).unwrap());
            }
        }
    }
}

#[test]
fn growth_enumeration_agrees_with_labeled_enumeration() {
    for n in 5..=7 {
        let labeled: BTreeSet<_> = enumerate_two_cycle_bicyclic(n, false)
            .unwrap()
            .map(|g| canonical_form(&g).unwrap())
            .collect();
        let grown = enumerate_by_growth(n).unwrap();
        assert_eq!(labeled, grown, "n = {n}");
        let s = survey(n, Population::TwoCyclesOnly, 1, false).unwrap();
        assert_eq!(s.classes.len(), grown.len());
    }
}

#[test]
fn labeled_extremes_match_class_extremes() {
    for n in [5, 6] {
        let values: Vec<Rational> = enumerate_two_cycle_bicyclic(n, false)
            .unwrap()
            .map(|g| degree_resistance(&g).unwrap())
            .collect();
        let r = extremal_search(n, Population::TwoCyclesOnly, 2, false).unwrap();
        assert_eq!(values.len() as u64, r.count_labeled);
        assert_eq!(values.iter().min().unwrap(), &r.min_value);
        assert_eq!(values.iter().max().unwrap(), &r.max_value);
    }
}

#[test]
fn theta_graphs_only_in_full_population() {
    let thetas = enumerate_bicyclic(5, Population::AllBicyclic, false)
        .unwrap()
        .filter(|g| g.classify_bicyclic() == BicyclicClass::Theta)
        .count();
    assert!(thetas > 0);
    assert!(enumerate_two_cycle_bicyclic(5, false)
        .unwrap()
        .all(|g| g.classify_bicyclic() != BicyclicClass::Theta));
}

#[test]
fn full_population_report() {
    // theta-type graphs are outside the two-cycle claims; record what they do
    for n in [6, 7] {
        let all = extremal_search(n, Population::AllBicyclic, 1, false).unwrap();
        let two = extremal_search(n, Population::TwoCyclesOnly, 1, false).unwrap();
        assert!(all.count_iso_classes > two.count_iso_classes);
        assert!(all.min_value <= two.min_value && all.max_value >= two.max_value);
        println!(
            "n = {n}: all bicyclic min {} (two-cycle {}), max {} (two-cycle {}), {} theta classes",
            all.min_value, two.min_value, all.max_value, two.max_value, all.count_theta_classes
        );
    }
}
