mod common;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kcover::canon::{canonical_form, canonical_labelling, is_isomorphic, CanonicalForm};
use kcover::corpus::corpus;
use kcover::graph::{make_complete, make_cycle, parse_graph6, parse_name, write_graph6, Graph};
use kcover::suite::graphs_up_to;

use common::{all_labelled, brute_isomorphic};

#[test]
fn graph6_fixed_strings() {
    let k4 = make_complete(4).unwrap();
    assert_eq!(write_graph6(&k4), "C~");
    assert_eq!(parse_graph6("C~").unwrap().edges(), k4.edges());
    assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
    assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
    // the path 0-1-2 and the 5-cycle, bits packed column by column
    assert_eq!(write_graph6(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()), "Bg");
    assert_eq!(write_graph6(&make_cycle(5).unwrap()), "Dhc");
    for bad in ["", "C", "C~~", "C\u{7f}", ">>graph6<<"] {
        assert!(parse_graph6(bad).is_err(), "{bad:?} should not parse");
    }
}

#[test]
fn graph6_round_trips_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 0..=32usize {
        for _ in 0..10 {
            let es: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rand::Rng::gen_bool(&mut rng, 0.3))
                .collect();
            let g = Graph::from_edges(n, &es).unwrap();
            let text = write_graph6(&g);
            assert_eq!(text.len(), 1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
            assert_eq!(parse_graph6(&text).unwrap().edges(), g.edges());
        }
    }
}

/// Groups labelled graphs by canonical form and checks each group against
/// isomorphism by exhaustive permutation.
fn check_canon_partition(graphs: impl Iterator<Item = Graph>) -> usize {
    let mut classes: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for g in graphs {
        let form = canonical_form(&g);
        match classes.get(&form) {
            Some(rep) => {
                assert!(brute_isomorphic(rep, &g), "{} and {} share a form", write_graph6(rep), write_graph6(&g))
            }
            None => {
                classes.insert(form, g);
            }
        }
    }
    let reps: Vec<&Graph> = classes.values().collect();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            assert!(
                !brute_isomorphic(reps[i], reps[j]),
                "{} and {} differ in form",
                write_graph6(reps[i]),
                write_graph6(reps[j])
            );
        }
    }
    reps.len()
}

#[test]
fn canonical_form_matches_brute_force_on_all_labelled_graphs() {
    let counts: Vec<usize> = (1..=6).map(|n| check_canon_partition(all_labelled(n))).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
}

#[test]
fn order_7_classes_are_distinct_and_stable() {
    let graphs = graphs_up_to(7, 21).unwrap();
    assert_eq!(graphs.len(), 1044);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut perm: Vec<usize> = (0..7).collect();
    for g in &graphs {
        let form = canonical_form(g);
        for _ in 0..3 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.permute(&perm)), form);
        }
        let lab = canonical_labelling(g);
        assert_eq!(g.permute(&lab.labels).edges(), form.edges());
        for gen in &lab.generators {
            assert_eq!(g.permute(gen).edges(), g.edges(), "generator is not an automorphism");
        }
    }
    // pairwise distinct, compared only within equal degree sequences
    let mut by_degrees: BTreeMap<Vec<usize>, Vec<&Graph>> = BTreeMap::new();
    for g in &graphs {
        let mut d = g.degrees();
        d.sort_unstable();
        by_degrees.entry(d).or_default().push(g);
    }
    for group in by_degrees.values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                assert!(!brute_isomorphic(group[i], group[j]));
            }
        }
    }
}

/// Removed patterns for the corpus names, built by hand.
fn hand_pattern(name: &str) -> (usize, Vec<(usize, usize)>) {
    let star = |c: usize, leaves: &[usize]| leaves.iter().map(|&l| (c, l)).collect::<Vec<_>>();
    let tri = |a: usize, b: usize, c: usize| vec![(a, b), (b, c), (a, c)];
    match name {
        "K8-K3" => (8, tri(0, 1, 2)),
        "K8-(K1,2∪2K2)" => (8, [star(0, &[1, 2]), vec![(3, 4), (5, 6)]].concat()),
        "K8-K2,3" => (8, [star(0, &[2, 3, 4]), star(1, &[2, 3, 4])].concat()),
        "K8-4K2" => (8, vec![(0, 1), (2, 3), (4, 5), (6, 7)]),
        "K8-(K3∨K2)" => (8, [tri(0, 1, 2), vec![(2, 3)]].concat()),
        "K8-2K3" => (8, [tri(0, 1, 2), tri(3, 4, 5)].concat()),
        "K8-2K1,3" => (8, [star(0, &[1, 2, 3]), star(4, &[5, 6, 7])].concat()),
        "K8-(K1,4∪K3)" => (8, [star(0, &[1, 2, 3, 4]), tri(5, 6, 7)].concat()),
        "K9-K1,2" => (9, star(0, &[1, 2])),
        "K9-2K2" => (9, vec![(0, 1), (2, 3)]),
        _ => panic!("no hand pattern for {name}"),
    }
}

#[test]
fn named_graphs_do_not_depend_on_placement() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for entry in corpus().into_iter().filter(|e| e.graph().order() >= 8) {
        let parsed = parse_name(entry.name).unwrap();
        let (n, pattern) = hand_pattern(entry.name);
        let mut perm: Vec<usize> = (0..n).collect();
        let form = canonical_form(&parsed);
        for trial in 0..200 {
            perm.shuffle(&mut rng);
            let mut g = make_complete(n).unwrap();
            for &(a, b) in &pattern {
                g = g.delete_edge(perm[a], perm[b]).unwrap();
            }
            assert_eq!(canonical_form(&g), form, "{} placement {perm:?}", entry.name);
            if trial == 0 && n == 8 {
                assert!(brute_isomorphic(&g, &parsed), "{}", entry.name);
            }
        }
    }
}

#[test]
fn name_spellings_agree() {
    let a = parse_name("K8-(K1,2∪2K2)").unwrap();
    for spelling in ["K_8 - (K_{1,2} \\cup 2K_2)", "K8-(K1,2u2K2)", "$K_8-(K_{1,2}\\cup 2K_2)$", "K8 − (K1,2 ∪ 2K2)"]
    {
        assert_eq!(parse_name(spelling).unwrap().edges(), a.edges(), "{spelling}");
    }
    for bad in ["K", "K8-", "K3-K5", "K8-(K3", "L8", "K40"] {
        assert!(parse_name(bad).is_err(), "{bad:?} should not parse");
    }
}

#[test]
fn suppression_examples() {
    // a subdivided K4 suppresses back to K4
    let k4 = make_complete(4).unwrap();
    let sub = Graph::from_edges(6, &[(0, 4), (4, 1), (0, 2), (0, 3), (1, 5), (5, 2), (1, 3), (2, 3)]).unwrap();
    assert!(is_isomorphic(&sub.suppress_degree2(), &k4));
    // a triangle has no suppressible vertex: it would leave a double edge
    let c3 = make_cycle(3).unwrap();
    assert_eq!(c3.suppress_degree2().edges(), c3.edges());
    // longer cycles shrink to a triangle
    assert!(is_isomorphic(&make_cycle(7).unwrap().suppress_degree2(), &c3));
    // a path with an isolated vertex shrinks to one edge
    let p = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(p.suppress_degree2().edges(), vec![(0, 1)]);
}
