use graphsym::cherry::find_cherries;
use graphsym::coherent::{orbital_configuration, verify_coherence_axioms, wl2_stabilize};
use graphsym::graph6;
use graphsym::prufer::{prufer_decode, prufer_encode};
use graphsym::sampling::{sample_gnp, sample_rng, sample_uniform_tree};
use graphsym::symmetry::{
    brute_force_automorphisms, classify, tree_automorphism_order, ClassifyOptions, QuantumStatus,
};
use graphsym::{Cherry, Graph, Permutation, PrueferSequence};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.0f64..=1.0)
        .prop_map(|(n, seed, p)| sample_gnp(n, p, &mut sample_rng(seed, 0)).unwrap())
}

fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>())
        .prop_map(|(n, seed)| sample_uniform_tree(n, &mut sample_rng(seed, 0)).unwrap())
}

fn arb_permutation(n: usize, seed: u64) -> Permutation {
    use rand::seq::SliceRandom;
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(&mut sample_rng(seed, 1));
    Permutation::new(image).unwrap()
}

/// Unique simple path between every pair, found by exhaustive DFS.
fn path_counts_all_one(g: &Graph) -> bool {
    fn count(g: &Graph, at: usize, to: usize, seen: &mut Vec<bool>) -> usize {
        if at == to {
            return 1;
        }
        seen[at] = true;
        let mut total = 0;
        for &w in g.neighbors(at) {
            if !seen[w] {
                total += count(g, w, to, seen);
            }
        }
        seen[at] = false;
        total
    }
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| count(g, u, v, &mut vec![false; g.n()]) == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in arb_graph(62)) {
        let bytes = graph6::encode(&g);
        prop_assert!(bytes.iter().all(|b| (63..=126).contains(b)));
        let back = graph6::decode(&bytes).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph6::encode(&back), bytes);
    }

    #[test]
    fn tree_predicate_matches_unique_paths(g in arb_graph(9)) {
        prop_assert_eq!(g.is_tree(), g.is_connected() && path_counts_all_one(&g));
        if g.is_tree() {
            prop_assert_eq!(g.edge_count(), g.n() - 1);
        }
    }

    #[test]
    fn automorphism_check_agrees_with_matrix_commutation(g in arb_graph(12), seed in any::<u64>()) {
        let p = arb_permutation(g.n(), seed);
        let a = g.adjacency_matrix();
        prop_assert!(a.is_symmetric() && a.has_zero_diagonal());
        prop_assert_eq!(g.is_automorphism(&p).unwrap(), a.commutes_with(&p));
    }

    #[test]
    fn prufer_round_trip_on_sampled_trees(t in arb_tree(2, 300)) {
        let seq = prufer_encode(&t).unwrap();
        prop_assert_eq!(seq.as_slice().len(), t.n() - 2);
        prop_assert_eq!(prufer_decode(&seq), t);
    }

    #[test]
    fn decoded_sequences_are_trees(n in 2usize..200, raw in proptest::collection::vec(any::<usize>(), 198)) {
        let seq: Vec<usize> = raw[..n - 2].iter().map(|x| x % n).collect();
        let t = PrueferSequence::new(n, seq.clone()).unwrap().decode();
        prop_assert!(t.is_tree());
        // every label appears in the sequence exactly degree - 1 times
        for v in 0..n {
            let occurrences = seq.iter().filter(|&&x| x == v).count();
            prop_assert_eq!(t.neighbors(v).len(), occurrences + 1);
        }
    }

    #[test]
    fn cherries_match_triple_scan(g in arb_graph(9)) {
        let n = g.n();
        let mut expected = Vec::new();
        for u1 in 0..n {
            for u2 in u1 + 1..n {
                for v in 0..n {
                    let c = Cherry { u1, u2, v };
                    if c.holds_in(&g) {
                        expected.push(c);
                    }
                }
            }
        }
        prop_assert_eq!(find_cherries(&g), expected);
    }

    #[test]
    fn cherry_swaps_are_automorphisms(t in arb_tree(4, 400)) {
        let cherries = find_cherries(&t);
        for c in &cherries {
            let swap = graphsym::symmetry::cherry_swap(c, t.n());
            prop_assert_eq!(swap.support(), vec![c.u1, c.u2]);
            prop_assert!(t.is_automorphism(&swap).unwrap());
        }
        let order = tree_automorphism_order(&t).unwrap();
        if !cherries.is_empty() {
            prop_assert!(order.group_order >= 2u32.into());
        }
        prop_assert!(order.generators.iter().all(|p| t.is_automorphism(p).unwrap()));
        prop_assert_eq!(order.is_trivial(), order.generators.is_empty());
    }

    #[test]
    fn tree_order_matches_brute_force(t in arb_tree(2, 10)) {
        prop_assert_eq!(
            tree_automorphism_order(&t).unwrap().group_order,
            brute_force_automorphisms(&t, 10).unwrap().group_order
        );
    }

    #[test]
    fn verdict_certificates_verify(g in arb_graph(10)) {
        let v = classify(&g, &ClassifyOptions::default());
        prop_assert!(v.verify(&g));
        let order = brute_force_automorphisms(&g, 10).unwrap().group_order;
        if v.status == QuantumStatus::QuantumAsymmetric {
            prop_assert_eq!(&order, &1u32.into());
        }
        if v.status == QuantumStatus::QuantumSymmetric {
            prop_assert!(order >= 4u32.into());
        }
    }

    #[test]
    fn wl_output_is_coherent_and_refined_by_orbitals(g in arb_graph(10)) {
        let wl = wl2_stabilize(&g, 256).unwrap();
        prop_assert_eq!(verify_coherence_axioms(&wl), Ok(()));
        let orb = orbital_configuration(&g, 10).unwrap();
        prop_assert_eq!(verify_coherence_axioms(&orb.config), Ok(()));
        prop_assert!(orb.config.refines(&wl));
        prop_assert!(wl.num_classes() <= orb.config.num_classes());
        if wl.is_full() {
            prop_assert_eq!(orb.group_order, 1u32.into());
        }
    }

    #[test]
    fn wl_is_isomorphism_invariant(g in arb_graph(24), seed in any::<u64>()) {
        let p = arb_permutation(g.n(), seed);
        let h = g.relabel(&p).unwrap();
        let (a, b) = (wl2_stabilize(&g, 256).unwrap(), wl2_stabilize(&h, 256).unwrap());
        prop_assert_eq!(a.num_classes(), b.num_classes());
        prop_assert_eq!(a.sorted_class_sizes(), b.sorted_class_sizes());
        prop_assert_eq!(a.round_counts(), b.round_counts());
    }

    #[test]
    fn wl_rounds_increase_strictly(g in arb_graph(30)) {
        let c = wl2_stabilize(&g, 256).unwrap();
        let rounds = c.round_counts();
        prop_assert!(rounds.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(rounds.len() <= g.n() * g.n());
        prop_assert_eq!(*rounds.last().unwrap(), c.num_classes());
    }

    #[test]
    fn configuration_text_round_trip(g in arb_graph(15)) {
        let c = wl2_stabilize(&g, 256).unwrap();
        let back = graphsym::CoherentConfiguration::from_text(&c.to_text()).unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn rigid_components_stay_rigid_in_disjoint_unions() {
    let tree = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6)]).unwrap();
    let six = (0..)
        .map(|seed| sample_gnp(6, 0.5, &mut sample_rng(seed, 0)).unwrap())
        .find(|g| brute_force_automorphisms(g, 6).unwrap().is_trivial())
        .unwrap();
    let k1 = Graph::empty(1);
    for u in [
        tree.disjoint_union(&six),
        six.disjoint_union(&k1),
        tree.disjoint_union(&k1),
    ] {
        assert!(brute_force_automorphisms(&u, 13).unwrap().is_trivial());
    }
    // the same component twice is not rigid: the halves can be exchanged
    let twice = six.disjoint_union(&six);
    assert_eq!(
        brute_force_automorphisms(&twice, 12).unwrap().group_order,
        2u32.into()
    );
}
