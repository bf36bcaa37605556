mod common;

use common::{brute_cut_vertices, random_graph, test_graphs};
use mutvis_core::generators::{
    enumerate_small_dh, expand, random_dh, random_sequence, ExpansionSpec,
};
use mutvis_core::oracle::{is_dh_metric, recognize_dh, verify_pruning, DhRecognition};
use mutvis_core::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|&(_, b)| b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn recognition_agrees_with_metric_definition(g in arbitrary_graph(8)) {
        let connected = g.is_connected();
        let verdict = recognize_dh(&g);
        if !connected {
            prop_assert!(verdict.is_err());
            return Ok(());
        }
        let verdict = verdict.unwrap();
        prop_assert_eq!(verdict.is_accepted(), is_dh_metric(&g, 8).unwrap());
        match verdict {
            DhRecognition::Accepted(seq) => {
                prop_assert_eq!(verify_pruning(&g, &seq), Ok(()));
                prop_assert_eq!(expand(&seq).unwrap(), g);
            }
            DhRecognition::Rejected { vertices, remainder } => {
                prop_assert_eq!(vertices.len(), remainder.n());
                prop_assert!(remainder.n() >= 5);
                prop_assert!(!is_dh_metric(&remainder, 8).unwrap());
            }
        }
    }

    #[test]
    fn cut_vertices_match_deletion(g in arbitrary_graph(9)) {
        prop_assert_eq!(g.cut_vertices(), brute_cut_vertices(&g));
    }

    #[test]
    fn generated_sequences_replay(seed in any::<u64>(), n in 1usize..80) {
        let spec = ExpansionSpec::new(seed, n);
        let seq = random_sequence(&spec).unwrap();
        let g = expand(&seq).unwrap();
        prop_assert!(g.is_connected());
        prop_assert_eq!(verify_pruning(&g, &seq), Ok(()));
        prop_assert_eq!(random_dh(&spec).unwrap(), g);
    }
}

#[test]
fn sparse_random_graphs_agree_with_metric_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rejected = 0;
    for i in 0..600 {
        let g = random_graph(&mut rng, 5 + i % 6, 0.35);
        if !g.is_connected() {
            continue;
        }
        let accepted = recognize_dh(&g).unwrap().is_accepted();
        rejected += usize::from(!accepted);
        assert_eq!(accepted, is_dh_metric(&g, 10).unwrap(), "{:?}", g.edges());
    }
    assert!(rejected > 50);
}

#[test]
fn enumeration_is_distance_hereditary() {
    let graphs: Vec<Graph> = enumerate_small_dh(6).unwrap().collect();
    assert_eq!(graphs.len(), 1 + 1 + 3 + 21 + 207 + 2625);
    for g in &graphs {
        assert!(is_dh_metric(g, 6).unwrap(), "{:?}", g.edges());
    }
}

#[test]
fn cut_vertices_on_test_graphs() {
    for g in test_graphs(60, 2, 30, 23) {
        assert_eq!(g.cut_vertices(), brute_cut_vertices(&g));
    }
}
