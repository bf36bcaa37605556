mod common;

use common::{
    head_side_unmarked, is_block_graph, pipeline, random_block_graph, random_subset, test_graphs,
};
use mutvis_core::directed::Shape;
use mutvis_core::generators::{random_dh, ExpansionSpec};
use mutvis_core::mu::{mu_number, mu_set, pair_visible_decomp};
use mutvis_core::oracle::mu_bruteforce;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn mu_matches_oracle(seed in any::<u64>(), n in 1usize..=11) {
        let g = random_dh(&ExpansionSpec::new(seed, n)).unwrap();
        prop_assert_eq!(mu_number(&g).unwrap(), mu_bruteforce(&g, 11).unwrap().0);
    }

    #[test]
    fn mu_set_is_mutual_visibility_set(seed in any::<u64>(), n in 1usize..150) {
        let g = random_dh(&ExpansionSpec::new(seed, n)).unwrap();
        let r = mu_set(&g).unwrap();
        prop_assert_eq!(r.set.len(), r.mu);
        prop_assert!(g.is_mutual_visibility_set(&r.set).unwrap());
        prop_assert_eq!(mu_set(&g).unwrap(), r);
    }
}

#[test]
fn sigma_vertices_are_cut_vertices() {
    for g in test_graphs(200, 3, 60, 5) {
        let p = pipeline(&g);
        assert!(p.dd.sigma().is_subset(&g.cut_vertices()), "{:?}", g.edges());
    }
}

#[test]
fn t_arrow_heads_reach_their_whole_side() {
    for g in test_graphs(200, 3, 60, 7) {
        let p = pipeline(&g);
        let report = p.dd.t_arrows().unwrap();
        for &a in &report.t_arrows {
            assert_eq!(p.dd.head_reachable(a), head_side_unmarked(&p.dd, a));
        }
        if report.shape == Shape::HeadConnected {
            let bag = report.head_bag.unwrap();
            for &a in &report.t_arrows {
                assert_eq!(p.dd.base().vertex(p.dd.arrow(a).head).bag, bag);
            }
        }
    }
}

#[test]
fn no_arrows_exactly_for_block_graphs() {
    let mut blocks = 0;
    let mut others = 0;
    let graphs = test_graphs(200, 3, 40, 9)
        .into_iter()
        .chain((0..100).map(|s| random_block_graph(s, 3 + s as usize % 30)));
    for g in graphs {
        let p = pipeline(&g);
        let block = is_block_graph(&g);
        assert_eq!(p.dd.arrows().is_empty(), block, "{:?}", g.edges());
        if block {
            blocks += 1;
        } else {
            others += 1;
        }
    }
    assert!(blocks >= 100 && others >= 100);
}

#[test]
fn decomposition_visibility_matches_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for g in test_graphs(60, 3, 25, 13) {
        let p = pipeline(&g);
        for _ in 0..30 {
            let x = random_subset(&mut rng, g.n());
            for (i, &u) in x.iter().enumerate() {
                for &v in &x.as_slice()[i + 1..] {
                    assert_eq!(
                        pair_visible_decomp(&p.dd, &x, u, v),
                        g.pair_visible(&x, u, v).unwrap(),
                        "{u} {v} {:?} in {:?}",
                        x,
                        g.edges()
                    );
                }
            }
        }
    }
}

#[test]
fn every_shape_occurs() {
    let mut seen = [0usize; 4];
    for seed in 0..1500 {
        let g = random_dh(&ExpansionSpec::new(seed, 4 + seed as usize % 9)).unwrap();
        let shape = pipeline(&g).dd.t_arrows().unwrap().shape;
        let i = match shape {
            Shape::NoTArrow => 0,
            Shape::SingleOrTailConnected => 1,
            Shape::HeadConnected => 2,
            Shape::OppositePair => 3,
        };
        seen[i] += 1;
    }
    assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
}
