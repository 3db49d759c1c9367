use deckrecon_core::canon::canonical_code;
use deckrecon_core::clique::clique_profile;
use deckrecon_core::deck::{full_deck, remove_cards, CardBuilder, DeckOptions, PartialDeck, RemovalPolicy};
use deckrecon_core::generators::{generate, Family, GenSpec};
use deckrecon_core::rational::{round_half_up, Rational};
use deckrecon_core::recon::{estimate_edges, regime_check, Theorem};
use deckrecon_core::verification::{common_cards, naive_deck_histograms};
use deckrecon_core::{DegreeHistogram, Graph};
use proptest::prelude::*;

fn graph_on(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
        Graph::from_edges(n, edges).unwrap()
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_on)
}

fn same_order_pair(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    (1..=max_n).prop_flat_map(|n| (graph_on(n), graph_on(n)))
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn histogram_invariants(g in graph(14)) {
        let h = g.degree_histogram();
        prop_assert_eq!(h.vertex_count(), g.n() as u64);
        prop_assert_eq!(h.weighted_sum(), 2 * g.m() as u128);
        let prefixes: Vec<u64> = (0..=g.n() as u64).map(|t| h.prefix_below(t)).collect();
        prop_assert!(prefixes.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*prefixes.last().unwrap(), g.n() as u64);
    }

    #[test]
    fn kelly_identity(g in graph(12)) {
        prop_assume!(g.n() >= 2);
        let total: usize = (0..g.n()).map(|v| g.delete_vertex(v).unwrap().m()).sum();
        prop_assert_eq!(total, (g.n() - 2) * g.m());
    }

    #[test]
    fn streamed_cards_match_deletion(g in graph(12)) {
        let builder = CardBuilder::new(&g, Some(3));
        for (v, naive) in naive_deck_histograms(&g).into_iter().enumerate() {
            let card = builder.card(v).unwrap();
            let h = g.delete_vertex(v).unwrap();
            prop_assert_eq!(&card.degrees, &naive);
            prop_assert_eq!(card.edge_count, h.m() as u64);
            let cl = card.cliques.unwrap();
            let direct = clique_profile(&h, 3);
            prop_assert_eq!(cl.counts, direct.counts);
            prop_assert_eq!(cl.total, direct.total);
        }
    }

    #[test]
    fn deletion_changes_histogram_locally(g in graph(12), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.n());
        let mut expected = g.degree_histogram();
        expected.remove(g.degree(v) as u64, 1);
        for &w in g.neighbors(v) {
            let d = g.degree(w) as u64;
            expected.remove(d, 1);
            expected.add(d - 1, 1);
        }
        prop_assert_eq!(g.delete_vertex(v).unwrap().degree_histogram(), expected);
    }

    #[test]
    fn clique_profile_invariants(g in graph(11), r in 2usize..5) {
        let p = clique_profile(&g, r);
        prop_assert_eq!(p.per_vertex.iter().sum::<u64>(), r as u64 * p.total);
        prop_assert_eq!(p.counts, DegreeHistogram::from_values(p.per_vertex.iter().copied()));
        if r == 2 {
            prop_assert_eq!(p.total, g.m() as u64);
            prop_assert!(p.per_vertex.iter().enumerate().all(|(v, &c)| c == g.degree(v) as u64));
        }
    }

    #[test]
    fn canonical_code_is_relabeling_invariant((g, perm) in graph_and_perm(9)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
    }

    #[test]
    fn common_cards_laws((g, h) in same_order_pair(8)) {
        let self_cc = common_cards(&g, &g).unwrap();
        prop_assert_eq!(self_cc.cc, g.n() as u64);
        let gh = common_cards(&g, &h).unwrap();
        let hg = common_cards(&h, &g).unwrap();
        prop_assert_eq!(gh.cc, hg.cc);
        prop_assert!(gh.cc <= g.n() as u64);
        prop_assert_eq!(gh.cc, gh.shared.iter().map(|(_, m)| m).sum::<u64>());
    }

    #[test]
    fn edge_estimate_sandwich(g in graph(12), k in 0usize..4, seed in any::<u64>()) {
        prop_assume!(g.n() >= 3 && k + 3 <= g.n());
        let deck = full_deck(&g, &DeckOptions::default()).unwrap();
        let partial = remove_cards(&deck, k, &RemovalPolicy::Random, seed).unwrap();
        let est = estimate_edges(&partial).unwrap();
        let over = est.m_tilde - Rational::from_integer(g.m() as i128);
        prop_assert!(over >= Rational::from_integer(0));
        prop_assert!(over <= est.slack_bound);
    }

    #[test]
    fn partial_deck_shape(g in graph(12), k in 0usize..12, seed in any::<u64>()) {
        prop_assume!(k <= g.n());
        let deck = full_deck(&g, &DeckOptions { cliques: Some(3), subcards: None }).unwrap();
        let partial = remove_cards(&deck, k, &RemovalPolicy::Random, seed).unwrap();
        prop_assert_eq!(partial.k(), k);
        prop_assert_eq!(partial.len() + k, g.n());
        let order = partial.edge_order();
        prop_assert!(order.windows(2).all(|w| partial.cards()[w[0]].edge_count >= partial.cards()[w[1]].edge_count));
        prop_assert_eq!(PartialDeck::parse(&partial.to_text()).unwrap(), partial);
    }

    #[test]
    fn edge_list_round_trip(g in graph(15)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn histogram_text_round_trip(values in proptest::collection::vec(0u64..40, 0..30)) {
        let h = DegreeHistogram::from_values(values);
        prop_assert_eq!(DegreeHistogram::parse_sparse(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn rounding_is_nearest(p in -10_000i128..10_000, q in 1i128..500) {
        let x = Rational::new(p, q);
        let r = Rational::from_integer(round_half_up(&x));
        prop_assert!(r - x <= Rational::new(1, 2) && x - r < Rational::new(1, 2));
    }

    #[test]
    fn regime_is_monotone_in_k(n in 3u64..100_000, d in 1u64..5, k in 0u64..50) {
        for theorem in Theorem::ALL {
            let r = Some(3);
            if regime_check(theorem, n, d, k + 1, r).satisfied {
                prop_assert!(regime_check(theorem, n, d, k, r).satisfied);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_are_deterministic_and_capped(
        family in prop::sample::select(vec![Family::RandomForest, Family::ErdosRenyiCapped]),
        n in 1usize..3000,
        d in 1u64..4,
        seed in any::<u64>(),
    ) {
        let spec = GenSpec::new(family, n, d, seed);
        let (g, truth) = generate(&spec).unwrap();
        prop_assert!(2 * g.m() as u64 <= d * n as u64);
        prop_assert_eq!(truth.histogram, g.degree_histogram());
        prop_assert_eq!(generate(&spec).unwrap().0.to_edge_list(), g.to_edge_list());
    }
}
