use deckrecon_core::canon::canonical_code;
use deckrecon_core::deck::{full_deck, remove_cards, DeckOptions, PartialDeck, RemovalPolicy};
use deckrecon_core::experiment::{run_experiment, ExperimentConfig};
use deckrecon_core::recon::{reconstruct_degree_sequence, DegSeqOptions};
use deckrecon_core::verification::{common_cards, deck_codes, densified_pair, star_triple_pair};
use deckrecon_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn matching_edges_experiment_succeeds() {
    let cfg = ExperimentConfig::parse(
        r#"
tasks = ["edges"]
[gen]
family = "matching"
n = 100
d = 1
[removal]
policy = "random"
k = 4
trials = 200
seed = 11
"#,
    )
    .unwrap();
    let report = run_experiment(&cfg).unwrap();
    assert_eq!(report.aggregate.success_rate, 1.0);
    assert!(report.records.iter().all(|r| r.in_regime));
    assert_eq!(report.provenance.k, 4);
    assert_eq!(report.provenance.config_hash.len(), 64);
}

#[test]
fn matching_degseq_experiment_succeeds() {
    let cfg = ExperimentConfig::parse(
        r#"
tasks = ["degseq"]
[gen]
family = "matching"
n = 10000
d = 1
[removal]
policy = "random"
k = 1
trials = 4
seed = 2
"#,
    )
    .unwrap();
    let report = run_experiment(&cfg).unwrap();
    assert_eq!(report.aggregate.success_rate, 1.0);
    assert_eq!(report.aggregate.max_error, Some(0));
}

#[test]
fn adversarial_policies_in_experiments() {
    for policy in ["max_edges_first", "min_edges_first", "target_degrees"] {
        let text = format!(
            "tasks = [\"edges\"]\n[gen]\nfamily = \"random_forest\"\nn = 140\nd = 2\nseed = 3\n\
             [removal]\npolicy = \"{policy}\"\nk = 3\ntrials = 10\n"
        );
        let report = run_experiment(&ExperimentConfig::parse(&text).unwrap()).unwrap();
        assert_eq!(report.aggregate.success_rate, 1.0, "{policy}");
    }
}

/// The six cards shared by a star-triple pair form a partial deck of both
/// graphs, whose degree histograms differ, so no reconstruction may claim a
/// guarantee on it.
#[test]
fn shared_cards_of_star_triples_are_ambiguous() {
    let p = 3;
    let pair = star_triple_pair(p).unwrap();
    assert_ne!(pair.g.degree_histogram(), pair.h.degree_histogram());
    let shared = common_cards(&pair.g, &pair.h).unwrap();
    let (code, mult) = &shared.shared[0];
    assert_eq!(*mult, 2 * p as u64);

    // The first graph has 2(p+1) copies of the shared card; keep 2p of them.
    let deck = full_deck(&pair.g, &DeckOptions::default()).unwrap();
    let keep: Vec<_> = (0..pair.g.n())
        .filter(|&v| &canonical_code(&pair.g.delete_vertex(v).unwrap()).unwrap() == code)
        .map(|v| deck.cards()[v].clone())
        .take(2 * p)
        .collect();
    assert_eq!(keep.len(), 2 * p);
    let partial = PartialDeck::new(pair.g.n(), keep).unwrap();
    match reconstruct_degree_sequence(
        &partial,
        DegSeqOptions {
            d: Some(2),
            force_general: false,
        },
    ) {
        Ok(state) => assert!(!state.in_regime || state.consistency_failed),
        Err(e) => assert!(matches!(
            e,
            deckrecon_core::Error::Regime(_) | deckrecon_core::Error::NoWindow { .. }
        )),
    }
}

#[test]
fn densified_pairs_keep_the_star_cards() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in 2..=5usize {
        let n = 3 * p + 4;
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(0.5))
            .collect();
        let filler = Graph::from_edges(n, edges).unwrap();
        let pair = densified_pair(p, &filler).unwrap();
        let cc = common_cards(&pair.g, &pair.h).unwrap().cc;
        assert!(cc >= 2 * p as u64);
        assert!(cc <= (6 * p + 8) as u64);
        // One card per vertex.
        let dg = deck_codes(&pair.g).unwrap();
        assert!(dg.values().sum::<u64>() == (6 * p + 8) as u64);
    }
}

#[test]
fn removal_policies_keep_insertion_order() {
    let g = Graph::path(12);
    let deck = full_deck(&g, &DeckOptions::default()).unwrap();
    let partial = remove_cards(&deck, 3, &RemovalPolicy::MinEdgesFirst, 0).unwrap();
    // The three removed cards come from degree-2 vertices; both leaf cards survive in order.
    let edges: Vec<u64> = partial.cards().iter().map(|c| c.edge_count).collect();
    assert_eq!(edges.first(), Some(&10));
    assert_eq!(edges.last(), Some(&10));
    assert_eq!(edges.len(), 9);
}
