//! Self-check suite behind `deckrecon verify`: the acceptance criteria at two scales.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::canonical_code;
use crate::deck::{full_deck, remove_cards, DeckOptions, PartialDeck, RemovalPolicy, SubcardOptions};
use crate::error::Result;
use crate::generators::{generate, Family, GenSpec};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::recon::{
    build_partition, estimate_edges, estimate_st, reconstruct_clique_count, reconstruct_degree_sequence,
    reconstruct_edge_count, DegSeqOptions,
};
use crate::verification::{
    biclique_pair, common_cards, naive_deck_edges, star_triple_pair, verify_card_degree_identity,
    verify_low_degree_counts,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    fn pick(self, fast: usize, full: usize) -> usize {
        match self {
            Level::Fast => fast,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub level: Level,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:>3}  {:<30} {:<6} {:>9}  detail\n", "#", "criterion", "result", "ms");
        for r in &self.rows {
            writeln!(
                out,
                "{:>3}  {:<30} {:<6} {:>9}  {}",
                r.id,
                r.name,
                if r.passed { "pass" } else { "FAIL" },
                r.millis,
                r.detail
            )
            .unwrap();
        }
        out
    }
}

/// Outcome of one check: `Ok(detail)` or `Err(first violation)`.
type Outcome = std::result::Result<String, String>;

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.random();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("random edges are simple")
}

type Check = (u32, &'static str, fn(Level) -> Outcome);

pub fn verify_suite(level: Level) -> SuiteReport {
    let checks: [Check; 10] = [
        (1, "deck degree identity", identity),
        (2, "edge estimator sandwich", sandwich),
        (3, "edge count exact", edge_count),
        (4, "triangle count exact", triangles),
        (5, "s_t estimate within n/8", st_bound),
        (6, "degree sequence exact", degseq),
        (7, "k=1 shortcut = general", shortcut),
        (8, "counterexample cc", counterexamples),
        (9, "canonical codes", canon),
        (10, "low-degree counts", low_degree),
    ];
    let rows = checks
        .into_iter()
        .map(|(id, name, check)| {
            let start = Instant::now();
            let outcome = check(level);
            SuiteRow {
                id,
                name,
                passed: outcome.is_ok(),
                detail: outcome.unwrap_or_else(|e| e),
                millis: start.elapsed().as_millis(),
            }
        })
        .collect();
    SuiteReport { level, rows }
}

fn identity(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let count = level.pick(200, 1000);
    for i in 0..count {
        let n = rng.random_range(1..=12);
        let g = random_graph(&mut rng, n);
        fail_if(!verify_card_degree_identity(&g), || {
            format!("graph {i} (n = {n}) violates the identity")
        })?;
    }
    Ok(format!("{count} graphs"))
}

fn sandwich(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (graphs, subsets) = (level.pick(100, 500), level.pick(20, 100));
    for _ in 0..graphs {
        let n = rng.random_range(3..=9);
        let g = random_graph(&mut rng, n);
        let edges = naive_deck_edges(&g);
        let deck = lift(full_deck(&g, &DeckOptions::default()))?;
        for _ in 0..subsets {
            let k = rng.random_range(0..=n / 4);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let cards = order[k..].iter().map(|&v| deck.cards()[v].clone()).collect();
            let partial = lift(PartialDeck::new(n, cards))?;
            let est = lift(estimate_edges(&partial))?;
            let given: u64 = order[k..].iter().map(|&v| edges[v]).sum();
            let (ni, ki) = (n as i128, k as i128);
            fail_if(est.m_tilde != Rational::new(given as i128, ni - 2 - ki), || {
                "estimate mismatch".into()
            })?;
            let over = est.m_tilde - Rational::from_integer(g.m() as i128);
            fail_if(
                over < Rational::from_integer(0) || over > Rational::new(ki * (ni - 1), ni - 2 - ki),
                || format!("n = {n}, k = {k}: overshoot {over}"),
            )?;
        }
    }
    Ok(format!("{} partial decks", graphs * subsets))
}

fn edge_count(level: Level) -> Outcome {
    let trials = level.pick(20, 200) as u64;
    for (family, n, d, k) in [(Family::Matching, 100, 1u64, 4usize), (Family::RandomForest, 140, 2, 3)] {
        for trial in 0..trials {
            let (g, truth) = lift(generate(&GenSpec::new(family, n, d, trial)))?;
            let deck = lift(full_deck(&g, &DeckOptions::default()))?;
            let mode = truth.histogram.iter().max_by_key(|&(_, c)| c).map_or(0, |(t, _)| t);
            for policy in [
                RemovalPolicy::Random,
                RemovalPolicy::MaxEdgesFirst,
                RemovalPolicy::MinEdgesFirst,
                RemovalPolicy::TargetDegrees {
                    degrees: vec![mode; k],
                    true_edge_count: truth.m,
                },
            ] {
                let partial = lift(remove_cards(&deck, k, &policy, trial))?;
                let t = lift(reconstruct_edge_count(&partial, d))?;
                fail_if(t.value != truth.m || !t.in_regime, || {
                    format!("{family:?} seed {trial} {}: {} vs {}", policy.name(), t.value, truth.m)
                })?;
            }
        }
    }
    Ok(format!("{} decks", 8 * trials))
}

fn triangles(level: Level) -> Outcome {
    let (g, truth) = lift(generate(&GenSpec::new(Family::DisjointTriangles, 300, 2, 0)))?;
    let deck = lift(full_deck(
        &g,
        &DeckOptions {
            cliques: Some(3),
            subcards: None,
        },
    ))?;
    let trials = level.pick(20, 100) as u64;
    for trial in 0..trials {
        let partial = lift(remove_cards(&deck, 2, &RemovalPolicy::Random, trial))?;
        let t = lift(reconstruct_clique_count(&partial, 2, 3))?;
        fail_if(t.value != truth.triangle_count, || {
            format!("trial {trial}: {}", t.value)
        })?;
    }
    Ok(format!("{trials} trials"))
}

fn subcard_deck(g: &Graph, d: u64, k: usize) -> std::result::Result<PartialDeck, String> {
    let opts = DeckOptions {
        cliques: None,
        subcards: Some(SubcardOptions {
            depth: k + 1,
            ..SubcardOptions::for_degree_bound(d)
        }),
    };
    lift(full_deck(g, &opts))
}

fn st_bound(level: Level) -> Outcome {
    let (n, k) = (10_000u64, 9usize);
    let seeds = level.pick(2, 20) as u64;
    let mut worst = 0;
    for family in [Family::RandomForest, Family::Matching] {
        for seed in 0..seeds {
            let (g, truth) = lift(generate(&GenSpec::new(family, n as usize, 1, seed)))?;
            let partial = lift(remove_cards(&subcard_deck(&g, 1, k)?, k, &RemovalPolicy::Random, seed))?;
            let partition = lift(build_partition(&partial, truth.m, 1))?;
            for t in 0..=10 {
                let want = (n - 1 - t) * truth.histogram.get(t) + (t + 1) * truth.histogram.get(t + 1);
                let err = lift(estimate_st(&partial, &partition, t))?.abs_diff(want);
                worst = worst.max(err);
                fail_if(8 * err >= n, || format!("{family:?} seed {seed} t = {t}: error {err}"))?;
            }
        }
    }
    Ok(format!("worst error {worst}"))
}

fn degseq(level: Level) -> Outcome {
    let mut runs: Vec<(Family, usize, usize, u64)> = (0..level.pick(2, 20) as u64)
        .map(|s| (Family::Matching, 10_000, 1, s))
        .collect();
    if level == Level::Full {
        runs.extend((0..20).map(|s| (Family::RandomForest, 30_000, 3, s)));
    }
    for &(family, n, k, seed) in &runs {
        let (g, truth) = lift(generate(&GenSpec::new(family, n, 1, seed)))?;
        let partial = lift(remove_cards(&subcard_deck(&g, 1, k)?, k, &RemovalPolicy::Random, seed))?;
        for force_general in [false, true] {
            let s = lift(reconstruct_degree_sequence(
                &partial,
                DegSeqOptions {
                    d: Some(1),
                    force_general,
                },
            ))?;
            fail_if(s.histogram != truth.histogram, || {
                format!("{family:?} n = {n} seed {seed}: wrong histogram")
            })?;
            fail_if(s.max_rounding_distance >= Rational::new(1, 2), || "rounding tie".into())?;
        }
    }
    Ok(format!("{} decks, both paths", runs.len()))
}

fn shortcut(level: Level) -> Outcome {
    let count = level.pick(5, 50) as u64;
    let families = [Family::Matching, Family::RandomForest, Family::ErdosRenyiCapped];
    for i in 0..count {
        let (g, _) = lift(generate(&GenSpec::new(families[i as usize % 3], 10_000, 1, i)))?;
        let partial = lift(remove_cards(&subcard_deck(&g, 1, 1)?, 1, &RemovalPolicy::Random, i))?;
        let fast = lift(reconstruct_degree_sequence(&partial, DegSeqOptions::default()))?;
        let general = lift(reconstruct_degree_sequence(
            &partial,
            DegSeqOptions {
                d: None,
                force_general: true,
            },
        ))?;
        fail_if(fast.histogram != general.histogram, || {
            format!("instance {i} disagrees")
        })?;
    }
    Ok(format!("{count} instances"))
}

fn counterexamples(level: Level) -> Outcome {
    let top = level.pick(5, 8);
    for p in 2..=top {
        for pair in [lift(star_triple_pair(p))?, lift(biclique_pair(p))?] {
            let cc = lift(common_cards(&pair.g, &pair.h))?.cc;
            fail_if(Some(cc) != pair.predicted_cc, || {
                format!("{:?} p = {p}: cc = {cc}", pair.family)
            })?;
        }
    }
    Ok(format!("p = 2..{top}"))
}

fn canon(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let count = level.pick(50, 200);
    for i in 0..count {
        let n = rng.random_range(1..=7);
        let g = random_graph(&mut rng, n);
        let code = lift(canonical_code(&g))?;
        for _ in 0..50 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            fail_if(lift(canonical_code(&lift(g.relabel(&perm))?))? != code, || {
                format!("graph {i}")
            })?;
        }
    }
    Ok(format!("{count} graphs x 50 relabelings"))
}

fn low_degree(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let count = level.pick(100, 500) as u64;
    for i in 0..count {
        let d = rng.random_range(1..=3);
        let n = rng.random_range(10..=2000);
        let family = [Family::RandomForest, Family::ErdosRenyiCapped][i as usize % 2];
        let (g, _) = lift(generate(&GenSpec::new(family, n, d, i)))?;
        fail_if(!lift(verify_low_degree_counts(&g, d))?, || format!("graph {i}"))?;
    }
    Ok(format!("{count} graphs"))
}
