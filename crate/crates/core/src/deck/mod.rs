//! Decks as multisets of unlabelled card statistics.
//!
//! A card is never stored as a graph. [`CardStats`] keeps the edge count, the
//! degree histogram and optionally clique-degree counts, which is all the
//! reconstruction algorithms consume. Reconstruction entry points take a
//! [`PartialDeck`] and nothing else, so ground truth cannot leak into them.

mod format;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::{clique_profile, for_each_clique_in, CliqueProfile};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::histogram::DegreeHistogram;

/// Clique-degree statistics of one card, without vertex identities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CardCliques {
    pub r: usize,
    /// `c_t` of the card.
    pub counts: DegreeHistogram,
    pub total: u64,
}

/// Isomorphism-invariant summary of a card `G - v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CardStats {
    pub vertex_count: u64,
    pub edge_count: u64,
    pub degrees: DegreeHistogram,
    pub cliques: Option<CardCliques>,
    /// Degree histograms of `(G - v) - w` for the high-degree vertices `w` of
    /// this card; empty unless sub-cards were requested for it.
    pub sub_cards: Vec<DegreeHistogram>,
}

impl CardStats {
    /// Degree in this card of the vertex whose deletion produced `sub`.
    pub fn sub_card_vertex_degree(&self, sub: &DegreeHistogram) -> u64 {
        self.edge_count - (sub.weighted_sum() / 2) as u64
    }

    fn validate(&self, n: usize) -> Result<()> {
        let expect = n as u64 - 1;
        if self.vertex_count != expect {
            return Err(Error::Input(format!(
                "card has {} vertices, expected {expect}",
                self.vertex_count
            )));
        }
        if self.degrees.vertex_count() != expect {
            return Err(Error::Input(format!(
                "card histogram covers {} vertices, expected {expect}",
                self.degrees.vertex_count()
            )));
        }
        if self.degrees.weighted_sum() != 2 * self.edge_count as u128 {
            return Err(Error::Input(format!(
                "card degree sum {} is not twice its edge count {}",
                self.degrees.weighted_sum(),
                self.edge_count
            )));
        }
        if let Some(c) = &self.cliques {
            if c.counts.vertex_count() != expect {
                return Err(Error::Input(
                    "card clique counts cover the wrong number of vertices".into(),
                ));
            }
            if c.counts.weighted_sum() != c.r as u128 * c.total as u128 {
                return Err(Error::Input(
                    "card clique degrees do not sum to r times the total".into(),
                ));
            }
        }
        for sub in &self.sub_cards {
            if sub.vertex_count() + 1 != expect || sub.weighted_sum() > self.degrees.weighted_sum() {
                return Err(Error::Input("sub-card histogram is inconsistent with its card".into()));
            }
        }
        Ok(())
    }
}

/// Multiset of cards from an `n`-vertex graph with `k` cards missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDeck {
    n: usize,
    cards: Vec<CardStats>,
}

impl PartialDeck {
    /// Validates that every card has `n - 1` vertices and that at most `n` are given.
    pub fn new(n: usize, cards: Vec<CardStats>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("a deck needs n >= 1".into()));
        }
        if cards.len() > n {
            return Err(Error::Input(format!(
                "{} cards given for a graph on {n} vertices",
                cards.len()
            )));
        }
        for c in &cards {
            c.validate(n)?;
        }
        Ok(PartialDeck { n, cards })
    }

    /// Order of the original graph.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of missing cards.
    pub fn k(&self) -> usize {
        self.n - self.cards.len()
    }

    /// Cards in insertion order.
    pub fn cards(&self) -> &[CardStats] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    /// Card indices by edge count, descending; ties keep insertion order.
    pub fn edge_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.cards.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(self.cards[i].edge_count));
        idx
    }

    /// The card with the most edges (first among ties).
    pub fn reference_card(&self) -> Option<&CardStats> {
        self.edge_order().first().map(|&i| &self.cards[i])
    }

    pub fn total_edges(&self) -> u128 {
        self.cards.iter().map(|c| c.edge_count as u128).sum()
    }

    /// Cards sorted into a canonical order, for multiset comparisons.
    pub fn multiset(&self) -> Vec<CardStats> {
        let mut v = self.cards.clone();
        v.sort();
        v
    }

    /// Text form; see [`PartialDeck::parse`].
    pub fn to_text(&self) -> String {
        format::write_deck(self)
    }

    /// Parses the `deck n k` / `card` / `cliques` / `subcard` line format.
    pub fn parse(text: &str) -> Result<Self> {
        format::parse_deck(text)
    }
}

/// Which one-vertex-deleted sub-card histograms to attach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcardOptions {
    /// Card vertices of degree strictly above this get a sub-card histogram.
    pub threshold: u64,
    /// How many of the highest-edge cards receive them. One suffices for a
    /// full deck; a removal policy that drops the top cards needs more.
    pub depth: usize,
}

impl SubcardOptions {
    /// Threshold `100·d²` for average-degree bound `d`, attached to the top card only.
    pub fn for_degree_bound(d: u64) -> Self {
        SubcardOptions {
            threshold: 100 * d * d,
            depth: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckOptions {
    /// Clique size for per-card clique-degree counts.
    pub cliques: Option<usize>,
    pub subcards: Option<SubcardOptions>,
}

/// Computes card statistics by delta-updating the parent graph's histograms.
pub struct CardBuilder<'g> {
    g: &'g Graph,
    degrees: DegreeHistogram,
    cliques: Option<CliqueProfile>,
}

impl<'g> CardBuilder<'g> {
    pub fn new(g: &'g Graph, clique_r: Option<usize>) -> Self {
        CardBuilder {
            g,
            degrees: g.degree_histogram(),
            cliques: clique_r.map(|r| clique_profile(g, r)),
        }
    }

    /// Statistics of `G - v` in `O(d(v))` histogram updates (more when clique counts are on).
    pub fn card(&self, v: Vertex) -> Result<CardStats> {
        let g = self.g;
        if v >= g.n() {
            return Err(Error::Input(format!("vertex {v} out of range for {} vertices", g.n())));
        }
        let mut degrees = self.degrees.clone();
        degrees.remove(g.degree(v) as u64, 1);
        for &w in g.neighbors(v) {
            let d = g.degree(w) as u64;
            degrees.shift(d, d - 1);
        }
        let cliques = self.cliques.as_ref().map(|prof| card_cliques(g, prof, v));
        Ok(CardStats {
            vertex_count: g.n() as u64 - 1,
            edge_count: (g.m() - g.degree(v)) as u64,
            degrees,
            cliques,
            sub_cards: Vec::new(),
        })
    }

    /// Histograms of `(G - v) - w` for every `w != v` whose degree in `G - v` exceeds `threshold`.
    pub fn sub_cards(&self, v: Vertex, card: &CardStats, threshold: u64) -> Vec<DegreeHistogram> {
        let g = self.g;
        let card_degree = |x: Vertex| g.degree(x) as u64 - u64::from(g.has_edge(x, v));
        (0..g.n())
            .filter(|&w| w != v && card_degree(w) > threshold)
            .map(|w| {
                let mut h = card.degrees.clone();
                h.remove(card_degree(w), 1);
                for &x in g.neighbors(w) {
                    if x != v {
                        let d = card_degree(x);
                        h.shift(d, d - 1);
                    }
                }
                h
            })
            .collect()
    }
}

fn card_cliques(g: &Graph, prof: &CliqueProfile, v: Vertex) -> CardCliques {
    let mut counts = prof.counts.clone();
    counts.remove(prof.per_vertex[v], 1);
    // Cliques through v are (r-1)-cliques inside N(v); each member loses one.
    let mut lost: BTreeMap<Vertex, u64> = BTreeMap::new();
    for_each_clique_in(g, g.neighbors(v), prof.r - 1, &mut |q| {
        for &u in q {
            *lost.entry(u).or_insert(0) += 1;
        }
    });
    for (u, l) in lost {
        let c = prof.per_vertex[u];
        counts.shift(c, c - l);
    }
    CardCliques {
        r: prof.r,
        counts,
        total: prof.total - prof.per_vertex[v],
    }
}

/// Statistics of the single card `G - v` via the streaming path.
pub fn card_stats_streamed(g: &Graph, v: Vertex) -> Result<CardStats> {
    CardBuilder::new(g, None).card(v)
}

/// The full deck of `g` as card statistics, in vertex order.
pub fn full_deck(g: &Graph, opts: &DeckOptions) -> Result<PartialDeck> {
    if g.n() == 0 {
        return Err(Error::Input("the null graph has no deck".into()));
    }
    if let Some(r) = opts.cliques {
        if r < 2 {
            return Err(Error::Input("clique size must be at least 2".into()));
        }
    }
    let builder = CardBuilder::new(g, opts.cliques);
    let mut cards = (0..g.n())
        .into_par_iter()
        .map(|v| builder.card(v))
        .collect::<Result<Vec<_>>>()?;
    if let Some(sub) = opts.subcards {
        let mut order: Vec<usize> = (0..cards.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(cards[i].edge_count));
        for &v in order.iter().take(sub.depth.max(1)) {
            cards[v].sub_cards = builder.sub_cards(v, &cards[v], sub.threshold);
        }
    }
    PartialDeck::new(g.n(), cards)
}

/// How cards are chosen for removal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalPolicy {
    /// Uniformly random k-subset.
    Random,
    /// The k cards with most edges (lowest-degree deleted vertices).
    MaxEdgesFirst,
    /// The k cards with fewest edges.
    MinEdgesFirst,
    /// One card per listed deleted-vertex degree. Needs the true edge count,
    /// so it is only usable in simulation.
    TargetDegrees { degrees: Vec<u64>, true_edge_count: u64 },
}

impl RemovalPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            RemovalPolicy::Random => "random",
            RemovalPolicy::MaxEdgesFirst => "max_edges_first",
            RemovalPolicy::MinEdgesFirst => "min_edges_first",
            RemovalPolicy::TargetDegrees { .. } => "target_degrees",
        }
    }
}

/// Drops `k` more cards according to `policy`. Survivors keep their order.
pub fn remove_cards(deck: &PartialDeck, k: usize, policy: &RemovalPolicy, seed: u64) -> Result<PartialDeck> {
    let len = deck.len();
    if k > len {
        return Err(Error::Input(format!("cannot remove {k} of {len} cards")));
    }
    let doomed: Vec<usize> = match policy {
        RemovalPolicy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::index::sample(&mut rng, len, k).into_vec()
        }
        RemovalPolicy::MaxEdgesFirst => deck.edge_order().into_iter().take(k).collect(),
        RemovalPolicy::MinEdgesFirst => {
            let mut idx: Vec<usize> = (0..len).collect();
            idx.sort_by_key(|&i| deck.cards[i].edge_count);
            idx.truncate(k);
            idx
        }
        RemovalPolicy::TargetDegrees {
            degrees,
            true_edge_count,
        } => {
            if degrees.len() != k {
                return Err(Error::Input(format!(
                    "target_degrees lists {} degrees but k = {k}",
                    degrees.len()
                )));
            }
            let mut taken = vec![false; len];
            let mut out = Vec::with_capacity(k);
            for &t in degrees {
                let hit = (0..len).find(|&i| !taken[i] && deck.cards[i].edge_count + t == *true_edge_count);
                let Some(i) = hit else {
                    return Err(Error::Input(format!(
                        "no remaining card with deleted-vertex degree {t}"
                    )));
                };
                taken[i] = true;
                out.push(i);
            }
            out
        }
    };
    let mut keep = vec![true; len];
    for i in doomed {
        keep[i] = false;
    }
    let cards = deck
        .cards
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c.clone())
        .collect();
    PartialDeck::new(deck.n, cards)
}
