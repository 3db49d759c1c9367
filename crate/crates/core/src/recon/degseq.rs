//! Degree-sequence reconstruction from a deck with a few missing cards.
//!
//! Summing `d_t` over all `n` cards gives `(n-1-t)·d_t(G) + (t+1)·d_{t+1}(G)`.
//! The missing cards are replaced by an estimate `s̃_t` of that sum, accurate
//! to within `n/8`. Starting from a degree `t0` in the middle of the range
//! that provably does not occur, `d_t` is recovered by rounding, one step at
//! a time, downwards to 0 and upwards to `n-1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::count::{infer_degree_bound, reconstruct_edge_count, ReconTrace};
use super::regime::{regime_check, Theorem};
use crate::deck::PartialDeck;
use crate::error::{Error, Result};
use crate::histogram::DegreeHistogram;
use crate::rational::{ceil_div, round_half_up, rounding_distance, Rational};

/// Split of the `n` vertices (equivalently, cards) into three groups by how
/// their card's degree counts can be obtained:
///
/// * `I1`: high-degree vertices of the reference card `G_1`, read from the sub-card `G_1 - w`;
/// * `I2`: given cards whose deleted vertex has degree at most the threshold, read directly;
/// * `I3`: everything else, approximated by `G_1` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardPartition {
    /// `100·d²`.
    pub threshold: u64,
    pub i1_size: u64,
    pub i2_size: u64,
    pub i3_size: u64,
    pub i1_subhistograms: Vec<DegreeHistogram>,
    /// Indices into `deck.cards()`.
    pub i2_card_refs: Vec<usize>,
    /// Index of the reference card `G_1` (most edges).
    pub reference: usize,
    /// Set when `|I1| + |I2| > n`, which cannot happen for a correct `m`.
    pub i3_clamped: bool,
}

/// Partitions the deck using the known edge count `m` and degree bound `d`.
///
/// Only the multiset of sub-card histograms of `G_1` is used; nothing ties a
/// vertex of `G_1` to another card.
pub fn build_partition(deck: &PartialDeck, m: u64, d: u64) -> Result<CardPartition> {
    let d = d.max(1);
    let threshold = 100 * d * d;
    let reference = *deck
        .edge_order()
        .first()
        .ok_or_else(|| Error::Input("partition needs at least one card".into()))?;
    let g1 = &deck.cards()[reference];

    let required = g1.degrees.count_above(threshold);
    let i1_subhistograms: Vec<DegreeHistogram> = g1
        .sub_cards
        .iter()
        .filter(|sub| g1.sub_card_vertex_degree(sub) > threshold)
        .cloned()
        .collect();
    if i1_subhistograms.len() as u64 != required {
        return Err(Error::MissingSubcards {
            threshold,
            required,
            available: i1_subhistograms.len() as u64,
        });
    }

    let mut i2_card_refs = Vec::new();
    for (i, card) in deck.cards().iter().enumerate() {
        let deleted = m.checked_sub(card.edge_count).ok_or_else(|| {
            Error::Input(format!(
                "edge count {m} is below a card's edge count {}",
                card.edge_count
            ))
        })?;
        if deleted <= threshold {
            i2_card_refs.push(i);
        }
    }
    let i1_size = required;
    let i2_size = i2_card_refs.len() as u64;
    let n = deck.n() as u64;
    let i3_clamped = i1_size + i2_size > n;
    Ok(CardPartition {
        threshold,
        i1_size,
        i2_size,
        i3_size: n.saturating_sub(i1_size + i2_size),
        i1_subhistograms,
        i2_card_refs,
        reference,
        i3_clamped,
    })
}

/// `s̃_t = Σ_{I1} d_t(G_1 - w) + Σ_{I2} d_t(G_i) + |I3|·d_t(G_1)`, evaluated directly.
pub fn estimate_st(deck: &PartialDeck, partition: &CardPartition, t: u64) -> Result<u64> {
    if t > deck.n() as u64 {
        return Err(Error::Input(format!("t = {t} outside [0, {}]", deck.n())));
    }
    let cards = deck.cards();
    let i1: u64 = partition.i1_subhistograms.iter().map(|h| h.get(t)).sum();
    let i2: u64 = partition.i2_card_refs.iter().map(|&i| cards[i].degrees.get(t)).sum();
    let i3 = partition.i3_size * cards[partition.reference].degrees.get(t);
    Ok(i1 + i2 + i3)
}

/// Pre-aggregated form of [`estimate_st`] for sweeps over many `t`.
#[derive(Clone, Debug)]
pub struct StEstimator {
    n: u64,
    summed: DegreeHistogram,
    reference: DegreeHistogram,
    i3_size: u64,
}

impl StEstimator {
    pub fn new(deck: &PartialDeck, partition: &CardPartition) -> Self {
        let mut summed = DegreeHistogram::new();
        for h in &partition.i1_subhistograms {
            for (t, c) in h.iter() {
                summed.add(t, c);
            }
        }
        for &i in &partition.i2_card_refs {
            for (t, c) in deck.cards()[i].degrees.iter() {
                summed.add(t, c);
            }
        }
        StEstimator {
            n: deck.n() as u64,
            summed,
            reference: deck.cards()[partition.reference].degrees.clone(),
            i3_size: partition.i3_size,
        }
    }

    pub fn get(&self, t: u64) -> u64 {
        debug_assert!(t <= self.n);
        self.summed.get(t) + self.i3_size * self.reference.get(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowRule {
    /// No given card has a vertex of degree `t0` or `t0 - 1`.
    NoCard,
    /// At least two given cards lack both degrees.
    TwoCards,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroWindow {
    pub t0: u64,
    pub rule: WindowRule,
}

/// Smallest `t0` in `[ceil(n/4), floor(3n/4)]` certified to have `d_{t0}(G) = 0`.
///
/// A vertex of degree `t0` shows up with degree `t0` or `t0 - 1` on every card
/// but its own, so two cards lacking both values rule it out.
pub fn find_zero_window(deck: &PartialDeck) -> Result<ZeroWindow> {
    let n = deck.n() as u64;
    let lo = n.div_ceil(4);
    let hi = 3 * n / 4;
    if lo > hi {
        return Err(Error::NoWindow {
            lo: lo as usize,
            hi: hi as usize,
        });
    }
    // having[t - lo]: number of cards with a vertex of degree t or t - 1.
    let mut having = vec![0u64; (hi - lo + 1) as usize];
    for card in deck.cards() {
        let mut last: Option<u64> = None;
        for (u, _) in card.degrees.iter() {
            for t in [u, u + 1] {
                if last.is_some_and(|l| l >= t) {
                    continue;
                }
                last = Some(t);
                if (lo..=hi).contains(&t) {
                    having[(t - lo) as usize] += 1;
                }
            }
        }
    }
    let given = deck.len() as u64;
    (lo..=hi)
        .zip(having)
        .find(|&(_, h)| given - h >= 2)
        .map(|(t0, h)| ZeroWindow {
            t0,
            rule: if h == 0 {
                WindowRule::NoCard
            } else {
                WindowRule::TwoCards
            },
        })
        .ok_or(Error::NoWindow {
            lo: lo as usize,
            hi: hi as usize,
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegSeqPath {
    /// `k = 0`: every degree is `m - |E(G_i)|`.
    FullDeck,
    /// `k = 1`: the missing degree is `2m` minus the others.
    OneMissing,
    /// Window anchor and rounding sweeps.
    General,
}

/// How each `d_t` was determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ZeroWindow,
    RoundedDown,
    RoundedUp,
    FastPath,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DegSeqOptions {
    /// Average-degree bound; inferred from the deck when absent.
    pub d: Option<u64>,
    /// Use the general path even when `k <= 1`.
    pub force_general: bool,
}

/// Output and diagnostics of [`reconstruct_degree_sequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegSeqState {
    pub n: u64,
    pub k: u64,
    /// Degree bound used for the card partition (`ceil(2m/n)` on the general path).
    pub d: u64,
    pub m: u64,
    pub t0: Option<u64>,
    pub window_rule: Option<WindowRule>,
    pub histogram: DegreeHistogram,
    pub path: DegSeqPath,
    pub provenance: BTreeMap<u64, Provenance>,
    /// `s̃_t` for every `t` the sweeps consumed.
    pub s_tilde: BTreeMap<u64, u64>,
    /// Pre-rounding estimates `d̃_t`, general path only.
    pub estimates: BTreeMap<u64, Rational>,
    pub max_rounding_distance: Rational,
    pub in_regime: bool,
    pub consistency_failed: bool,
    /// Degrees whose rounded estimate was negative and clamped to zero.
    pub clamped: Vec<u64>,
    /// A rounding step landed exactly on a half integer.
    pub rounding_tie: bool,
    /// More than one edge count fit the deck on the `k = 1` path.
    pub m_ambiguous: bool,
    pub partition_sizes: Option<(u64, u64, u64)>,
    pub edge_trace: Option<ReconTrace>,
}

impl DegSeqState {
    pub fn to_json(&self) -> serde_json::Value {
        let histogram: Vec<[u64; 2]> = self.histogram.iter().map(|(t, c)| [t, c]).collect();
        json!({
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "m": self.m,
            "t0": self.t0,
            "histogram": histogram,
            "flags": {
                "path": self.path,
                "window_rule": self.window_rule,
                "consistency_failed": self.consistency_failed,
                "clamped_negative": self.clamped,
                "rounding_tie": self.rounding_tie,
                "m_ambiguous": self.m_ambiguous,
                "partition": self.partition_sizes.map(|(a, b, c)| json!({"i1": a, "i2": b, "i3": c})),
            },
            "in_regime": self.in_regime,
            "max_rounding_distance": self.max_rounding_distance.to_string(),
        })
    }

    /// Degrees as a sorted list, one entry per vertex.
    pub fn degree_sequence(&self) -> Vec<u64> {
        self.histogram
            .iter()
            .flat_map(|(t, c)| std::iter::repeat_n(t, c as usize))
            .collect()
    }
}

/// Reconstructs the degree histogram of the deck's graph.
///
/// * `k = 0`: `m = Σ|E(G_i)|/(n-2)` and each degree is `m - |E(G_i)|`.
/// * `k = 1`: as above for the given cards; the last degree is `2m` minus their sum.
/// * otherwise: `m` from [`reconstruct_edge_count`], then the window and sweeps.
///
/// Inconsistencies outside the guaranteed range are flagged, not fatal.
pub fn reconstruct_degree_sequence(deck: &PartialDeck, opts: DegSeqOptions) -> Result<DegSeqState> {
    if deck.is_empty() {
        return Err(Error::Input(
            "degree-sequence reconstruction needs at least one card".into(),
        ));
    }
    match deck.k() {
        0 if !opts.force_general => full_deck_path(deck),
        1 if !opts.force_general => one_missing_path(deck, opts.d),
        _ => general_path(deck, opts.d),
    }
}

fn empty_state(deck: &PartialDeck, path: DegSeqPath) -> DegSeqState {
    DegSeqState {
        n: deck.n() as u64,
        k: deck.k() as u64,
        d: 0,
        m: 0,
        t0: None,
        window_rule: None,
        histogram: DegreeHistogram::new(),
        path,
        provenance: BTreeMap::new(),
        s_tilde: BTreeMap::new(),
        estimates: BTreeMap::new(),
        max_rounding_distance: Rational::from_integer(0),
        in_regime: true,
        consistency_failed: false,
        clamped: Vec::new(),
        rounding_tie: false,
        m_ambiguous: false,
        partition_sizes: None,
        edge_trace: None,
    }
}

fn finish_fast(mut state: DegSeqState, degrees: impl IntoIterator<Item = u64>) -> DegSeqState {
    state.histogram = DegreeHistogram::from_values(degrees);
    state.provenance = state.histogram.iter().map(|(t, _)| (t, Provenance::FastPath)).collect();
    state.d = ceil_div(2 * state.m as i128, state.n as i128).max(1) as u64;
    state.consistency_failed = !histogram_consistent(&state.histogram, state.n, state.m);
    state
}

fn full_deck_path(deck: &PartialDeck) -> Result<DegSeqState> {
    let mut state = empty_state(deck, DegSeqPath::FullDeck);
    let n = deck.n() as u64;
    if n == 1 {
        return Ok(finish_fast(state, [0]));
    }
    if n == 2 {
        return Err(Error::Regime(
            "the deck of a 2-vertex graph does not determine it".into(),
        ));
    }
    let total = deck.total_edges();
    state.m = (total / (n as u128 - 2)) as u64;
    let exact = total.is_multiple_of(n as u128 - 2);
    let m = state.m;
    let degrees: Vec<u64> = deck.cards().iter().map(|c| m.saturating_sub(c.edge_count)).collect();
    let mut state = finish_fast(state, degrees);
    state.consistency_failed |= !exact;
    Ok(state)
}

fn one_missing_path(deck: &PartialDeck, d: Option<u64>) -> Result<DegSeqState> {
    let mut state = empty_state(deck, DegSeqPath::OneMissing);
    let n = deck.n() as u64;
    if n < 3 {
        return Err(Error::Regime(format!("n = {n} is too small to resolve a missing card")));
    }
    let trace = d
        .map(Ok)
        .unwrap_or_else(|| infer_degree_bound(deck))
        .and_then(|d| reconstruct_edge_count(deck, d))
        .ok();

    let candidates = consistent_edge_counts(deck);
    let m = match &trace {
        Some(t) if t.in_regime => t.value,
        _ => match candidates.as_slice() {
            [] => return Err(Error::Regime("no edge count is consistent with the given cards".into())),
            [only] => *only,
            several => {
                state.m_ambiguous = true;
                trace
                    .as_ref()
                    .map(|t| t.value)
                    .filter(|v| several.contains(v))
                    .unwrap_or(several[0])
            }
        },
    };
    state.in_regime = trace.as_ref().is_none_or(|t| t.in_regime) || candidates.len() == 1;
    state.edge_trace = trace;
    state.m = m;
    Ok(finish_fast(state, one_missing_degrees(deck, m)))
}

fn one_missing_degrees(deck: &PartialDeck, m: u64) -> Vec<u64> {
    let mut degrees: Vec<u64> = deck.cards().iter().map(|c| m.saturating_sub(c.edge_count)).collect();
    let sum: u64 = degrees.iter().sum();
    degrees.push((2 * m).saturating_sub(sum));
    degrees
}

/// Edge counts `m` for which the degrees implied by a one-card-short deck are
/// compatible with every given card's degree histogram.
fn consistent_edge_counts(deck: &PartialDeck) -> Vec<u64> {
    let n = deck.n() as u64;
    let max_e = deck.cards().iter().map(|c| c.edge_count).max().unwrap_or(0);
    (max_e..=max_e + n - 1)
        .filter(|&m| {
            let degrees = one_missing_degrees(deck, m);
            let sum: u64 = degrees[..degrees.len() - 1].iter().sum();
            let missing = 2 * m as i128 - sum as i128;
            if !(0..n as i128).contains(&missing) || degrees.iter().any(|&x| x >= n) {
                return false;
            }
            let seq = DegreeHistogram::from_values(degrees.iter().copied());
            deck.cards()
                .iter()
                .all(|c| card_fits(&seq, m - c.edge_count, &c.degrees))
        })
        .collect()
}

/// Whether deleting a vertex of degree `deleted` from a graph with degree
/// histogram `seq` can produce a card with histogram `card`.
///
/// With `a_t` vertices of degree `t` losing a neighbor, the card has
/// `seq'_t - a_t + a_{t+1}` vertices of degree `t`; solving from the top down
/// determines every `a_t`, which must be feasible and total `deleted`.
fn card_fits(seq: &DegreeHistogram, deleted: u64, card: &DegreeHistogram) -> bool {
    if seq.get(deleted) == 0 {
        return false;
    }
    let mut rest = seq.clone();
    rest.remove(deleted, 1);
    let top = rest.max_value().unwrap_or(0).max(card.max_value().unwrap_or(0));
    let mut above: i128 = 0;
    let mut total: i128 = 0;
    for t in (0..=top).rev() {
        let have = rest.get(t) as i128;
        let a = have + above - card.get(t) as i128;
        if a < 0 || a > have || (t == 0 && a != 0) {
            return false;
        }
        total += a;
        above = a;
    }
    total == deleted as i128
}

fn histogram_consistent(h: &DegreeHistogram, n: u64, m: u64) -> bool {
    h.vertex_count() == n && h.weighted_sum() == 2 * m as u128
}

fn general_path(deck: &PartialDeck, d: Option<u64>) -> Result<DegSeqState> {
    let mut state = empty_state(deck, DegSeqPath::General);
    let n = deck.n() as u64;
    let k = deck.k() as u64;

    let d0 = match d {
        Some(d) => d,
        None => infer_degree_bound(deck)?,
    };
    let trace = reconstruct_edge_count(deck, d0)?;
    let m = trace.value;
    let d = ceil_div(2 * m as i128, n as i128).max(1) as u64;
    let regime = regime_check(Theorem::DegreeSequence, n, d, k, None);
    state.in_regime = regime.satisfied && trace.in_regime;
    state.m = m;
    state.d = d;
    state.edge_trace = Some(trace);

    let partition = build_partition(deck, m, d)?;
    state.partition_sizes = Some((partition.i1_size, partition.i2_size, partition.i3_size));
    state.consistency_failed |= partition.i3_clamped;
    let est = StEstimator::new(deck, &partition);
    let window = find_zero_window(deck)?;
    let t0 = window.t0;
    state.t0 = Some(t0);
    state.window_rule = Some(window.rule);

    let len = n as usize;
    let mut dt = vec![0i128; len];
    state.provenance.insert(t0, Provenance::ZeroWindow);

    let settle = |state: &mut DegSeqState, t: u64, x: Rational, prov: Provenance| -> i128 {
        let dist = rounding_distance(&x);
        if dist == Rational::new(1, 2) {
            state.rounding_tie = true;
        }
        if dist > state.max_rounding_distance {
            state.max_rounding_distance = dist;
        }
        let mut v = round_half_up(&x);
        if v < 0 {
            state.clamped.push(t);
            v = 0;
        }
        state.estimates.insert(t, x);
        state.provenance.insert(t, prov);
        v
    };

    // Downwards: d_t = (s̃_t - (t+1)·d_{t+1}) / (n-1-t).
    for t in (0..t0).rev() {
        let s = est.get(t);
        state.s_tilde.insert(t, s);
        let x = Rational::new(
            s as i128 - (t as i128 + 1) * dt[t as usize + 1],
            n as i128 - 1 - t as i128,
        );
        dt[t as usize] = settle(&mut state, t, x, Provenance::RoundedDown);
    }
    // Upwards: d_{t+1} = (s̃_t - (n-1-t)·d_t) / (t+1).
    for t in t0..n.saturating_sub(1) {
        let s = est.get(t);
        state.s_tilde.insert(t, s);
        let x = Rational::new(s as i128 - (n as i128 - 1 - t as i128) * dt[t as usize], t as i128 + 1);
        dt[t as usize + 1] = settle(&mut state, t + 1, x, Provenance::RoundedUp);
    }

    state.histogram = dt
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(t, &c)| (t as u64, c as u64))
        .collect();
    state.consistency_failed |= !histogram_consistent(&state.histogram, n, m) || !state.clamped.is_empty();
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{full_deck, remove_cards, DeckOptions, RemovalPolicy, SubcardOptions};
    use crate::graph::Graph;

    fn deck(g: &Graph) -> PartialDeck {
        full_deck(g, &DeckOptions::default()).unwrap()
    }

    #[test]
    fn partition_of_matching() {
        let p = build_partition(&deck(&Graph::matching(100)), 50, 1).unwrap();
        assert_eq!((p.i1_size, p.i2_size, p.i3_size), (0, 100, 0));
    }

    #[test]
    fn partition_of_star_with_isolated_vertices() {
        let g = Graph::star(60).disjoint_union(&Graph::empty(40));
        let d = deck(&g);
        let p = build_partition(&d, 60, 1).unwrap();
        assert_eq!((p.i1_size, p.i2_size, p.i3_size), (0, 101, 0));
        // The reference card is the one with most edges: an isolated vertex deleted.
        assert_eq!(d.cards()[p.reference].edge_count, 60);
    }

    #[test]
    fn partition_with_a_hub() {
        let g = Graph::star(150).disjoint_union(&Graph::empty(249));
        assert!(g.average_degree() <= Rational::from_integer(1));
        let m = g.m() as u64;
        let plain = deck(&g);
        assert!(matches!(
            build_partition(&plain, m, 1),
            Err(Error::MissingSubcards {
                required: 1,
                available: 0,
                ..
            })
        ));
        let with_sub = full_deck(
            &g,
            &DeckOptions {
                cliques: None,
                subcards: Some(SubcardOptions::for_degree_bound(1)),
            },
        )
        .unwrap();
        let p = build_partition(&with_sub, m, 1).unwrap();
        assert_eq!(p.i1_size, 1);
        assert_eq!(p.i2_size, 399);
        assert_eq!(p.i3_size, 0);
        // s̃_t is exact for a full deck: I3 is empty and I1 covers the hub card.
        let est = StEstimator::new(&with_sub, &p);
        for t in 0..=150 {
            let truth: u64 = with_sub.cards().iter().map(|c| c.degrees.get(t)).sum();
            let direct = estimate_st(&with_sub, &p, t).unwrap();
            assert_eq!(direct, est.get(t));
            let diff = truth.abs_diff(direct);
            assert!(diff <= 2, "t = {t}: {direct} vs {truth}");
        }
    }

    #[test]
    fn estimate_collapses_to_given_cards() {
        let d = deck(&Graph::matching(100));
        let p = build_partition(&d, 50, 1).unwrap();
        assert_eq!(estimate_st(&d, &p, 1).unwrap(), 9800);
        assert_eq!(estimate_st(&d, &p, 0).unwrap(), 100);
        assert!(estimate_st(&d, &p, 101).is_err());
    }

    #[test]
    fn windows() {
        let w = find_zero_window(&deck(&Graph::matching(100))).unwrap();
        assert_eq!(
            w,
            ZeroWindow {
                t0: 25,
                rule: WindowRule::NoCard
            }
        );
        assert_eq!(find_zero_window(&deck(&Graph::cycle(100))).unwrap().t0, 25);
        // K_8: all card degrees are 6, so t0 = 2 is free.
        assert_eq!(find_zero_window(&deck(&Graph::complete(8))).unwrap().t0, 2);
        // A single card can never certify a zero.
        let lone = remove_cards(&deck(&Graph::cycle(12)), 11, &RemovalPolicy::Random, 0).unwrap();
        assert!(matches!(find_zero_window(&lone), Err(Error::NoWindow { .. })));
        // A hub of degree 30 on 100 vertices: cards other than its own contain degree 30 (or 29).
        let g = Graph::star(30)
            .disjoint_union(&Graph::matching(68))
            .disjoint_union(&Graph::empty(1));
        assert_eq!(g.n(), 100);
        let w = find_zero_window(&deck(&g)).unwrap();
        assert_eq!(w.t0, 25);
        let hub = Graph::star(26).disjoint_union(&Graph::empty(73));
        let w = find_zero_window(&deck(&hub)).unwrap();
        // The 26 leaf cards carry the hub at degree 25; the other 73 lack 24 and 25.
        assert_eq!(
            w,
            ZeroWindow {
                t0: 25,
                rule: WindowRule::TwoCards
            }
        );
    }

    #[test]
    fn c5_fast_path() {
        let d = remove_cards(&deck(&Graph::cycle(5)), 1, &RemovalPolicy::Random, 4).unwrap();
        let s = reconstruct_degree_sequence(&d, DegSeqOptions::default()).unwrap();
        assert_eq!(s.path, DegSeqPath::OneMissing);
        assert_eq!(s.histogram, DegreeHistogram::from_values([2; 5]));
        assert_eq!(s.m, 5);
        assert!(!s.m_ambiguous);
    }

    #[test]
    fn full_deck_path_small_graphs() {
        let g = Graph::star(4).disjoint_union(&Graph::path(3));
        let s = reconstruct_degree_sequence(&deck(&g), DegSeqOptions::default()).unwrap();
        assert_eq!(s.histogram, g.degree_histogram());
        assert!(!s.consistency_failed);
        let one = reconstruct_degree_sequence(&deck(&Graph::empty(1)), DegSeqOptions::default()).unwrap();
        assert_eq!(one.histogram, DegreeHistogram::from_values([0]));
        assert!(reconstruct_degree_sequence(&deck(&Graph::path(2)), DegSeqOptions::default()).is_err());
    }

    #[test]
    fn card_fit_check() {
        let c5 = DegreeHistogram::from_values([2; 5]);
        let p4 = DegreeHistogram::from_values([1, 1, 2, 2]);
        assert!(card_fits(&c5, 2, &p4));
        assert!(!card_fits(&c5, 1, &p4));
        let k13 = Graph::star(3);
        let seq = k13.degree_histogram();
        assert!(card_fits(&seq, 3, &DegreeHistogram::from_values([0, 0, 0])));
        assert!(card_fits(&seq, 1, &DegreeHistogram::from_values([1, 1, 2])));
        assert!(!card_fits(&seq, 1, &DegreeHistogram::from_values([0, 2, 2])));
    }

    #[test]
    fn general_path_on_matching() {
        let g = Graph::matching(10_000);
        let d = remove_cards(&deck(&g), 1, &RemovalPolicy::Random, 8).unwrap();
        let s = reconstruct_degree_sequence(
            &d,
            DegSeqOptions {
                d: Some(1),
                force_general: true,
            },
        )
        .unwrap();
        assert_eq!(s.path, DegSeqPath::General);
        assert_eq!(s.histogram, g.degree_histogram());
        assert!(s.in_regime);
        assert!(!s.consistency_failed);
        assert_eq!(s.t0, Some(2500));
        assert!(s.max_rounding_distance < Rational::new(1, 2));
        let json = s.to_json();
        assert_eq!(json["histogram"], serde_json::json!([[1, 10_000]]));
        assert_eq!(json["flags"]["path"], "general");
    }

    #[test]
    fn general_path_out_of_regime_is_flagged() {
        let g = Graph::matching(400);
        let d = remove_cards(&deck(&g), 5, &RemovalPolicy::Random, 1).unwrap();
        let s = reconstruct_degree_sequence(
            &d,
            DegSeqOptions {
                d: Some(1),
                force_general: false,
            },
        )
        .unwrap();
        assert!(!s.in_regime);
        assert_eq!(s.histogram, g.degree_histogram());
    }
}
