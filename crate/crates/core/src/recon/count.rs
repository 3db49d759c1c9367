//! Edge-count and clique-count reconstruction from a partial deck.

use serde::{Deserialize, Serialize};

use super::regime::{binomial, regime_check, Theorem};
use crate::deck::{CardCliques, CardStats, PartialDeck};
use crate::error::{Error, Result};
use crate::rational::{self, ceil_div, Rational};

/// Kelly-style estimate of `m` from the given cards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEstimate {
    pub n: u64,
    pub k: u64,
    #[serde(with = "rational::serde_str")]
    pub m_tilde: Rational,
    #[serde(with = "rational::serde_str")]
    pub d_tilde: Rational,
    /// `k(n-1)/(n-2-k)`, the largest possible overshoot of `m_tilde`.
    #[serde(with = "rational::serde_str")]
    pub slack_bound: Rational,
}

/// `m̃ = Σ_given |E(G_i)| / (n - 2 - k)`.
///
/// Each edge `uv` survives on every card except `G-u` and `G-v`, so the given
/// cards hold `(n-2-k)·m + Σ_missing d(v_i)` edges. The estimate therefore
/// overshoots by `Σ_missing d(v_i)/(n-2-k)`, which lies in `[0, slack_bound]`.
pub fn estimate_edges(deck: &PartialDeck) -> Result<EdgeEstimate> {
    let n = deck.n() as i128;
    let k = deck.k() as i128;
    let denom = n - 2 - k;
    if denom <= 0 {
        return Err(Error::Regime(format!(
            "edge estimate needs n - 2 - k > 0 (n = {n}, k = {k})"
        )));
    }
    let m_tilde = Rational::new(deck.total_edges() as i128, denom);
    Ok(EdgeEstimate {
        n: n as u64,
        k: k as u64,
        d_tilde: m_tilde * Rational::new(2, n),
        m_tilde,
        slack_bound: Rational::new(k * (n - 1), denom),
    })
}

/// The estimate together with the guarantee `d* <= d̃ < d* + 1`, which needs
/// `n >= 8` and `k <= n/4`.
pub fn recognize_avg_degree(deck: &PartialDeck) -> Result<EdgeEstimate> {
    let check = regime_check(Theorem::Recognition, deck.n() as u64, 1, deck.k() as u64, None);
    if !check.satisfied {
        return Err(Error::Regime(format!(
            "average-degree recognition needs n >= 8 and 4k <= n (n = {}, k = {})",
            deck.n(),
            deck.k()
        )));
    }
    estimate_edges(deck)
}

/// Smallest integer guaranteed to bound the average degree: `floor(d̃) + 1`.
pub fn infer_degree_bound(deck: &PartialDeck) -> Result<u64> {
    let est = recognize_avg_degree(deck)?;
    Ok(est.d_tilde.floor().to_integer() as u64 + 1)
}

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// No cards missing: exact by summing over the deck.
    FullDeck,
    /// Located a card whose deleted vertex has known degree `t`.
    SortedCard,
}

/// Record of one reconstruction run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconTrace {
    pub theorem: Theorem,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub r: Option<usize>,
    pub t: Option<u64>,
    pub j: Option<u64>,
    pub value: u64,
    pub in_regime: bool,
    #[serde(with = "rational::serde_str::option")]
    pub slack_bound: Option<Rational>,
    #[serde(skip)]
    pub method: Option<CountMethod>,
    /// Count read off the chosen `(j+2)`-nd card.
    #[serde(skip)]
    pub chosen_card_value: Option<u64>,
    /// `d_t` (or `c_t`) of the reference card at the selected `t`.
    #[serde(skip)]
    pub reference_bucket: Option<u64>,
}

impl ReconTrace {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serializes")
    }
}

/// Cross-check that `d` is compatible with the deck: any graph with this
/// partial deck has average degree below `d̃`, which must not exceed `d + 1`.
/// `None` when recognition does not apply to this deck.
fn degree_bound_consistent(deck: &PartialDeck, d: u64) -> Option<bool> {
    recognize_avg_degree(deck)
        .ok()
        .map(|est| est.d_tilde <= Rational::from_integer(d as i128 + 1))
}

fn slack(deck: &PartialDeck) -> Option<Rational> {
    estimate_edges(deck).ok().map(|e| e.slack_bound)
}

/// Reconstructs `m` from a deck of a graph with average degree at most `d`.
///
/// With cards sorted by edge count (descending), the top card comes from a
/// vertex of degree at most `d + 1`, so its degree counts track those of `G`
/// within one card's worth of error. Some degree `t <= 2(d+1)` is then so
/// common on that card that the `(j+2)`-nd sorted card, `j = d_{<t}(G_1)`,
/// must come from a vertex of degree exactly `t`, giving `m = |E(G_{j+2})| + t`.
///
/// Outside the guaranteed range the same steps still run and the trace is
/// marked `in_regime = false`.
pub fn reconstruct_edge_count(deck: &PartialDeck, d: u64) -> Result<ReconTrace> {
    let n = deck.n() as u64;
    let k = deck.k() as u64;
    if n < 3 {
        return Err(Error::Regime(format!(
            "edge count is not determined by the deck for n = {n}"
        )));
    }
    let base = ReconTrace {
        theorem: Theorem::EdgeCount,
        n,
        k,
        d,
        r: None,
        t: None,
        j: None,
        value: 0,
        in_regime: true,
        slack_bound: slack(deck),
        method: None,
        chosen_card_value: None,
        reference_bucket: None,
    };
    if k == 0 {
        let total = deck.total_edges();
        let denom = n as u128 - 2;
        if !total.is_multiple_of(denom) {
            return Err(Error::Input(format!(
                "card edge counts sum to {total}, not a multiple of n - 2 = {denom}"
            )));
        }
        return Ok(ReconTrace {
            value: (total / denom) as u64,
            method: Some(CountMethod::FullDeck),
            ..base
        });
    }

    let regime = regime_check(Theorem::EdgeCount, n, d, k, None);
    let in_regime = regime.satisfied && degree_bound_consistent(deck, d) != Some(false);
    let d = d.max(1);
    let order = deck.edge_order();
    let reference = &deck.cards()[order[0]];

    let threshold = ceil_div(n as i128 - 2, 2 * (2 * d as i128 + 3)) as u64;
    let t = (0..=2 * (d + 1))
        .find(|&t| reference.degrees.get(t) >= threshold)
        .ok_or_else(|| {
            Error::Regime(format!(
                "no degree t <= {} occurs {threshold} times on the top card; the average-degree bound d = {d} is too small",
                2 * (d + 1)
            ))
        })?;
    let bucket = reference.degrees.get(t);
    if in_regime {
        debug_assert!(bucket >= k + d + 4, "selected bucket below k + d + 4 in regime");
    }
    let j = reference.degrees.prefix_below(t);
    let chosen = pick(deck, &order, j)?;

    Ok(ReconTrace {
        t: Some(t),
        j: Some(j),
        value: chosen.edge_count + t,
        in_regime,
        method: Some(CountMethod::SortedCard),
        chosen_card_value: Some(chosen.edge_count),
        reference_bucket: Some(bucket),
        ..base
    })
}

/// The `(j+2)`-nd card of `order` (1-based).
fn pick<'a>(deck: &'a PartialDeck, order: &[usize], j: u64) -> Result<&'a CardStats> {
    let idx = j as usize + 1;
    order.get(idx).map(|&i| &deck.cards()[i]).ok_or_else(|| {
        Error::Regime(format!(
            "needs card number {} in sorted order but only {} cards are given",
            idx + 1,
            order.len()
        ))
    })
}

/// Which card supplies the clique-degree bucket in clique-count reconstruction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueReference {
    /// The card with most edges (its deleted vertex has low degree).
    #[default]
    MaxEdges,
    /// The card with most r-cliques; a single ordering throughout.
    MaxCliques,
}

/// Reconstructs the number of r-cliques; see [`reconstruct_clique_count_with`].
pub fn reconstruct_clique_count(deck: &PartialDeck, d: u64, r: usize) -> Result<ReconTrace> {
    reconstruct_clique_count_with(deck, d, r, CliqueReference::MaxEdges)
}

/// Clique-degree analogue of [`reconstruct_edge_count`]: pick the smallest `t`
/// with `c_t(R) >= ceil((n/2 - 1) / (1 + C(2(d+1), r-1)))` on the reference
/// card `R`, set `j = c_{<t}(R)`, and read the `(j+2)`-nd card in descending
/// clique-count order; its clique count plus `t` is the answer.
pub fn reconstruct_clique_count_with(
    deck: &PartialDeck,
    d: u64,
    r: usize,
    reference: CliqueReference,
) -> Result<ReconTrace> {
    if r < 2 {
        return Err(Error::Input("clique size must be at least 2".into()));
    }
    for card in deck.cards() {
        match &card.cliques {
            Some(c) if c.r == r => {}
            Some(c) => {
                return Err(Error::Input(format!(
                    "cards carry {}-clique counts, not {r}-clique counts",
                    c.r
                )))
            }
            None => {
                return Err(Error::Input(
                    "cards carry no clique counts; rebuild the deck with cliques".into(),
                ))
            }
        }
    }
    fn cliques(c: &CardStats) -> &CardCliques {
        c.cliques.as_ref().expect("checked above")
    }
    let n = deck.n() as u64;
    let k = deck.k() as u64;
    if n <= r as u64 {
        return Err(Error::Regime(format!("clique count needs n > r (n = {n}, r = {r})")));
    }
    let base = ReconTrace {
        theorem: Theorem::CliqueCount,
        n,
        k,
        d,
        r: Some(r),
        t: None,
        j: None,
        value: 0,
        in_regime: true,
        slack_bound: None,
        method: None,
        chosen_card_value: None,
        reference_bucket: None,
    };
    if k == 0 {
        // Each r-clique survives on the n - r cards that avoid it.
        let total: u128 = deck.cards().iter().map(|c| cliques(c).total as u128).sum();
        let denom = n as u128 - r as u128;
        if !total.is_multiple_of(denom) {
            return Err(Error::Input(format!(
                "card clique counts sum to {total}, not a multiple of n - r = {denom}"
            )));
        }
        return Ok(ReconTrace {
            value: (total / denom) as u64,
            method: Some(CountMethod::FullDeck),
            ..base
        });
    }

    let regime = regime_check(Theorem::CliqueCount, n, d, k, Some(r));
    let in_regime = regime.satisfied && degree_bound_consistent(deck, d) != Some(false);
    let d = d.max(1);

    let mut clique_order: Vec<usize> = (0..deck.len()).collect();
    clique_order.sort_by_key(|&i| std::cmp::Reverse(cliques(&deck.cards()[i]).total));
    let ref_idx = match reference {
        CliqueReference::MaxEdges => deck.edge_order()[0],
        CliqueReference::MaxCliques => clique_order[0],
    };
    let ref_counts = &cliques(&deck.cards()[ref_idx]).counts;

    let span = binomial(2 * (d + 1), r as u64 - 1);
    let span_i = i128::try_from(span)
        .ok()
        .filter(|&s| s < i128::MAX / 4)
        .ok_or_else(|| Error::Regime("clique-degree range overflows".into()))?;
    let threshold = ceil_div(n as i128 - 2, 2 * (1 + span_i)) as u64;
    // Walk the card's buckets rather than every t up to C(2(d+1), r-1).
    let t = ref_counts
        .iter()
        .take_while(|&(t, _)| (t as u128) <= span)
        .find(|&(_, c)| c >= threshold)
        .map(|(t, _)| t)
        .ok_or_else(|| {
            Error::Regime(format!(
                "no clique degree t <= {span} occurs {threshold} times on the reference card"
            ))
        })?;
    let bucket = ref_counts.get(t);
    let j = ref_counts.prefix_below(t);
    let chosen = cliques(pick(deck, &clique_order, j)?).total;

    Ok(ReconTrace {
        t: Some(t),
        j: Some(j),
        value: chosen + t,
        in_regime,
        method: Some(CountMethod::SortedCard),
        chosen_card_value: Some(chosen),
        reference_bucket: Some(bucket),
        ..base
    })
}
