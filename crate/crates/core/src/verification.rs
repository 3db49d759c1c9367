//! Brute-force oracles and extremal pairs.
//!
//! Nothing here calls into `deck` or `recon`: cards are built with
//! [`Graph::delete_vertex`] and compared by canonical code, so agreement with
//! the reconstruction code is independent evidence.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::histogram::DegreeHistogram;

/// Degree histograms of every card, in vertex order.
pub fn naive_deck_histograms(g: &Graph) -> Vec<DegreeHistogram> {
    (0..g.n())
        .into_par_iter()
        .map(|v| g.delete_vertex(v).expect("vertex in range").degree_histogram())
        .collect()
}

/// Edge counts of every card, in vertex order.
pub fn naive_deck_edges(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.delete_vertex(v).expect("vertex in range").m() as u64)
        .collect()
}

/// Canonical codes of all cards with multiplicities.
pub fn deck_codes(g: &Graph) -> Result<BTreeMap<CanonicalCode, u64>> {
    let codes = (0..g.n())
        .into_par_iter()
        .map(|v| canonical_code(&g.delete_vertex(v)?))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = BTreeMap::new();
    for c in codes {
        *counts.entry(c).or_insert(0) += 1;
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCResult {
    pub cc: u64,
    pub n: usize,
    /// Shared card codes with multiplicity `min(mult_G, mult_H)`.
    pub shared: Vec<(CanonicalCode, u64)>,
}

impl CCResult {
    pub fn to_json(&self) -> serde_json::Value {
        let shared: Vec<serde_json::Value> = self
            .shared
            .iter()
            .map(|(code, mult)| json!([code.to_hex(), mult]))
            .collect();
        json!({ "cc": self.cc, "n": self.n, "shared": shared })
    }
}

/// Number of cards the decks of `g` and `h` have in common.
pub fn common_cards(g: &Graph, h: &Graph) -> Result<CCResult> {
    if g.n() != h.n() {
        return Err(Error::Input(format!("orders differ: {} vs {}", g.n(), h.n())));
    }
    let (dg, dh) = (deck_codes(g)?, deck_codes(h)?);
    let shared: Vec<(CanonicalCode, u64)> = dg
        .iter()
        .filter_map(|(code, &a)| dh.get(code).map(|&b| (code.clone(), a.min(b))))
        .collect();
    Ok(CCResult {
        cc: shared.iter().map(|(_, m)| m).sum(),
        n: g.n(),
        shared,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    StarTriple,
    Biclique,
    Densified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexamplePair {
    pub g: Graph,
    pub h: Graph,
    pub family: Family,
    pub p: usize,
    /// Common-card count the family is known to have, when fixed.
    pub predicted_cc: Option<u64>,
}

fn stars(sizes: &[usize]) -> Graph {
    sizes
        .iter()
        .fold(Graph::empty(0), |acc, &s| acc.disjoint_union(&Graph::star(s)))
}

fn check_p(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::Input(format!("family parameter p must be at least 2, got {p}")));
    }
    Ok(())
}

/// `K_{1,p+1} ⊔ K_{1,p+1} ⊔ K_{1,p-1}` against `K_{1,p+1} ⊔ K_{1,p} ⊔ K_{1,p}`.
///
/// Same order and edge count, but different numbers of vertices of degree
/// `p+1`. Deleting a leaf of the right star on either side gives
/// `K_{1,p+1} ⊔ K_{1,p} ⊔ K_{1,p-1}`, so they share `2p` cards.
pub fn star_triple_pair(p: usize) -> Result<CounterexamplePair> {
    check_p(p)?;
    Ok(CounterexamplePair {
        g: stars(&[p + 1, p + 1, p - 1]),
        h: stars(&[p + 1, p, p]),
        family: Family::StarTriple,
        p,
        predicted_cc: Some(2 * p as u64),
    })
}

/// `K_{2,p} ⊔ K_{1,p}` against `K_{2,p+1} ⊔ K_{1,p-1}`, whose edge counts differ by one.
pub fn biclique_pair(p: usize) -> Result<CounterexamplePair> {
    check_p(p)?;
    Ok(CounterexamplePair {
        g: Graph::complete_bipartite(2, p).disjoint_union(&Graph::star(p)),
        h: Graph::complete_bipartite(2, p + 1).disjoint_union(&Graph::star(p - 1)),
        family: Family::Biclique,
        p,
        predicted_cc: Some(p as u64),
    })
}

/// The star-triple pair with the same `filler` added to both sides, which
/// raises the average degree while keeping shared cards shared.
pub fn densified_pair(p: usize, filler: &Graph) -> Result<CounterexamplePair> {
    let base = star_triple_pair(p)?;
    if filler.n() != 3 * p + 4 {
        return Err(Error::Input(format!(
            "filler must have {} vertices, has {}",
            3 * p + 4,
            filler.n()
        )));
    }
    Ok(CounterexamplePair {
        g: base.g.disjoint_union(filler),
        h: base.h.disjoint_union(filler),
        family: Family::Densified,
        p,
        predicted_cc: None,
    })
}

/// Checks `Σ_i d_t(G - v_i) = (n-1-t)·d_t(G) + (t+1)·d_{t+1}(G)` for all `t ∈ [0, n-1]`.
pub fn verify_card_degree_identity(g: &Graph) -> bool {
    let n = g.n() as u64;
    let whole = g.degree_histogram();
    let cards = naive_deck_histograms(g);
    (0..n).all(|t| {
        let lhs: u64 = cards.iter().map(|h| h.get(t)).sum();
        lhs == (n - 1 - t) * whole.get(t) + (t + 1) * whole.get(t + 1)
    })
}

/// With average degree at most `d`: at least `n/2` vertices have degree at
/// most `2d`, and at least `n/(d+1)` have degree at most `d`.
pub fn verify_low_degree_counts(g: &Graph, d: u64) -> Result<bool> {
    let n = g.n() as u64;
    if 2 * g.m() as u64 > d * n {
        return Err(Error::Input(format!(
            "average degree 2·{}/{} exceeds d = {d}",
            g.m(),
            n
        )));
    }
    let at_most = |bound: u64| g.degrees().filter(|&x| x as u64 <= bound).count() as u64;
    Ok(2 * at_most(2 * d) >= n && (d + 1) * at_most(d) >= n)
}
