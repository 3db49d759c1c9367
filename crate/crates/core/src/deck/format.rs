//! Line-oriented deck files.
//!
//! ```text
//! deck <n> <k>
//! card <edge_count> <t:count,...>
//! cliques <r> <t:count,...> <total>
//! subcard <t:count,...>
//! ```
//!
//! `cliques` and `subcard` lines belong to the nearest preceding `card`.
//! Histograms list ascending `t`; an empty histogram is written `-`.

use std::fmt::Write as _;

use super::{CardCliques, CardStats, PartialDeck};
use crate::error::{Error, Result};
use crate::histogram::DegreeHistogram;

pub(super) fn write_deck(deck: &PartialDeck) -> String {
    let mut out = String::new();
    writeln!(out, "deck {} {}", deck.n(), deck.k()).unwrap();
    for card in deck.cards() {
        writeln!(out, "card {} {}", card.edge_count, card.degrees).unwrap();
        if let Some(c) = &card.cliques {
            writeln!(out, "cliques {} {} {}", c.r, c.counts, c.total).unwrap();
        }
        for sub in &card.sub_cards {
            writeln!(out, "subcard {sub}").unwrap();
        }
    }
    out
}

pub(super) fn parse_deck(text: &str) -> Result<PartialDeck> {
    let mut header: Option<(usize, usize)> = None;
    let mut cards: Vec<CardStats> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        let int = |s: &str| -> Result<u64> { s.parse().map_err(|_| err(format!("bad integer `{s}`"))) };
        let histogram = |s: &str| DegreeHistogram::parse_sparse(s).map_err(|e| err(e.to_string()));

        match (fields[0], header) {
            ("deck", None) => {
                let [_, n, k] = fields[..] else {
                    return Err(err("expected `deck n k`".into()));
                };
                header = Some((int(n)? as usize, int(k)? as usize));
            }
            ("deck", Some(_)) => return Err(err("duplicate deck header".into())),
            (_, None) => return Err(err("file must start with `deck n k`".into())),
            ("card", Some((n, _))) => {
                let [_, edges, hist] = fields[..] else {
                    return Err(err("expected `card <edge_count> <histogram>`".into()));
                };
                cards.push(CardStats {
                    vertex_count: n.saturating_sub(1) as u64,
                    edge_count: int(edges)?,
                    degrees: histogram(hist)?,
                    cliques: None,
                    sub_cards: Vec::new(),
                });
            }
            ("cliques", Some(_)) => {
                let [_, r, hist, total] = fields[..] else {
                    return Err(err("expected `cliques <r> <histogram> <total>`".into()));
                };
                let card = cards
                    .last_mut()
                    .ok_or_else(|| err("`cliques` line before any card".into()))?;
                if card.cliques.is_some() || !card.sub_cards.is_empty() {
                    return Err(err("`cliques` must directly follow its card".into()));
                }
                card.cliques = Some(CardCliques {
                    r: int(r)? as usize,
                    counts: histogram(hist)?,
                    total: int(total)?,
                });
            }
            ("subcard", Some(_)) => {
                let [_, hist] = fields[..] else {
                    return Err(err("expected `subcard <histogram>`".into()));
                };
                let card = cards
                    .last_mut()
                    .ok_or_else(|| err("`subcard` line before any card".into()))?;
                card.sub_cards.push(histogram(hist)?);
            }
            (other, Some(_)) => return Err(err(format!("unknown record `{other}`"))),
        }
    }

    let (n, k) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing `deck n k` header".into(),
    })?;
    if cards.len() + k != n {
        return Err(Error::Parse {
            line: 1,
            message: format!("header says n = {n}, k = {k} but {} cards follow", cards.len()),
        });
    }
    PartialDeck::new(n, cards)
}
