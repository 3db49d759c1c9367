//! Sparse degree histograms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse map from a per-vertex value `t` (a degree or a clique degree) to the
/// number of vertices `d_t` having that value.
///
/// Zero counts are never stored, so two histograms compare equal exactly when
/// they describe the same multiset of values.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DegreeHistogram {
    counts: BTreeMap<u64, u64>,
}

impl DegreeHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a histogram from a list of per-vertex values.
    pub fn from_values<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut h = Self::new();
        for v in values {
            h.add(v, 1);
        }
        h
    }

    /// `d_t`.
    pub fn get(&self, t: u64) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// `d_{<t}`: number of vertices with value strictly below `t`.
    pub fn prefix_below(&self, t: u64) -> u64 {
        self.counts.range(..t).map(|(_, c)| c).sum()
    }

    /// Number of vertices with value strictly above `t`.
    pub fn count_above(&self, t: u64) -> u64 {
        use std::ops::Bound::{Excluded, Unbounded};
        self.counts.range((Excluded(t), Unbounded)).map(|(_, c)| c).sum()
    }

    /// Total number of vertices, `Σ_t d_t`.
    pub fn vertex_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ_t t·d_t`; for a degree histogram this is twice the edge count.
    pub fn weighted_sum(&self) -> u128 {
        self.counts.iter().map(|(&t, &c)| t as u128 * c as u128).sum()
    }

    pub fn add(&mut self, t: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(t).or_insert(0) += count;
        }
    }

    /// Removes `count` vertices of value `t`.
    ///
    /// Panics if fewer than `count` are present; callers only remove values
    /// they have observed.
    pub fn remove(&mut self, t: u64, count: u64) {
        if count == 0 {
            return;
        }
        let entry = self
            .counts
            .get_mut(&t)
            .unwrap_or_else(|| panic!("histogram has no entry for {t}"));
        assert!(*entry >= count, "histogram underflow at {t}");
        *entry -= count;
        if *entry == 0 {
            self.counts.remove(&t);
        }
    }

    /// Moves one vertex from value `from` to value `to`.
    pub fn shift(&mut self, from: u64, to: u64) {
        self.remove(from, 1);
        self.add(to, 1);
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Nonzero `(t, d_t)` pairs in ascending `t`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&t, &c)| (t, c))
    }

    /// Number of distinct values present.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn max_value(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// True when the histogram has at least one vertex of value `t`.
    pub fn contains(&self, t: u64) -> bool {
        self.counts.contains_key(&t)
    }

    /// Parses the sparse `t:count,t:count` form; `-` denotes the empty histogram.
    pub fn parse_sparse(s: &str) -> Result<Self> {
        let mut h = Self::new();
        if s == "-" {
            return Ok(h);
        }
        let mut last: Option<u64> = None;
        for item in s.split(',') {
            let (t, c) = item
                .split_once(':')
                .ok_or_else(|| Error::Input(format!("histogram entry `{item}` is not t:count")))?;
            let t: u64 = t
                .parse()
                .map_err(|_| Error::Input(format!("bad histogram key `{t}`")))?;
            let c: u64 = c
                .parse()
                .map_err(|_| Error::Input(format!("bad histogram count `{c}`")))?;
            if last.is_some_and(|l| l >= t) {
                return Err(Error::Input(format!(
                    "histogram keys must be strictly ascending (saw {t})"
                )));
            }
            if c == 0 {
                return Err(Error::Input(format!("histogram count for {t} is zero")));
            }
            last = Some(t);
            h.add(t, c);
        }
        Ok(h)
    }
}

/// Sparse `t:count,...` form, ascending `t`; `-` when empty.
impl fmt::Display for DegreeHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("-");
        }
        for (i, (t, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}:{c}")?;
        }
        Ok(())
    }
}

impl FromIterator<(u64, u64)> for DegreeHistogram {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut h = Self::new();
        for (t, c) in iter {
            h.add(t, c);
        }
        h
    }
}
