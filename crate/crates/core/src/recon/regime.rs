//! Parameter ranges in which each reconstruction guarantee applies.

use serde::{Deserialize, Serialize};

use crate::rational::floor_div;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    EdgeCount,
    CliqueCount,
    DegreeSequence,
    Recognition,
    EstimateSt,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::EdgeCount,
        Theorem::CliqueCount,
        Theorem::DegreeSequence,
        Theorem::Recognition,
        Theorem::EstimateSt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::EdgeCount => "edge_count",
            Theorem::CliqueCount => "clique_count",
            Theorem::DegreeSequence => "degree_sequence",
            Theorem::Recognition => "recognition",
            Theorem::EstimateSt => "estimate_st",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeCheck {
    pub theorem: Theorem,
    pub n: u64,
    pub d: u64,
    pub k: u64,
    pub r: Option<usize>,
    /// Largest number of missing cards allowed; negative when no deck qualifies.
    pub max_k: i64,
    pub satisfied: bool,
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) because acc = C(n, i).
        match acc.checked_mul((n - i) as u128) {
            Some(x) => acc = x / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Evaluates the missing-card threshold for `theorem` with integer arithmetic.
///
/// `d` is the integer average-degree bound; values below 1 are treated as 1.
/// `r` is only read for [`Theorem::CliqueCount`] and defaults to 2 there.
pub fn regime_check(theorem: Theorem, n: u64, d: u64, k: u64, r: Option<usize>) -> RegimeCheck {
    let d = d.max(1) as i128;
    let ni = n as i128;
    let (max_k, side) = match theorem {
        // n/(4d+6) - d - 5
        Theorem::EdgeCount => {
            let a = 4 * d + 6;
            (floor_div(ni - (d + 5) * a, a), n >= 3)
        }
        // ((n/2 - 1) / (1 + C(2(d+1), r-1))) - d - 5
        Theorem::CliqueCount => {
            let r = r.unwrap_or(2).max(2) as u64;
            let c = binomial(2 * (d as u64 + 1), r - 1);
            let max_k = match i128::try_from(c).ok().and_then(|c| c.checked_add(1)) {
                Some(b) => floor_div(ni - 2 - 2 * (d + 5) * b, 2 * b),
                None => -(d + 6),
            };
            (max_k, n >= 3)
        }
        // n / (10^4 d^3)
        Theorem::DegreeSequence => (floor_div(ni, 10_000 * d * d * d), n >= 3),
        // k <= n/4 with n >= 8
        Theorem::Recognition => (floor_div(ni, 4), n >= 8),
        // k <= n/(1100 d^2) with n >= 10^4 d^3
        Theorem::EstimateSt => (floor_div(ni, 1100 * d * d), ni >= 10_000 * d * d * d),
    };
    let max_k = max_k.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
    RegimeCheck {
        theorem,
        n,
        d: d as u64,
        k,
        r: (theorem == Theorem::CliqueCount).then(|| r.unwrap_or(2)),
        max_k,
        satisfied: side && (k as i128) <= max_k as i128,
    }
}
