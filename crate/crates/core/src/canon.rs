//! Canonical codes for small graphs.
//!
//! A code is built per connected component by colour refinement followed by
//! an individualize-and-refine search over the cells of the coarsest
//! equitable partition. The search keeps the lexicographically largest
//! adjacency string over all explored leaves. Two prunings keep symmetric
//! graphs tractable: twins in the branching cell are tried once, and so are
//! candidates in the same orbit of the automorphisms found so far (restricted
//! to those fixing the current individualized prefix). Component codes are
//! sorted and concatenated, so isomorphic graphs get byte-identical codes.
//!
//! Only reconstruction oracles and counterexample checks use this; the
//! reconstruction algorithms themselves never compare cards up to isomorphism.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CANON_LIMIT: usize = 64;

/// Byte string equal for two graphs exactly when they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    canonical_code_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_code_with_limit(g: &Graph, limit: usize) -> Result<CanonicalCode> {
    let limit = limit.min(64);
    if g.n() > limit {
        return Err(Error::UnsupportedSize { n: g.n(), limit });
    }
    let mut parts: Vec<Vec<u8>> = g
        .components()
        .into_iter()
        .map(|vs| {
            let comp = g.induced(&vs);
            let mut part = (vs.len() as u16).to_le_bytes().to_vec();
            part.extend(canon_connected(&comp));
            part
        })
        .collect();
    parts.sort_unstable();
    let mut bytes = (g.n() as u16).to_le_bytes().to_vec();
    for p in parts {
        bytes.extend(p);
    }
    Ok(CanonicalCode(bytes))
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

fn canon_connected(g: &Graph) -> Vec<u8> {
    let n = g.n();
    if n <= 1 {
        return Vec::new();
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
        .collect();
    let mut search = Search {
        n,
        adj,
        best: None,
        automorphisms: Vec::new(),
    };
    let colors = search.refine(vec![0; n]);
    let mut prefix = Vec::new();
    search.descend(colors, &mut prefix);
    search.best.expect("search visits at least one leaf").0
}

impl Search {
    /// Colour refinement until the partition stops splitting. Colours are
    /// renumbered by sorted signature so the result is labeling-invariant.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut cells = count_distinct(&colors);
        loop {
            let sigs: Vec<Vec<u32>> = (0..self.n)
                .map(|v| {
                    let mut s = vec![colors[v]];
                    let mut nb: Vec<u32> = bits(self.adj[v]).map(|w| colors[w]).collect();
                    nb.sort_unstable();
                    s.extend(nb);
                    s
                })
                .collect();
            let mut sorted = sigs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            colors = sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect();
            if sorted.len() == cells {
                return colors;
            }
            cells = sorted.len();
        }
    }

    fn descend(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let cells = count_distinct(&colors);
        if cells == self.n {
            self.leaf(&colors);
            return;
        }
        // Smallest non-singleton cell, lowest colour first.
        let mut sizes = vec![0usize; cells];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..cells)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .unwrap() as u32;
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();

        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            if !tried.is_empty() && self.same_orbit(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            let individualized: Vec<u32> = (0..self.n).map(|w| 2 * colors[w] + u32::from(w != v)).collect();
            let next = self.refine(compress(&individualized));
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let mut order = vec![0; self.n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let code = self.code_for(&order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => match code.cmp(best) {
                std::cmp::Ordering::Greater => self.best = Some((code, order)),
                std::cmp::Ordering::Equal => {
                    // Both orders give the same adjacency string, so mapping one onto the other is an automorphism.
                    let mut gamma = vec![0; self.n];
                    for (i, &v) in best_order.iter().enumerate() {
                        gamma[v] = order[i];
                    }
                    if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                        self.automorphisms.push(gamma);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }

    fn code_for(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let nbits = n * (n - 1) / 2;
        let mut out = vec![0u8; nbits.div_ceil(8)];
        let mut k = 0;
        for i in 0..n {
            let row = self.adj[order[i]];
            for &w in &order[i + 1..] {
                if row >> w & 1 == 1 {
                    out[k / 8] |= 0x80 >> (k % 8);
                }
                k += 1;
            }
        }
        out
    }

    /// Same neighborhood apart from each other; swapping them is an automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        let mask = !(1u64 << u | 1u64 << v);
        self.adj[u] & mask == self.adj[v] & mask
    }

    /// Whether `v` shares an orbit with some tried vertex under the known
    /// automorphisms that fix every individualized vertex.
    fn same_orbit(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in gens {
            for (a, &b) in g.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (word != 0).then(|| {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            b
        })
    })
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn compress(colors: &[u32]) -> Vec<u32> {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    colors.iter().map(|c| sorted.binary_search(c).unwrap() as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, [(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn path_differs_from_triangle() {
        assert_ne!(
            canonical_code(&Graph::path(3)).unwrap(),
            canonical_code(&Graph::complete(3)).unwrap()
        );
    }

    #[test]
    fn order_is_part_of_the_code() {
        assert_ne!(
            canonical_code(&Graph::empty(3)).unwrap(),
            canonical_code(&Graph::empty(4)).unwrap()
        );
        assert_ne!(
            canonical_code(&Graph::empty(0)).unwrap(),
            canonical_code(&Graph::empty(1)).unwrap()
        );
    }

    #[test]
    fn size_limit() {
        assert_eq!(
            canonical_code(&Graph::empty(65)),
            Err(Error::UnsupportedSize { n: 65, limit: 64 })
        );
        assert!(canonical_code_with_limit(&Graph::empty(10), 8).is_err());
        assert!(canonical_code(&Graph::cycle(64)).is_ok());
    }

    #[test]
    fn symmetric_graphs_finish() {
        // Highly symmetric inputs that would explode without pruning.
        let spider = {
            let legs = 10;
            let mut edges = Vec::new();
            for l in 0..legs {
                let a = 1 + 2 * l;
                edges.push((0, a));
                edges.push((a, a + 1));
            }
            Graph::from_edges(1 + 2 * legs, edges).unwrap()
        };
        let _ = canonical_code(&spider).unwrap();
        let _ = canonical_code(&Graph::complete_bipartite(8, 9)).unwrap();
        let _ = canonical_code(&Graph::cycle(40)).unwrap();
        // Petersen graph.
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let a = canonical_code(&petersen).unwrap();
        let b = canonical_code(&petersen.relabel(&[3, 9, 0, 5, 1, 7, 2, 8, 4, 6]).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hex_encoding() {
        let c = canonical_code(&Graph::complete(2)).unwrap();
        assert_eq!(c.to_hex(), "0200020080");
    }
}
