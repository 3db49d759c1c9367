//! Per-vertex r-clique counts ("clique degrees").

use crate::graph::{Graph, Vertex};
use crate::histogram::DegreeHistogram;

/// Clique degrees `c(v)` for a fixed clique size `r`, their histogram
/// (`c_t`) and the total number of r-cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueProfile {
    pub r: usize,
    pub per_vertex: Vec<u64>,
    pub counts: DegreeHistogram,
    pub total: u64,
}

impl CliqueProfile {
    /// `c_{<t}`.
    pub fn prefix_below(&self, t: u64) -> u64 {
        self.counts.prefix_below(t)
    }
}

/// Counts r-cliques through every vertex.
///
/// Each clique is enumerated once by orienting edges along a degeneracy
/// ordering, so sparse inputs cost roughly `O(m · δ^{r-2})`.
pub fn clique_profile(g: &Graph, r: usize) -> CliqueProfile {
    assert!(r >= 2, "clique size must be at least 2");
    let n = g.n();
    let rank = degeneracy_rank(g);
    let out: Vec<Vec<Vertex>> = (0..n)
        .map(|u| {
            let mut list: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| rank[w] > rank[u]).collect();
            list.sort_unstable();
            list
        })
        .collect();

    let mut per_vertex = vec![0u64; n];
    let mut total = 0u64;
    let mut stack = Vec::with_capacity(r);
    for u in 0..n {
        stack.push(u);
        extend(&out, &out[u], r, &mut stack, &mut |clique| {
            total += 1;
            for &v in clique {
                per_vertex[v] += 1;
            }
        });
        stack.pop();
    }
    let counts = DegreeHistogram::from_values(per_vertex.iter().copied());
    CliqueProfile {
        r,
        per_vertex,
        counts,
        total,
    }
}

/// Grows `stack` into r-cliques using candidates that are out-neighbors of every member.
fn extend<F: FnMut(&[Vertex])>(
    out: &[Vec<Vertex>],
    candidates: &[Vertex],
    r: usize,
    stack: &mut Vec<Vertex>,
    emit: &mut F,
) {
    if stack.len() == r {
        emit(stack);
        return;
    }
    for &w in candidates {
        let next = intersect_sorted(candidates, &out[w]);
        if stack.len() + 1 + next.len() < r {
            continue;
        }
        stack.push(w);
        extend(out, &next, r, stack, emit);
        stack.pop();
    }
}

/// Visits every set of `size` mutually adjacent vertices drawn from `pool`
/// (a sorted vertex list), in increasing vertex order.
pub(crate) fn for_each_clique_in<F: FnMut(&[Vertex])>(g: &Graph, pool: &[Vertex], size: usize, emit: &mut F) {
    fn go<F: FnMut(&[Vertex])>(g: &Graph, candidates: &[Vertex], size: usize, stack: &mut Vec<Vertex>, emit: &mut F) {
        if stack.len() == size {
            emit(stack);
            return;
        }
        for (i, &w) in candidates.iter().enumerate() {
            let next = intersect_sorted(&candidates[i + 1..], g.neighbors(w));
            stack.push(w);
            go(g, &next, size, stack, emit);
            stack.pop();
        }
    }
    let mut stack = Vec::with_capacity(size);
    go(g, pool, size, &mut stack, emit);
}

pub(crate) fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Position of each vertex in a smallest-last (degeneracy) ordering.
fn degeneracy_rank(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let max_deg = g.max_degree();
    let mut deg: Vec<usize> = g.degrees().collect();
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut rank = vec![0; n];
    let mut cursor: usize = 0;
    for position in 0..n {
        let v = loop {
            // A removal lowers neighbor degrees by one, so the minimum can only drop by one.
            cursor = cursor.saturating_sub(1);
            while buckets[cursor].is_empty() {
                cursor += 1;
            }
            let v = buckets[cursor].pop().unwrap();
            if !removed[v] && deg[v] == cursor {
                break v;
            }
        };
        removed[v] = true;
        rank[v] = position;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph, r: usize) -> (Vec<u64>, u64) {
        let n = g.n();
        let mut per = vec![0; n];
        let mut total = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let clique = vs
                .iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)));
            if clique {
                total += 1;
                for &v in &vs {
                    per[v] += 1;
                }
            }
        }
        (per, total)
    }

    #[test]
    fn small_examples() {
        let p = clique_profile(&Graph::complete(4), 3);
        assert_eq!(p.per_vertex, vec![3; 4]);
        assert_eq!(p.total, 4);

        let p = clique_profile(&Graph::cycle(5), 3);
        assert_eq!(p.per_vertex, vec![0; 5]);
        assert_eq!(p.total, 0);
        assert_eq!(p.counts.get(0), 5);

        let p = clique_profile(&Graph::complete(5), 3);
        assert_eq!(p.per_vertex, vec![6; 5]);
        assert_eq!(p.total, 10);
    }

    #[test]
    fn r2_matches_degrees() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let p = clique_profile(&g, 2);
        assert_eq!(p.per_vertex, g.degrees().map(|d| d as u64).collect::<Vec<_>>());
        assert_eq!(p.total, g.m() as u64);
        assert_eq!(p.prefix_below(1), 1);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(1..=10);
            let p: f64 = rng.random_range(0.2..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            for r in 2..=5 {
                let prof = clique_profile(&g, r);
                let (per, total) = brute_force(&g, r);
                assert_eq!(prof.per_vertex, per);
                assert_eq!(prof.total, total);
                assert_eq!(prof.per_vertex.iter().sum::<u64>(), r as u64 * total);
            }
        }
    }

    #[test]
    fn cliques_in_pool() {
        let g = Graph::complete(5);
        let mut seen = Vec::new();
        for_each_clique_in(&g, &[1, 2, 3, 4], 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(|c| c[0] < c[1]));
    }
}
