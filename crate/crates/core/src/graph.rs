//! Simple undirected graphs and the edge-list interchange format.

use std::fmt::Write as _;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::histogram::DegreeHistogram;

pub type Vertex = usize;

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so degree lookups are O(1) and adjacency
/// tests are a binary search. Graphs are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("multi-edge at vertex {v}")));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter().map(Vec::len)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Exact average degree `2m/n`; zero for the null graph.
    pub fn average_degree(&self) -> Ratio<i128> {
        if self.n() == 0 {
            return Ratio::from_integer(0);
        }
        Ratio::new(2 * self.m as i128, self.n() as i128)
    }

    /// `d_t` for every degree `t` present.
    pub fn degree_histogram(&self) -> DegreeHistogram {
        DegreeHistogram::from_values(self.degrees().map(|d| d as u64))
    }

    /// The card `G - v`: vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Graph> {
        if v >= self.n() {
            return Err(Error::Input(format!(
                "vertex {v} out of range for {} vertices",
                self.n()
            )));
        }
        let relabel = |u: Vertex| if u > v { u - 1 } else { u };
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, list)| list.iter().filter(|&&w| w != v).map(|&w| relabel(w)).collect())
            .collect();
        Ok(Graph {
            adj,
            m: self.m - self.degree(v),
        })
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::Input("permutation length differs from order".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Input("not a permutation".into()));
            }
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|list| list.iter().map(|&w| w + shift).collect()));
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    /// Connected components, each as a sorted vertex list, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj: Vec<Vec<Vertex>> = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    // Named families.

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph edges are valid")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    /// `K_{a,b}` with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("biclique edges are valid")
    }

    /// `floor(n/2)` disjoint edges `(2i, 2i+1)`.
    pub fn matching(n: usize) -> Graph {
        Graph::from_edges(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1))).expect("matching edges are valid")
    }

    // Edge-list text format.

    /// Serializes as `n m` followed by one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * (self.m + 1));
        writeln!(out, "{} {}", self.n(), self.m).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(header, 1)?;
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let (u, v) = parse_pair(line, idx + 1)?;
            if u >= v {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("edge `{u} {v}` must satisfy u < v"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header declares {m} edges but {} were listed", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let err = |message: String| Error::Parse { line: line_no, message };
    let mut it = line.split_ascii_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(err(format!("expected two integers, got `{line}`")));
    };
    let a = a.parse().map_err(|_| err(format!("bad integer `{a}`")))?;
    let b = b.parse().map_err(|_| err(format!("bad integer `{b}`")))?;
    Ok((a, b))
}
