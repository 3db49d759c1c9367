//! Seeded generators for graphs with average degree at most `d`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::clique::clique_profile;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::histogram::DegreeHistogram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Matching,
    Cycle,
    RandomForest,
    ErdosRenyiCapped,
    DisjointTriangles,
    StarUnion,
    FromFile,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenParams {
    /// `random_forest`: edges kept from the spanning tree. Default `min(n-1, floor(dn/2))`.
    pub edges: Option<u64>,
    /// `erdos_renyi_capped`: edge probability before trimming. Default `d/(n-1)`.
    pub p: Option<f64>,
    /// `star_union`: leaves per star; `n` must be a multiple of `leaves + 1`.
    pub leaves: Option<usize>,
    /// `from_file`: edge-list path.
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub d: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub params: GenParams,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, d: u64, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            d,
            seed,
            params: GenParams::default(),
        }
    }
}

/// Statistics recorded at generation time for later comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    pub n: u64,
    pub m: u64,
    pub histogram: DegreeHistogram,
    pub triangle_count: u64,
}

impl GroundTruth {
    pub fn of(g: &Graph) -> Self {
        GroundTruth {
            n: g.n() as u64,
            m: g.m() as u64,
            histogram: g.degree_histogram(),
            triangle_count: clique_profile(g, 3).total,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let histogram: Vec<[u64; 2]> = self.histogram.iter().map(|(t, c)| [t, c]).collect();
        json!({
            "n": self.n,
            "m": self.m,
            "histogram": histogram,
            "triangle_count": self.triangle_count,
        })
    }
}

pub fn generate(spec: &GenSpec) -> Result<(Graph, GroundTruth)> {
    if spec.n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let d = spec.d;
    let cap = d as u128 * n as u128 / 2;
    let g = match spec.family {
        Family::Matching => {
            if !n.is_multiple_of(2) {
                return Err(Error::Input(format!("a perfect matching needs even n, got {n}")));
            }
            Graph::matching(n)
        }
        Family::Cycle => {
            if n < 3 {
                return Err(Error::Input(format!("a cycle needs n >= 3, got {n}")));
            }
            Graph::cycle(n)
        }
        Family::DisjointTriangles => {
            if !n.is_multiple_of(3) {
                return Err(Error::Input(format!("n = {n} is not divisible by 3")));
            }
            (0..n / 3).fold(Graph::empty(0), |acc, _| acc.disjoint_union(&Graph::complete(3)))
        }
        Family::StarUnion => {
            let leaves = spec
                .params
                .leaves
                .ok_or_else(|| Error::Input("star_union needs params.leaves".into()))?;
            if leaves == 0 || !n.is_multiple_of(leaves + 1) {
                return Err(Error::Input(format!(
                    "n = {n} is not a multiple of leaves + 1 = {}",
                    leaves + 1
                )));
            }
            (0..n / (leaves + 1)).fold(Graph::empty(0), |acc, _| acc.disjoint_union(&Graph::star(leaves)))
        }
        Family::RandomForest => {
            let target = spec.params.edges.unwrap_or((n as u64 - 1).min(cap as u64));
            if target > n as u64 - 1 {
                return Err(Error::Input(format!(
                    "a forest on {n} vertices has at most {} edges",
                    n - 1
                )));
            }
            random_forest(n, target as usize, &mut rng)
        }
        Family::ErdosRenyiCapped => {
            let p = spec
                .params
                .p
                .unwrap_or(if n > 1 { d as f64 / (n - 1) as f64 } else { 0.0 });
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Input(format!("edge probability {p} outside [0, 1]")));
            }
            trim_to_cap(&erdos_renyi(n, p, &mut rng), cap as usize)
        }
        Family::FromFile => {
            let path = spec
                .params
                .path
                .as_ref()
                .ok_or_else(|| Error::Input("from_file needs params.path".into()))?;
            let g = Graph::parse_edge_list(&std::fs::read_to_string(path)?)?;
            if g.n() != n {
                return Err(Error::Input(format!("file has {} vertices, spec says {n}", g.n())));
            }
            g
        }
    };
    if g.m() as u128 > cap {
        return Err(Error::Input(format!(
            "{:?} on {n} vertices has {} edges, above the cap d·n/2 = {cap}",
            spec.family,
            g.m()
        )));
    }
    let truth = GroundTruth::of(&g);
    Ok((g, truth))
}

/// A random recursive tree (vertex `i` joins a uniform earlier vertex),
/// keeping a uniform `edges`-subset of its edges.
fn random_forest(n: usize, edges: usize, rng: &mut ChaCha8Rng) -> Graph {
    let tree: Vec<(Vertex, Vertex)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    let kept = index::sample(rng, tree.len(), edges);
    Graph::from_edges(n, kept.iter().map(|i| tree[i])).expect("tree edges are simple")
}

/// `G(n, p)` by geometric skipping over the pairs `(u, v)`, `u < v`, in lexicographic order.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let total = n as u64 * (n as u64).saturating_sub(1) / 2;
    let mut picked = Vec::new();
    if p >= 1.0 {
        picked.extend(0..total);
    } else if p > 0.0 {
        let log_q = (1.0 - p).ln();
        let mut idx: u64 = 0;
        loop {
            let u: f64 = rng.random();
            let skip = ((1.0 - u).ln() / log_q).floor();
            if !skip.is_finite() || skip >= (total - idx) as f64 {
                break;
            }
            idx += skip as u64;
            picked.push(idx);
            idx += 1;
            if idx >= total {
                break;
            }
        }
    }
    // Row u holds the pairs (u, u+1..n), n-1-u of them.
    let mut edges = Vec::with_capacity(picked.len());
    let (mut row, mut start) = (0u64, 0u64);
    for i in picked {
        while i >= start + (n as u64 - 1 - row) {
            start += n as u64 - 1 - row;
            row += 1;
        }
        edges.push((row as usize, (row + 1 + i - start) as usize));
    }
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

/// Removes edges until at most `cap` remain. Each step takes the maximum-degree
/// vertex with smallest id and drops its edge to the highest-degree neighbor
/// (smallest id on ties).
fn trim_to_cap(g: &Graph, cap: usize) -> Graph {
    if g.m() <= cap {
        return g.clone();
    }
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut by_degree: BTreeSet<(std::cmp::Reverse<usize>, Vertex)> =
        (0..n).map(|v| (std::cmp::Reverse(adj[v].len()), v)).collect();
    let mut m = g.m();
    while m > cap {
        let &(_, u) = by_degree.first().expect("edges remain");
        let w = *adj[u]
            .iter()
            .min_by_key(|&&w| (std::cmp::Reverse(adj[w].len()), w))
            .expect("max-degree vertex has a neighbor");
        for x in [u, w] {
            by_degree.remove(&(std::cmp::Reverse(adj[x].len()), x));
        }
        adj[u].remove(&w);
        adj[w].remove(&u);
        for x in [u, w] {
            by_degree.insert((std::cmp::Reverse(adj[x].len()), x));
        }
        m -= 1;
    }
    let edges = (0..n).flat_map(|u| adj[u].range(u + 1..).map(move |&v| (u, v)).collect::<Vec<_>>());
    Graph::from_edges(n, edges).expect("subgraph of a simple graph")
}
