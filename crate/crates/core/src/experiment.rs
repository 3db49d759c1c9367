//! Reproducible reconstruction experiments driven by a TOML config.
//!
//! ```toml
//! tasks = ["edges", "cliques(3)", "degseq"]
//! d_override = 2          # optional
//! output = "report.json"  # optional
//!
//! [gen]
//! family = "random_forest"
//! n = 140
//! d = 2
//! seed = 1
//!
//! [removal]
//! policy = "random"       # or max_edges_first, min_edges_first, target_degrees
//! k = 3                   # or k_fraction = 0.02
//! trials = 200
//! seed = 9
//! ```
//!
//! Trial `i` generates with seed `gen.seed + i` and removes with seed
//! `removal.seed + i`. Reconstruction sees only the partial deck.

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::clique::clique_profile;
use crate::deck::{full_deck, remove_cards, DeckOptions, PartialDeck, RemovalPolicy, SubcardOptions};
use crate::error::{Error, Result};
use crate::generators::{generate, GenSpec, GroundTruth};
use crate::graph::Graph;
use crate::histogram::DegreeHistogram;
use crate::recon::{reconstruct_clique_count, reconstruct_degree_sequence, reconstruct_edge_count, DegSeqOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Task {
    Edges,
    Cliques(usize),
    Degseq,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Edges => f.write_str("edges"),
            Task::Cliques(r) => write!(f, "cliques({r})"),
            Task::Degseq => f.write_str("degseq"),
        }
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "edges" => Ok(Task::Edges),
            "degseq" => Ok(Task::Degseq),
            "cliques" => Ok(Task::Cliques(3)),
            other => other
                .strip_prefix("cliques(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .filter(|&r| r >= 2)
                .map(Task::Cliques)
                .ok_or_else(|| Error::Input(format!("unknown task `{other}`"))),
        }
    }
}

impl TryFrom<String> for Task {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Task> for String {
    fn from(t: Task) -> String {
        t.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    Random,
    MaxEdgesFirst,
    MinEdgesFirst,
    /// Removes cards of the listed deleted-vertex degrees; defaults to the
    /// graph's most common degree repeated `k` times.
    TargetDegrees,
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(PolicyKind::Random),
            "max_edges_first" => Ok(PolicyKind::MaxEdgesFirst),
            "min_edges_first" => Ok(PolicyKind::MinEdgesFirst),
            "target_degrees" => Ok(PolicyKind::TargetDegrees),
            other => Err(Error::Input(format!("unknown removal policy `{other}`"))),
        }
    }
}

impl PolicyKind {
    /// Resolves to a concrete policy. The target-degree variant reads the
    /// graph, which is fine because removal happens on the simulation side.
    pub fn resolve(self, g: &Graph, k: usize, targets: Option<&[u64]>) -> Result<RemovalPolicy> {
        Ok(match self {
            PolicyKind::Random => RemovalPolicy::Random,
            PolicyKind::MaxEdgesFirst => RemovalPolicy::MaxEdgesFirst,
            PolicyKind::MinEdgesFirst => RemovalPolicy::MinEdgesFirst,
            PolicyKind::TargetDegrees => {
                let degrees = match targets {
                    Some(t) => t.to_vec(),
                    None => {
                        let h = g.degree_histogram();
                        let mode = h
                            .iter()
                            .max_by_key(|&(t, c)| (c, std::cmp::Reverse(t)))
                            .map_or(0, |(t, _)| t);
                        vec![mode; k]
                    }
                };
                RemovalPolicy::TargetDegrees {
                    degrees,
                    true_edge_count: g.m() as u64,
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemovalConfig {
    pub policy: PolicyKind,
    pub k: Option<usize>,
    /// Resolved as `floor(k_fraction · n)`.
    pub k_fraction: Option<f64>,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub target_degrees: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

impl RemovalConfig {
    pub fn resolve_k(&self, n: usize) -> Result<usize> {
        let k = match (self.k, self.k_fraction) {
            (Some(k), None) => k,
            (None, Some(f)) if (0.0..=1.0).contains(&f) => (f * n as f64).floor() as usize,
            (None, Some(f)) => return Err(Error::Input(format!("k_fraction {f} outside [0, 1]"))),
            (None, None) => return Err(Error::Input("removal needs k or k_fraction".into())),
            (Some(_), Some(_)) => return Err(Error::Input("give k or k_fraction, not both".into())),
        };
        if k > n {
            return Err(Error::Input(format!("k = {k} exceeds n = {n}")));
        }
        Ok(k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub tasks: Vec<Task>,
    pub d_override: Option<u64>,
    pub output: Option<PathBuf>,
    pub gen: GenSpec,
    pub removal: RemovalConfig,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map(|s| text[..s.start].lines().count().max(1)).unwrap_or(1),
            message: e.message().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.removal.trials == 0 {
            return Err(Error::Input("trials must be at least 1".into()));
        }
        if self.tasks.is_empty() {
            return Err(Error::Input("no tasks configured".into()));
        }
        self.removal.resolve_k(self.gen.n)?;
        Ok(())
    }

    /// SHA-256 of the config re-serialized as TOML, so formatting does not matter.
    pub fn hash(&self) -> String {
        let canonical = toml::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn degree_bound(&self) -> u64 {
        self.d_override.unwrap_or(self.gen.d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub task: Task,
    pub graph_seed: u64,
    pub removal_seed: u64,
    pub value: Value,
    pub ground_truth: Value,
    pub exact: bool,
    pub in_regime: bool,
    /// `|value - truth|`, or the L1 distance between histograms.
    pub error: Option<u64>,
    pub failure: Option<String>,
    pub trace: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskAggregate {
    pub task: Task,
    pub trials: usize,
    pub exact: usize,
    pub in_regime: usize,
    pub success_rate: f64,
    pub max_error: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub success_rate: f64,
    pub max_error: Option<u64>,
    pub runtime_ms: u128,
    pub per_task: Vec<TaskAggregate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub gen_seed: u64,
    pub removal_seed: u64,
    pub trials: usize,
    pub k: usize,
    pub policy: PolicyKind,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconReport {
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
    pub provenance: Provenance,
}

/// What a reconstruction task returns; built from the partial deck alone.
struct TaskOutput {
    value: Value,
    in_regime: bool,
    trace: Value,
}

fn run_task(task: Task, deck: &PartialDeck, d: u64) -> Result<TaskOutput> {
    match task {
        Task::Edges => {
            let t = reconstruct_edge_count(deck, d)?;
            Ok(TaskOutput {
                value: json!(t.value),
                in_regime: t.in_regime,
                trace: t.to_json(),
            })
        }
        Task::Cliques(r) => {
            let t = reconstruct_clique_count(deck, d, r)?;
            Ok(TaskOutput {
                value: json!(t.value),
                in_regime: t.in_regime,
                trace: t.to_json(),
            })
        }
        Task::Degseq => {
            let s = reconstruct_degree_sequence(
                deck,
                DegSeqOptions {
                    d: Some(d),
                    force_general: false,
                },
            )?;
            Ok(TaskOutput {
                value: histogram_json(&s.histogram),
                in_regime: s.in_regime,
                trace: s.to_json(),
            })
        }
    }
}

fn histogram_json(h: &DegreeHistogram) -> Value {
    json!(h.iter().map(|(t, c)| [t, c]).collect::<Vec<_>>())
}

fn histogram_l1(a: &DegreeHistogram, b: &DegreeHistogram) -> u64 {
    let keys: std::collections::BTreeSet<u64> = a.iter().chain(b.iter()).map(|(t, _)| t).collect();
    keys.into_iter().map(|t| a.get(t).abs_diff(b.get(t))).sum()
}

/// Scores a task output against the graph. This is the only place ground truth is read.
fn compare(task: Task, g: &Graph, truth: &GroundTruth, out: &TaskOutput) -> (Value, bool, u64) {
    match task {
        Task::Edges | Task::Cliques(_) => {
            let want = match task {
                Task::Edges => truth.m,
                Task::Cliques(3) => truth.triangle_count,
                Task::Cliques(r) => clique_profile(g, r).total,
                Task::Degseq => unreachable!(),
            };
            let got = out.value.as_u64().unwrap_or(u64::MAX);
            (json!(want), got == want, got.abs_diff(want))
        }
        Task::Degseq => {
            let got: DegreeHistogram = out
                .value
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(|p| Some((p[0].as_u64()?, p[1].as_u64()?)))
                .collect();
            let err = histogram_l1(&got, &truth.histogram);
            (histogram_json(&truth.histogram), err == 0, err)
        }
    }
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Vec<TrialRecord> {
    let graph_seed = cfg.gen.seed.wrapping_add(trial as u64);
    let removal_seed = cfg.removal.seed.wrapping_add(trial as u64);
    let d = cfg.degree_bound();
    let fail = |task: Task, msg: String| TrialRecord {
        trial,
        task,
        graph_seed,
        removal_seed,
        value: Value::Null,
        ground_truth: Value::Null,
        exact: false,
        in_regime: false,
        error: None,
        failure: Some(msg),
        trace: Value::Null,
    };

    let prepared = (|| -> Result<(Graph, GroundTruth, PartialDeck)> {
        let spec = GenSpec {
            seed: graph_seed,
            ..cfg.gen.clone()
        };
        let (g, truth) = generate(&spec)?;
        let k = cfg.removal.resolve_k(g.n())?;
        let cliques = cfg.tasks.iter().find_map(|t| match t {
            Task::Cliques(r) => Some(*r),
            _ => None,
        });
        let subcards = cfg.tasks.contains(&Task::Degseq).then(|| SubcardOptions {
            depth: k + 1,
            ..SubcardOptions::for_degree_bound(d)
        });
        let deck = full_deck(&g, &DeckOptions { cliques, subcards })?;
        let policy = cfg
            .removal
            .policy
            .resolve(&g, k, cfg.removal.target_degrees.as_deref())?;
        let partial = remove_cards(&deck, k, &policy, removal_seed)?;
        Ok((g, truth, partial))
    })();
    let (g, truth, deck) = match prepared {
        Ok(x) => x,
        Err(e) => return cfg.tasks.iter().map(|&t| fail(t, e.to_string())).collect(),
    };

    cfg.tasks
        .iter()
        .map(|&task| match run_task(task, &deck, d) {
            Ok(out) => {
                let (ground_truth, exact, err) = compare(task, &g, &truth, &out);
                TrialRecord {
                    trial,
                    task,
                    graph_seed,
                    removal_seed,
                    value: out.value,
                    ground_truth,
                    exact,
                    in_regime: out.in_regime,
                    error: Some(err),
                    failure: None,
                    trace: out.trace,
                }
            }
            Err(e) => fail(task, e.to_string()),
        })
        .collect()
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ReconReport> {
    cfg.validate()?;
    let start = Instant::now();
    let records: Vec<TrialRecord> = (0..cfg.removal.trials)
        .into_par_iter()
        .map(|trial| run_trial(cfg, trial))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let rate = |exact: usize, total: usize| if total == 0 { 0.0 } else { exact as f64 / total as f64 };
    let per_task: Vec<TaskAggregate> = cfg
        .tasks
        .iter()
        .map(|&task| {
            let rs: Vec<&TrialRecord> = records.iter().filter(|r| r.task == task).collect();
            let exact = rs.iter().filter(|r| r.exact).count();
            TaskAggregate {
                task,
                trials: rs.len(),
                exact,
                in_regime: rs.iter().filter(|r| r.in_regime).count(),
                success_rate: rate(exact, rs.len()),
                max_error: rs.iter().filter_map(|r| r.error).max(),
            }
        })
        .collect();
    let exact = records.iter().filter(|r| r.exact).count();
    Ok(ReconReport {
        aggregate: Aggregate {
            success_rate: rate(exact, records.len()),
            max_error: records.iter().filter_map(|r| r.error).max(),
            runtime_ms: start.elapsed().as_millis(),
            per_task,
        },
        provenance: Provenance {
            config_hash: cfg.hash(),
            gen_seed: cfg.gen.seed,
            removal_seed: cfg.removal.seed,
            trials: cfg.removal.trials,
            k: cfg.removal.resolve_k(cfg.gen.n)?,
            policy: cfg.removal.policy,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        records,
    })
}

impl ReconReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Aligned per-task summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<12} {:>7} {:>7} {:>9} {:>9} {:>9}",
            "task", "trials", "exact", "in_regime", "success", "max_err"
        )
        .unwrap();
        for t in &self.aggregate.per_task {
            writeln!(
                out,
                "{:<12} {:>7} {:>7} {:>9} {:>9.4} {:>9}",
                t.task.to_string(),
                t.trials,
                t.exact,
                t.in_regime,
                t.success_rate,
                t.max_error.map_or("-".to_string(), |e| e.to_string())
            )
            .unwrap();
        }
        let failures = self.records.iter().filter(|r| r.failure.is_some()).count();
        writeln!(
            out,
            "config {} | k = {} | policy {:?} | {} failed trials | {} ms",
            &self.provenance.config_hash[..12],
            self.provenance.k,
            self.provenance.policy,
            failures,
            self.aggregate.runtime_ms
        )
        .unwrap();
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("task,trials,exact,in_regime,success_rate,max_error\n");
        for t in &self.aggregate.per_task {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                t.task,
                t.trials,
                t.exact,
                t.in_regime,
                t.success_rate,
                t.max_error.map_or(String::new(), |e| e.to_string())
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MATCHING: &str = r#"
tasks = ["edges", "degseq"]

[gen]
family = "matching"
n = 100
d = 1

[removal]
policy = "random"
k = 4
trials = 20
seed = 3
"#;

    #[test]
    fn tasks_parse() {
        assert_eq!("cliques(4)".parse::<Task>().unwrap(), Task::Cliques(4));
        assert_eq!("cliques".parse::<Task>().unwrap(), Task::Cliques(3));
        assert!("cliques(1)".parse::<Task>().is_err());
        assert!("triangles".parse::<Task>().is_err());
    }

    #[test]
    fn config_parses_and_validates() {
        let cfg = ExperimentConfig::parse(MATCHING).unwrap();
        assert_eq!(cfg.tasks, vec![Task::Edges, Task::Degseq]);
        assert_eq!(cfg.removal.resolve_k(100).unwrap(), 4);
        let frac = MATCHING.replace("k = 4", "k_fraction = 0.049");
        assert_eq!(
            ExperimentConfig::parse(&frac).unwrap().removal.resolve_k(100).unwrap(),
            4
        );
        let zero = MATCHING.replace("trials = 20", "trials = 0");
        assert!(ExperimentConfig::parse(&zero).is_err());
        let bad = MATCHING.replace("policy = \"random\"", "policy = \"sideways\"");
        assert!(matches!(ExperimentConfig::parse(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = ExperimentConfig::parse(MATCHING).unwrap();
        let b = ExperimentConfig::parse(&MATCHING.replace("k = 4", "k   =   4  # four")).unwrap();
        assert_eq!(a.hash(), b.hash());
    }

    #[test]
    fn matching_experiment() {
        let cfg = ExperimentConfig::parse(MATCHING).unwrap();
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.records.len(), 40);
        let edges = &report.aggregate.per_task[0];
        assert_eq!(edges.success_rate, 1.0);
        assert_eq!(edges.in_regime, 20);
        let mut again = run_experiment(&cfg).unwrap();
        again.aggregate.runtime_ms = report.aggregate.runtime_ms;
        assert_eq!(again, report);
        assert!(report.to_text().contains("edges"));
        assert!(report.to_csv().starts_with("task,trials"));
    }

    #[test]
    fn trial_errors_are_recorded() {
        let text = MATCHING.replace("n = 100", "n = 101");
        let cfg = ExperimentConfig::parse(&text).unwrap();
        let report = run_experiment(&cfg).unwrap();
        assert!(report.records.iter().all(|r| r.failure.is_some() && !r.exact));
        assert_eq!(report.aggregate.success_rate, 0.0);
    }
}
