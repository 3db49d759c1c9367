use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use deckrecon_core::deck::{full_deck, remove_cards, DeckOptions, PartialDeck, SubcardOptions};
use deckrecon_core::experiment::{run_experiment, ExperimentConfig, PolicyKind};
use deckrecon_core::generators::{generate, Family, GenParams, GenSpec};
use deckrecon_core::recon::{
    infer_degree_bound, reconstruct_clique_count_with, reconstruct_degree_sequence, reconstruct_edge_count,
    regime_check, CliqueReference, DegSeqOptions, ReconTrace, Theorem,
};
use deckrecon_core::suite::{verify_suite, Level};
use deckrecon_core::verification::{
    biclique_pair, common_cards, densified_pair, star_triple_pair, verify_card_degree_identity, CounterexamplePair,
};
use deckrecon_core::{Error, Graph, RemovalPolicy};
use serde_json::{json, Value};

use crate::{
    Cli, Command, CounterexampleCommand, DeckCommand, ExperimentCommand, FamilyArg, Format, Global, LevelArg,
    OracleCommand, OutOfRegime, ReconArgs, ReconCommand, ReferenceArg, Violation,
};

pub fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Gen(args) => {
            let spec = GenSpec {
                family: family(args.family),
                n: args.n,
                d: args.d,
                seed: args.seed,
                params: GenParams {
                    edges: args.edges,
                    p: args.p,
                    leaves: args.leaves,
                    path: args.input,
                },
            };
            let (graph, truth) = generate(&spec)?;
            match &g.output {
                Some(path) => {
                    write(path, &graph.to_edge_list())?;
                    let mut sidecar = path.as_os_str().to_owned();
                    sidecar.push(".truth.json");
                    write(Path::new(&sidecar), &pretty(&truth.to_json()))?;
                }
                None => print!("{}", graph.to_edge_list()),
            }
            Ok(())
        }
        Command::Deck(DeckCommand::Build(args)) => {
            let graph = read_graph(&args.graph)?;
            let subcards = args.d.map(|d| SubcardOptions {
                depth: args.subcard_depth,
                ..SubcardOptions::for_degree_bound(d)
            });
            let deck = full_deck(
                &graph,
                &DeckOptions {
                    cliques: args.cliques,
                    subcards,
                },
            )?;
            put(g, &deck.to_text())
        }
        Command::Deck(DeckCommand::Remove(args)) => {
            let deck = read_deck(&args.deck)?;
            let policy = match args.policy.parse::<PolicyKind>()? {
                PolicyKind::Random => RemovalPolicy::Random,
                PolicyKind::MaxEdgesFirst => RemovalPolicy::MaxEdgesFirst,
                PolicyKind::MinEdgesFirst => RemovalPolicy::MinEdgesFirst,
                PolicyKind::TargetDegrees => RemovalPolicy::TargetDegrees {
                    degrees: args.target_degrees,
                    true_edge_count: args
                        .true_edges
                        .ok_or_else(|| Error::Input("target_degrees needs --true-edges".into()))?,
                },
            };
            put(g, &remove_cards(&deck, args.k, &policy, args.seed)?.to_text())
        }
        Command::Recon(cmd) => recon(g, cmd),
        Command::Oracle(OracleCommand::Cc { g: a, h: b }) => {
            let result = common_cards(&read_graph(&a)?, &read_graph(&b)?)?;
            let text = format!(
                "cc = {} of {} cards ({} shared classes)\n",
                result.cc,
                result.n,
                result.shared.len()
            );
            emit(g, &result.to_json(), &text)
        }
        Command::Oracle(OracleCommand::Identity { graph }) => {
            let graph = read_graph(&graph)?;
            if !verify_card_degree_identity(&graph) {
                bail!(Violation("card degree-count identity fails".into()));
            }
            emit(
                g,
                &json!({ "identity": true, "n": graph.n() }),
                "identity holds for every t\n",
            )
        }
        Command::Counterexample(cmd) => {
            let (pair, dir) = match cmd {
                CounterexampleCommand::Star(a) => (star_triple_pair(a.p)?, a.dir),
                CounterexampleCommand::Biclique(a) => (biclique_pair(a.p)?, a.dir),
                CounterexampleCommand::Densified { pair, filler } => {
                    let filler = match filler {
                        Some(path) => read_graph(&path)?,
                        None => Graph::empty(3 * pair.p + 4),
                    };
                    (densified_pair(pair.p, &filler)?, pair.dir)
                }
            };
            counterexample(g, &pair, dir.as_deref())
        }
        Command::Experiment(ExperimentCommand::Run { config }) => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = ExperimentConfig::parse(&text)?;
            let report = run_experiment(&cfg)?;
            let global = Global {
                output: g.output.clone().or(cfg.output.clone()),
                ..g.clone()
            };
            let body = match g.format {
                Format::Json => pretty(&report.to_json()),
                Format::Text => report.to_text(),
                Format::Csv => report.to_csv(),
            };
            put(&global, &body)
        }
        Command::Verify(args) => {
            let level = match args.level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let report = verify_suite(level);
            match g.format {
                Format::Json => put(g, &pretty(&serde_json::to_value(&report)?))?,
                _ => put(g, &report.to_text())?,
            }
            if let Some(path) = args.deck {
                let deck = read_deck(&path)?;
                println!(
                    "deck file {}: ok ({} cards, k = {})",
                    path.display(),
                    deck.len(),
                    deck.k()
                );
            }
            if !report.all_passed() {
                bail!(Violation("self-check suite reported failures".into()));
            }
            Ok(())
        }
        Command::Thresholds(args) => {
            let rows: Vec<_> = Theorem::ALL
                .iter()
                .map(|&t| regime_check(t, args.n, args.d, 0, args.r))
                .collect();
            let mut text = format!("{:<16} {:>10}\n", "theorem", "max_k");
            let mut csv = String::from("theorem,max_k\n");
            for r in &rows {
                writeln!(text, "{:<16} {:>10}", r.theorem.name(), r.max_k)?;
                writeln!(csv, "{},{}", r.theorem.name(), r.max_k)?;
            }
            let json: Value = rows
                .iter()
                .map(|r| (r.theorem.name().to_string(), json!(r.max_k)))
                .collect::<serde_json::Map<_, _>>()
                .into();
            match g.format {
                Format::Csv => put(g, &csv),
                _ => emit(g, &json, &text),
            }
        }
    }
}

fn recon(g: &Global, cmd: ReconCommand) -> Result<()> {
    let bound = |args: &ReconArgs, deck: &PartialDeck| -> Result<u64> {
        Ok(match args.d {
            Some(d) => d,
            None => infer_degree_bound(deck)?,
        })
    };
    let (json, text, in_regime) = match cmd {
        ReconCommand::Edges(args) => {
            let deck = read_deck(&args.deck)?;
            let trace = reconstruct_edge_count(&deck, bound(&args, &deck)?)?;
            (trace.to_json(), trace_text("edges", &trace), trace.in_regime)
        }
        ReconCommand::Cliques(args) => {
            let deck = read_deck(&args.base.deck)?;
            let reference = match args.reference {
                ReferenceArg::MaxEdges => CliqueReference::MaxEdges,
                ReferenceArg::MaxCliques => CliqueReference::MaxCliques,
            };
            let trace = reconstruct_clique_count_with(&deck, bound(&args.base, &deck)?, args.r, reference)?;
            (
                trace.to_json(),
                trace_text(&format!("{}-cliques", args.r), &trace),
                trace.in_regime,
            )
        }
        ReconCommand::Degseq(args) => {
            let deck = read_deck(&args.base.deck)?;
            let state = reconstruct_degree_sequence(
                &deck,
                DegSeqOptions {
                    d: args.base.d,
                    force_general: args.force_general,
                },
            )?;
            let hist = if state.histogram.is_empty() {
                "-".to_string()
            } else {
                state.histogram.to_string()
            };
            let text = format!(
                "degrees {hist}\nm = {}, d = {}, t0 = {}, path {:?}, {}\n",
                state.m,
                state.d,
                state.t0.map_or("-".to_string(), |t| t.to_string()),
                state.path,
                regime_word(state.in_regime)
            );
            (state.to_json(), text, state.in_regime)
        }
    };
    emit(g, &json, &text)?;
    if g.strict && !in_regime {
        bail!(OutOfRegime("parameters exceed the guaranteed range".into()));
    }
    Ok(())
}

fn regime_word(in_regime: bool) -> &'static str {
    if in_regime {
        "in regime"
    } else {
        "OUT OF REGIME"
    }
}

fn trace_text(what: &str, t: &ReconTrace) -> String {
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    format!(
        "{what} = {}\nn = {}, k = {}, d = {}, t = {}, j = {}, {}\n",
        t.value,
        t.n,
        t.k,
        t.d,
        opt(t.t),
        opt(t.j),
        regime_word(t.in_regime)
    )
}

fn counterexample(g: &Global, pair: &CounterexamplePair, dir: Option<&Path>) -> Result<()> {
    if let Some(dir) = dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write(&dir.join("g.txt"), &pair.g.to_edge_list())?;
        write(&dir.join("h.txt"), &pair.h.to_edge_list())?;
    }
    let cc = common_cards(&pair.g, &pair.h)?;
    let json = json!({
        "family": pair.family,
        "p": pair.p,
        "n": pair.g.n(),
        "m_g": pair.g.m(),
        "m_h": pair.h.m(),
        "cc": cc.cc,
        "predicted_cc": pair.predicted_cc,
        "cc_fraction": cc.cc as f64 / pair.g.n() as f64,
    });
    let text = format!(
        "{:?} p = {}: n = {}, edges {} vs {}, cc = {} ({:.3} of the deck)\n",
        pair.family,
        pair.p,
        pair.g.n(),
        pair.g.m(),
        pair.h.m(),
        cc.cc,
        cc.cc as f64 / pair.g.n() as f64
    );
    emit(g, &json, &text)?;
    if pair.predicted_cc.is_some_and(|want| want != cc.cc) {
        bail!(Violation(format!(
            "cc = {} but the family predicts {:?}",
            cc.cc, pair.predicted_cc
        )));
    }
    Ok(())
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::Matching => Family::Matching,
        FamilyArg::Cycle => Family::Cycle,
        FamilyArg::RandomForest => Family::RandomForest,
        FamilyArg::ErdosRenyiCapped => Family::ErdosRenyiCapped,
        FamilyArg::DisjointTriangles => Family::DisjointTriangles,
        FamilyArg::StarUnion => Family::StarUnion,
        FamilyArg::FromFile => Family::FromFile,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(Error::from)
        .with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    Graph::parse_edge_list(&text).with_context(|| format!("in {}", path.display()))
}

fn read_deck(path: &Path) -> Result<PartialDeck> {
    let text = read(path)?;
    PartialDeck::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body)
        .map_err(Error::from)
        .with_context(|| format!("writing {}", path.display()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn put(g: &Global, body: &str) -> Result<()> {
    match &g.output {
        Some(path) => write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit(g: &Global, json: &Value, text: &str) -> Result<()> {
    match g.format {
        Format::Json => put(g, &pretty(json)),
        Format::Text => put(g, text),
        Format::Csv => Err(Error::Input("csv output is available for experiment reports and thresholds".into()).into()),
    }
}
