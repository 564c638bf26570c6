//! Pipeline commands. Each command reads raw inputs and/or earlier
//! artifacts, writes its own artifacts plus a manifest into
//! `<output_dir>/<command>/`, and never emits a raw account id.

pub mod filtering;
pub mod graphing;
pub mod modeling;
pub mod report;
pub mod topic_cmd;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use anonet::ingest::{AccountId, AccountProfile, Pseudonym};
use anonet::netgraph::{build_graph, FollowGraph};

use crate::context::{read_text, unresolved_endpoint_count, RunContext};
use crate::CliError;

/// One filter/label decision row (JSON Lines).
#[derive(Debug, Serialize, Deserialize)]
pub struct DecisionRow {
    pub pseudonym: Pseudonym,
    pub label: String,
    pub rule_trace: Vec<String>,
}

/// Persisted snowball expansion, pseudonymized.
#[derive(Debug, Serialize, Deserialize)]
pub struct ExpansionArtifact {
    pub seeds: Vec<Pseudonym>,
    pub stages: usize,
    pub frontier_sizes: Vec<usize>,
    pub accepted_by_stage: Vec<Vec<Pseudonym>>,
    pub rejected: usize,
    pub unresolved: usize,
}

pub const CENTRALITY_HEADER: &str = "pseudonym\tdegree_raw\teigenvector_raw\tpagerank_raw\tbetweenness_raw\tdegree_norm\teigenvector_norm\tpagerank_norm\tbetweenness_norm\tfused\trank";

/// Parsed centrality.tsv row. The raw/norm blocks mirror the artifact
/// layout; consumers today key on fused score and rank.
#[derive(Debug, Clone)]
pub struct CentralityRow {
    pub pseudonym: Pseudonym,
    #[allow(dead_code)]
    pub raw: [f64; 4],
    #[allow(dead_code)]
    pub norm: [f64; 4],
    pub fused: f64,
    pub rank: usize,
}

pub fn read_centrality_rows(ctx: &RunContext) -> Result<Vec<CentralityRow>, CliError> {
    let path = ctx.artifact("centrality", "centrality.tsv")?;
    let text = read_text(&path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != CENTRALITY_HEADER {
                return Err(CliError::Data(format!(
                    "unexpected centrality.tsv header: {line}"
                )));
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 11 {
            return Err(CliError::Data(format!(
                "centrality.tsv line {}: expected 11 fields",
                i + 1
            )));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.parse().map_err(|_| {
                CliError::Data(format!("centrality.tsv line {}: bad float {s}", i + 1))
            })
        };
        rows.push(CentralityRow {
            pseudonym: Pseudonym(fields[0].to_string()),
            raw: [
                parse(fields[1])?,
                parse(fields[2])?,
                parse(fields[3])?,
                parse(fields[4])?,
            ],
            norm: [
                parse(fields[5])?,
                parse(fields[6])?,
                parse(fields[7])?,
                parse(fields[8])?,
            ],
            fused: parse(fields[9])?,
            rank: fields[10]
                .parse()
                .map_err(|_| CliError::Data(format!("centrality.tsv line {}: bad rank", i + 1)))?,
        });
    }
    rows.sort_by_key(|r| r.rank);
    Ok(rows)
}

pub fn load_expansion(ctx: &RunContext) -> Result<ExpansionArtifact, CliError> {
    let path = ctx.artifact("expand", "expansion.json")?;
    let text = read_text(&path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("invalid expansion artifact: {e}")))
}

#[derive(Debug, Serialize)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub dropped_edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    pub unresolved_endpoints: usize,
}

/// The influence graph: seeds plus snowball acceptances, induced over the
/// loaded edge file. Shared by graph, centrality, and subgraph.
pub fn influence_graph(
    ctx: &RunContext,
) -> Result<(Vec<AccountProfile>, FollowGraph, GraphStats), CliError> {
    let profiles = ctx.load_profiles()?;
    let edges = ctx.load_edges()?;
    let expansion = load_expansion(ctx)?;
    let index = ctx.pseudonym_index(&profiles);

    let mut node_pseudonyms: BTreeSet<Pseudonym> = expansion.seeds.iter().cloned().collect();
    node_pseudonyms.extend(expansion.accepted_by_stage.iter().flatten().cloned());

    let mut filter: BTreeSet<AccountId> = BTreeSet::new();
    for pseudonym in &node_pseudonyms {
        let raw = index.get(pseudonym).ok_or_else(|| {
            CliError::Data(format!(
                "expansion artifact references {pseudonym}, absent from the snapshot corpus"
            ))
        })?;
        filter.insert(raw.clone());
    }
    let graph = build_graph(&edges.edges, &filter)?;
    let stats = GraphStats {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        dropped_edges: graph.dropped_edges(),
        self_loops_dropped: edges.self_loops_dropped,
        duplicates_dropped: edges.duplicates_dropped,
        unresolved_endpoints: unresolved_endpoint_count(&profiles, &edges),
    };
    Ok((profiles, graph, stats))
}

pub fn write_jsonl<T: Serialize>(rows: &[T]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("row serializes"));
        out.push('\n');
    }
    out
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, CliError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line)
                .map_err(|e| CliError::Data(format!("artifact line {}: {e}", i + 1)))
        })
        .collect()
}
