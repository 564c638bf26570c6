//! `graph`, `centrality`, `rank`, `temporal`, and `subgraph`: the influence
//! analysis stages over the expanded account set.

use anonet::netgraph::{centrality_report, score_curve, temporal_report, top_k_subgraph};

use crate::context::{write_text, RunContext};
use crate::manifest::{ManifestBuilder, TABLE_ARTIFACT_VERSION};
use crate::CliError;

use super::{influence_graph, read_centrality_rows, CENTRALITY_HEADER};

/// Materialise the influence graph as node/edge lists for plotting tools.
pub fn cmd_graph(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("graph");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("edges", &ctx.config.paths.edges)?;
    manifest.input("expansion", &ctx.artifact("expand", "expansion.json")?)?;

    let (_profiles, graph, stats) = influence_graph(ctx)?;
    let mut nodes = String::from("pseudonym\n");
    for id in graph.nodes() {
        nodes.push_str(&format!("{}\n", ctx.pseudonym(id)));
    }
    let mut edges = String::from("follower\tfollowee\n");
    for (p, q) in graph.edges() {
        edges.push_str(&format!(
            "{}\t{}\n",
            ctx.pseudonym(graph.node_id(p)),
            ctx.pseudonym(graph.node_id(q))
        ));
    }

    let dir = ctx.command_dir("graph")?;
    write_text(&dir.join("nodes.tsv"), &nodes)?;
    write_text(&dir.join("edges.tsv"), &edges)?;
    write_text(
        &dir.join("stats.json"),
        &(serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n"),
    )?;
    manifest.artifact_version("graph", TABLE_ARTIFACT_VERSION);
    manifest.write(&dir, &ctx.config)?;
    println!(
        "graph: {} nodes, {} edges ({} dropped, {} unresolved endpoints)",
        stats.nodes, stats.edges, stats.dropped_edges, stats.unresolved_endpoints
    );
    Ok(())
}

/// All four centrality measures, normalized, fused, and ranked.
pub fn cmd_centrality(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("centrality");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("edges", &ctx.config.paths.edges)?;
    manifest.input("expansion", &ctx.artifact("expand", "expansion.json")?)?;

    let (_profiles, graph, _stats) = influence_graph(ctx)?;
    let opts = ctx.config.centrality.options()?;
    let report = centrality_report(&graph, &opts)?;

    let mut table = String::from(CENTRALITY_HEADER);
    table.push('\n');
    for e in &report.entries {
        table.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            ctx.pseudonym(&e.account_id),
            e.degree_raw,
            e.eigenvector_raw,
            e.pagerank_raw,
            e.betweenness_raw,
            e.degree_norm,
            e.eigenvector_norm,
            e.pagerank_norm,
            e.betweenness_norm,
            e.fused,
            e.rank
        ));
    }

    // Rank-vs-score curves per measure (the data behind score plots).
    let mut curves = String::from("measure\trank\tpseudonym\tscore\n");
    let extract = |pick: fn(&anonet::netgraph::CentralityEntry) -> f64| -> Vec<f64> {
        let mut by_node = vec![0.0; graph.node_count()];
        for e in &report.entries {
            by_node[graph.index_of(&e.account_id).expect("entry in graph")] = pick(e);
        }
        by_node
    };
    for (name, scores) in [
        ("degree", extract(|e| e.degree_raw)),
        ("eigenvector", extract(|e| e.eigenvector_raw)),
        ("pagerank", extract(|e| e.pagerank_raw)),
        ("betweenness", extract(|e| e.betweenness_raw)),
    ] {
        for (rank, id, score) in score_curve(graph.nodes(), &scores) {
            curves.push_str(&format!(
                "{name}\t{rank}\t{}\t{score}\n",
                ctx.pseudonym(&id)
            ));
        }
    }

    let dir = ctx.command_dir("centrality")?;
    write_text(&dir.join("centrality.tsv"), &table)?;
    write_text(&dir.join("score_curves.tsv"), &curves)?;
    manifest.artifact_version("centrality", TABLE_ARTIFACT_VERSION);
    manifest.write(&dir, &ctx.config)?;
    let top = report.entries.first().expect("non-empty graph");
    println!(
        "centrality: {} accounts ranked; top fused {} ({:.4})",
        report.entries.len(),
        ctx.pseudonym(&top.account_id),
        top.fused
    );
    Ok(())
}

/// Top-k slice of the fused ranking.
pub fn cmd_rank(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("rank");
    manifest.input("centrality", &ctx.artifact("centrality", "centrality.tsv")?)?;
    let rows = read_centrality_rows(ctx)?;
    let mut k = ctx.config.rank.top_k;
    if k > rows.len() {
        println!(
            "rank: top_k {k} exceeds {} ranked accounts; clamping",
            rows.len()
        );
        manifest.note("clamped_from", k.to_string());
        k = rows.len();
    }
    let mut out = String::from("rank\tpseudonym\tfused\n");
    for row in rows.iter().take(k) {
        out.push_str(&format!("{}\t{}\t{}\n", row.rank, row.pseudonym, row.fused));
    }
    let dir = ctx.command_dir("rank")?;
    write_text(&dir.join("topk.tsv"), &out)?;
    manifest.artifact_version("topk", TABLE_ARTIFACT_VERSION);
    manifest.note("top_k", k.to_string());
    manifest.write(&dir, &ctx.config)?;
    println!("rank: wrote top {k}");
    Ok(())
}

/// Creation-year and last-tweet-year histograms plus the era fraction for
/// the top-ranked accounts.
pub fn cmd_temporal(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("temporal");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("centrality", &ctx.artifact("centrality", "centrality.tsv")?)?;

    let profiles = ctx.load_profiles()?;
    let index = ctx.pseudonym_index(&profiles);
    let rows = read_centrality_rows(ctx)?;
    let ranked: Vec<anonet::ingest::AccountId> = rows
        .iter()
        .filter_map(|r| index.get(&r.pseudonym).cloned())
        .collect();
    let window = (
        ctx.config.temporal.window_start,
        ctx.config.temporal.window_end,
    );
    let report = temporal_report(&profiles, &ranked, ctx.config.temporal.top_k, window);

    let mut created = String::from("year\tcount\n");
    for (year, count) in &report.created_per_year {
        created.push_str(&format!("{year}\t{count}\n"));
    }
    let mut last = String::from("year\tcount\n");
    for (year, count) in &report.last_tweet_per_year {
        last.push_str(&format!("{year}\t{count}\n"));
    }
    last.push_str(&format!("unknown\t{}\n", report.unknown_last_tweet));

    let dir = ctx.command_dir("temporal")?;
    write_text(&dir.join("created_per_year.tsv"), &created)?;
    write_text(&dir.join("last_tweet_per_year.tsv"), &last)?;
    write_text(
        &dir.join("temporal.json"),
        &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"),
    )?;
    manifest.artifact_version("temporal", TABLE_ARTIFACT_VERSION);
    manifest.write(&dir, &ctx.config)?;
    println!(
        "temporal: era fraction {:.4} over top {} ({}..={})",
        report.era_fraction, report.era_sample, window.0, window.1
    );
    Ok(())
}

/// Induced subgraph of the top-k fused-score accounts, score-annotated.
pub fn cmd_subgraph(ctx: &RunContext) -> Result<(), CliError> {
    if ctx.config.subgraph.k == 0 {
        return Err(CliError::Config(
            "subgraph.k must be at least 1".to_string(),
        ));
    }
    let mut manifest = ManifestBuilder::new("subgraph");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("edges", &ctx.config.paths.edges)?;
    manifest.input("centrality", &ctx.artifact("centrality", "centrality.tsv")?)?;

    let (profiles, graph, _stats) = influence_graph(ctx)?;
    let index = ctx.pseudonym_index(&profiles);
    let rows = read_centrality_rows(ctx)?;
    let mut fused = vec![0.0f64; graph.node_count()];
    for row in &rows {
        let raw = index.get(&row.pseudonym).ok_or_else(|| {
            CliError::Data(format!("centrality row {} not in snapshots", row.pseudonym))
        })?;
        if let Some(i) = graph.index_of(raw) {
            fused[i] = row.fused;
        }
    }
    let mut k = ctx.config.subgraph.k;
    if k > graph.node_count() {
        println!(
            "subgraph: k {k} exceeds {} nodes; clamping",
            graph.node_count()
        );
        manifest.note("clamped_from", k.to_string());
        k = graph.node_count();
    }
    let subgraph = top_k_subgraph(&graph, &fused, k)?;

    let mut nodes = String::from("pseudonym\tscore\n");
    for (id, score) in &subgraph.nodes {
        nodes.push_str(&format!("{}\t{}\n", ctx.pseudonym(id), score));
    }
    let mut edges = String::from("follower\tfollowee\n");
    for (p, q) in &subgraph.edges {
        edges.push_str(&format!("{}\t{}\n", ctx.pseudonym(p), ctx.pseudonym(q)));
    }

    let dir = ctx.command_dir("subgraph")?;
    write_text(&dir.join("subgraph_nodes.tsv"), &nodes)?;
    write_text(&dir.join("subgraph_edges.tsv"), &edges)?;
    manifest.artifact_version("subgraph", TABLE_ARTIFACT_VERSION);
    manifest.note("k", k.to_string());
    manifest.write(&dir, &ctx.config)?;
    println!(
        "subgraph: {} nodes, {} edges",
        subgraph.nodes.len(),
        subgraph.edges.len()
    );
    Ok(())
}
