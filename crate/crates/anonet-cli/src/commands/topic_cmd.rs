//! `topics`: per-influencer tweet selection, preprocessing, the coherence
//! sweep, and top-word reports.

use std::collections::{BTreeMap, HashMap};

use anonet::classifier::mix_seed;
use anonet::ingest::{AccountId, TweetRecord};
use anonet::topics::{
    covered_span, default_contractions, default_stopwords, grid, lda_fit, preprocess,
    select_recent, sweep_topic_numbers,
};
use serde::Serialize;

use crate::context::{write_text, RunContext};
use crate::manifest::{ManifestBuilder, TABLE_ARTIFACT_VERSION};
use crate::CliError;

use super::read_centrality_rows;

#[derive(Serialize)]
struct AccountTopicSummary {
    pseudonym: String,
    tweets_available: usize,
    tweets_used: usize,
    documents: usize,
    dropped_empty: usize,
    vocabulary: usize,
    selected_k: usize,
    overridden: bool,
    span: Option<(String, String)>,
    coherence_curve: Vec<(usize, f64)>,
}

fn load_stopwords(ctx: &RunContext) -> Result<std::collections::HashSet<String>, CliError> {
    match &ctx.config.topics.stopwords {
        Some(path) => Ok(anonet::lexicon::load_term_list(path)?.into_iter().collect()),
        None => Ok(default_stopwords()),
    }
}

fn load_contractions(ctx: &RunContext) -> Result<HashMap<String, String>, CliError> {
    let Some(path) = &ctx.config.topics.contractions else {
        return Ok(default_contractions());
    };
    let text = crate::context::read_text(path)?;
    let mut table = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (from, to) = line.split_once('\t').ok_or_else(|| {
            CliError::Config(format!(
                "contractions file line {}: expected `contraction<TAB>expansion`",
                i + 1
            ))
        })?;
        table.insert(from.trim().to_lowercase(), to.trim().to_lowercase());
    }
    Ok(table)
}

pub fn cmd_topics(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("topics");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("centrality", &ctx.artifact("centrality", "centrality.tsv")?)?;
    let tweets_path = ctx.config.paths.tweets.clone().ok_or_else(|| {
        CliError::Config("paths.tweets must be set for the topics command".to_string())
    })?;
    manifest.input("tweets", &tweets_path)?;

    let cfg = &ctx.config.topics;
    let profiles = ctx.load_profiles()?;
    let index = ctx.pseudonym_index(&profiles);
    let rows = read_centrality_rows(ctx)?;
    let selected: Vec<(anonet::ingest::Pseudonym, AccountId)> = rows
        .iter()
        .take(cfg.top_accounts)
        .map(|r| {
            index
                .get(&r.pseudonym)
                .cloned()
                .map(|raw| (r.pseudonym.clone(), raw))
                .ok_or_else(|| {
                    CliError::Data(format!("ranked account {} not in snapshots", r.pseudonym))
                })
        })
        .collect::<Result<_, _>>()?;

    let all_tweets = ctx.load_tweets()?;
    let mut by_account: HashMap<&AccountId, Vec<TweetRecord>> = HashMap::new();
    for t in &all_tweets {
        by_account.entry(&t.account_id).or_default().push(t.clone());
    }

    let stopwords = load_stopwords(ctx)?;
    let contractions = load_contractions(ctx)?;
    let sweep_grid = grid(cfg.grid_start, cfg.grid_step, cfg.grid_max);
    let lda_params = cfg.lda_params();
    let coherence_params = cfg.coherence_params();
    let preprocess_config = cfg.preprocess_config();
    let seed = ctx.config.seed();

    let dir = ctx.command_dir("topics")?;
    let mut summaries = Vec::new();
    let mut overrides_recorded = BTreeMap::new();

    for (position, (pseudonym, raw_id)) in selected.iter().enumerate() {
        let archive = by_account.get(raw_id).cloned().unwrap_or_default();
        if archive.is_empty() {
            return Err(CliError::Data(format!(
                "no tweet archive for ranked account {pseudonym}"
            )));
        }
        let recent = select_recent(&archive, cfg.recent_limit);
        let span = covered_span(&recent).map(|(a, b)| (a.to_string(), b.to_string()));
        let corpus = preprocess(&recent, &stopwords, &contractions, &preprocess_config);
        if corpus.docs.is_empty() {
            return Err(CliError::Data(format!(
                "corpus for {pseudonym} is empty after preprocessing"
            )));
        }

        let account_seed = mix_seed(seed, 0x70 + position as u64);
        let sweep = sweep_topic_numbers(
            &corpus,
            &sweep_grid,
            cfg.seeds_per_k,
            &lda_params,
            &coherence_params,
            account_seed,
        )?;
        let (chosen_k, overridden) = match cfg.k_override.get(raw_id.as_str()) {
            Some(&k) => {
                overrides_recorded.insert(pseudonym.to_string(), k);
                (k, true)
            }
            None => (sweep.selected_k, false),
        };
        let model = lda_fit(&corpus, chosen_k, &lda_params, mix_seed(account_seed, 0xF1))?;

        let mut coherence_tsv = String::from("k\tmean_coherence");
        for s in 0..cfg.seeds_per_k {
            coherence_tsv.push_str(&format!("\tseed{s}"));
        }
        coherence_tsv.push('\n');
        for point in &sweep.points {
            coherence_tsv.push_str(&format!("{}\t{}", point.k, point.mean_coherence));
            for v in &point.per_seed {
                coherence_tsv.push_str(&format!("\t{v}"));
            }
            coherence_tsv.push('\n');
        }
        write_text(
            &dir.join(format!("{pseudonym}.coherence.tsv")),
            &coherence_tsv,
        )?;

        let mut report = format!(
            "account {pseudonym}\nselected_k {chosen_k} ({})\ndocuments {} (dropped_empty {})\ntweets_used {} of {}\n",
            if overridden { "override" } else { "sweep argmax" },
            corpus.docs.len(),
            corpus.dropped_empty,
            recent.len(),
            archive.len(),
        );
        if let Some((from, to)) = &span {
            report.push_str(&format!("span {from} .. {to}\n"));
        }
        for topic in 0..model.k {
            report.push_str(&format!("\ntopic {topic}\nlabel:\n"));
            for token_id in model.top_words(topic, cfg.top_words.min(corpus.vocab_size()))? {
                report.push_str(&format!(
                    "  {}\t{}\n",
                    corpus.token(token_id),
                    model.phi[topic][token_id as usize]
                ));
            }
        }
        write_text(&dir.join(format!("{pseudonym}.topics.txt")), &report)?;

        summaries.push(AccountTopicSummary {
            pseudonym: pseudonym.to_string(),
            tweets_available: archive.len(),
            tweets_used: recent.len(),
            documents: corpus.docs.len(),
            dropped_empty: corpus.dropped_empty,
            vocabulary: corpus.vocab_size(),
            selected_k: chosen_k,
            overridden,
            span,
            coherence_curve: sweep
                .points
                .iter()
                .map(|p| (p.k, p.mean_coherence))
                .collect(),
        });
        println!(
            "topics: {pseudonym} k={chosen_k}{} docs={} vocab={}",
            if overridden { " (override)" } else { "" },
            corpus.docs.len(),
            corpus.vocab_size()
        );
    }

    write_text(
        &dir.join("summary.json"),
        &(serde_json::to_string_pretty(&summaries).expect("summaries serialize") + "\n"),
    )?;
    manifest.artifact_version("topics", TABLE_ARTIFACT_VERSION);
    for (pseudonym, k) in overrides_recorded {
        manifest.note(&format!("k_override.{pseudonym}"), k.to_string());
    }
    manifest.write(&dir, &ctx.config)?;
    Ok(())
}
