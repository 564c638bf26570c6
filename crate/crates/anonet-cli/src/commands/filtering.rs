//! `filter` and `label`: candidate selection and rule-based labelling.

use anonet::lexicon::{contains_anon_keyword, name_filter, positive_label_rule, Label};

use crate::context::{read_text, write_text, RunContext};
use crate::manifest::{ManifestBuilder, TABLE_ARTIFACT_VERSION};
use crate::CliError;

use super::{write_jsonl, DecisionRow};

/// Apply the name filter to every snapshot; emit one decision row per
/// account (candidate or excluded) with the name clauses that fired.
pub fn cmd_filter(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("filter");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    let profiles = ctx.load_profiles()?;

    let mut rows = Vec::with_capacity(profiles.len());
    let mut candidates = 0usize;
    for p in &profiles {
        let mut trace = Vec::new();
        if contains_anon_keyword(&p.username, &ctx.table) {
            trace.push("username_keyword".to_string());
        }
        if contains_anon_keyword(&p.screen_name, &ctx.table) {
            trace.push("screen_name_keyword".to_string());
        }
        let label = if name_filter(p, &ctx.table) {
            candidates += 1;
            "candidate"
        } else {
            "excluded"
        };
        rows.push(DecisionRow {
            pseudonym: ctx.pseudonym(&p.account_id),
            label: label.to_string(),
            rule_trace: trace,
        });
    }

    let dir = ctx.command_dir("filter")?;
    write_text(&dir.join("candidates.jsonl"), &write_jsonl(&rows))?;
    manifest.artifact_version("candidates", TABLE_ARTIFACT_VERSION);
    manifest.note("candidates", candidates.to_string());
    manifest.note("excluded", (rows.len() - candidates).to_string());
    manifest.write(&dir, &ctx.config)?;
    println!(
        "filter: {candidates} candidates, {} excluded, {} total",
        rows.len() - candidates,
        rows.len()
    );
    Ok(())
}

/// Apply the positive-label rule to every candidate from the filter stage.
pub fn cmd_label(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("label");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    let candidates_path = ctx.artifact("filter", "candidates.jsonl")?;
    manifest.input("candidates", &candidates_path)?;

    let candidate_rows: Vec<DecisionRow> = super::read_jsonl(&read_text(&candidates_path)?)?;
    let candidate_set: std::collections::BTreeSet<_> = candidate_rows
        .iter()
        .filter(|r| r.label == "candidate")
        .map(|r| r.pseudonym.clone())
        .collect();

    let profiles = ctx.load_profiles()?;
    let mut rows = Vec::new();
    let mut positives = 0usize;
    for p in &profiles {
        let pseudonym = ctx.pseudonym(&p.account_id);
        if !candidate_set.contains(&pseudonym) {
            continue;
        }
        let decision = positive_label_rule(p, &ctx.table);
        let label = match decision.label {
            Label::Positive => {
                positives += 1;
                "positive"
            }
            _ => "negative",
        };
        rows.push(DecisionRow {
            pseudonym,
            label: label.to_string(),
            rule_trace: decision.rule_trace,
        });
    }

    let dir = ctx.command_dir("label")?;
    write_text(&dir.join("labeled.jsonl"), &write_jsonl(&rows))?;
    manifest.artifact_version("labeled", TABLE_ARTIFACT_VERSION);
    manifest.note("positives", positives.to_string());
    manifest.note("negatives", (rows.len() - positives).to_string());
    manifest.write(&dir, &ctx.config)?;
    println!(
        "label: {positives} positive, {} negative of {} candidates",
        rows.len() - positives,
        rows.len()
    );
    Ok(())
}
