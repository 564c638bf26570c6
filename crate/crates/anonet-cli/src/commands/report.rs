//! `report` (bundle all artifacts into one human-readable summary) and
//! `schema` (dump the 62 feature names in vector order).

use std::path::Path;

use anonet::features::FeatureSchema;

use crate::context::{read_text, write_text, RunContext};
use crate::manifest::ManifestBuilder;
use crate::CliError;

fn section(out: &mut String, title: &str) {
    out.push_str(&format!("\n== {title} ==\n"));
}

fn include_file(out: &mut String, path: &Path, max_lines: usize) {
    match std::fs::read_to_string(path) {
        Ok(text) => {
            for line in text.lines().take(max_lines) {
                out.push_str(line);
                out.push('\n');
            }
            let total = text.lines().count();
            if total > max_lines {
                out.push_str(&format!("... ({} more lines)\n", total - max_lines));
            }
        }
        Err(_) => out.push_str("(stage not run)\n"),
    }
}

/// Bundle every artifact present in the output directory into a single
/// human-readable summary.
pub fn cmd_report(ctx: &RunContext) -> Result<(), CliError> {
    let manifest = ManifestBuilder::new("report");
    let base = &ctx.config.output_dir;
    let mut out = String::from("pipeline summary\n");

    section(&mut out, "filter");
    match read_text(&base.join("filter").join("manifest.json")) {
        Ok(text) => {
            let parsed: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Data(format!("bad filter manifest: {e}")))?;
            out.push_str(&format!(
                "candidates {} excluded {}\n",
                parsed["notes"]["candidates"].as_str().unwrap_or("?"),
                parsed["notes"]["excluded"].as_str().unwrap_or("?")
            ));
        }
        Err(_) => out.push_str("(stage not run)\n"),
    }

    section(&mut out, "label");
    match read_text(&base.join("label").join("manifest.json")) {
        Ok(text) => {
            let parsed: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Data(format!("bad label manifest: {e}")))?;
            out.push_str(&format!(
                "positive {} negative {}\n",
                parsed["notes"]["positives"].as_str().unwrap_or("?"),
                parsed["notes"]["negatives"].as_str().unwrap_or("?")
            ));
        }
        Err(_) => out.push_str("(stage not run)\n"),
    }

    section(&mut out, "evaluation");
    include_file(&mut out, &base.join("evaluate").join("eval.txt"), 10);

    section(&mut out, "expansion");
    include_file(&mut out, &base.join("expand").join("expansion.json"), 40);

    section(&mut out, "graph");
    include_file(&mut out, &base.join("graph").join("stats.json"), 12);

    section(&mut out, "top ranked accounts");
    include_file(&mut out, &base.join("rank").join("topk.tsv"), 25);

    section(&mut out, "temporal");
    include_file(&mut out, &base.join("temporal").join("temporal.json"), 40);

    section(&mut out, "topics");
    include_file(&mut out, &base.join("topics").join("summary.json"), 120);

    let dir = ctx.command_dir("report")?;
    write_text(&dir.join("summary.txt"), &out)?;
    manifest.write(&dir, &ctx.config)?;
    println!("report: wrote {}", dir.join("summary.txt").display());
    Ok(())
}

/// Print the 62 feature names in vector order for audit.
pub fn cmd_schema() -> Result<(), CliError> {
    let schema = FeatureSchema::standard();
    for name in schema.names() {
        println!("{name}");
    }
    Ok(())
}
