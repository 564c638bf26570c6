//! `train`, `evaluate`, `classify`, and `expand`: the classifier stages.

use std::collections::BTreeMap;

use anonet::classifier::{
    cross_validate, load_model, save_model, train_forest, train_tree, LabeledExample, ModelSpec,
    TrainedModel,
};
use anonet::features::FEATURE_COUNT;
use anonet::ingest::{AccountProfile, Pseudonym, SnapshotSource};
use anonet::netgraph::{snowball_expand, SnowballError, SnowballRun};

use crate::context::{read_text, write_text, RunContext};
use crate::manifest::{
    file_digest, ManifestBuilder, MODEL_ARTIFACT_VERSION, TABLE_ARTIFACT_VERSION,
};
use crate::CliError;

use super::{DecisionRow, ExpansionArtifact};

/// Join the labelled artifact back onto snapshot profiles (pseudonyms are
/// the join key) and extract feature vectors.
fn labeled_examples(ctx: &RunContext) -> Result<Vec<LabeledExample>, CliError> {
    let labeled_path = ctx.artifact("label", "labeled.jsonl")?;
    let rows: Vec<DecisionRow> = super::read_jsonl(&read_text(&labeled_path)?)?;
    let labels: BTreeMap<Pseudonym, bool> = rows
        .into_iter()
        .map(|r| {
            let positive = r.label == "positive";
            (r.pseudonym, positive)
        })
        .collect();
    let profiles = ctx.load_profiles()?;
    let examples: Vec<LabeledExample> = profiles
        .iter()
        .filter_map(|p| {
            labels
                .get(&ctx.pseudonym(&p.account_id))
                .map(|&positive| LabeledExample {
                    account_id: p.account_id.clone(),
                    features: ctx.extract(p),
                    positive,
                })
        })
        .collect();
    if examples.is_empty() {
        return Err(CliError::Data(
            "no labelled examples: the labelled artifact matches no snapshot account".to_string(),
        ));
    }
    Ok(examples)
}

fn fit(spec: &ModelSpec, examples: &[LabeledExample], seed: u64) -> Result<TrainedModel, CliError> {
    let rows: Vec<(&[f64], bool)> = examples
        .iter()
        .map(|e| (e.features.values.as_slice(), e.positive))
        .collect();
    Ok(match spec {
        ModelSpec::Tree(params) => TrainedModel::Tree(train_tree(&rows, *params)?),
        ModelSpec::Forest(params) => TrainedModel::Forest(train_forest(&rows, *params, seed)?),
    })
}

/// Train the configured model on the whole labelled set and persist it.
pub fn cmd_train(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("train");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("labeled", &ctx.artifact("label", "labeled.jsonl")?)?;

    let examples = labeled_examples(ctx)?;
    let spec = ctx.config.classifier.model_spec()?;
    let model = fit(&spec, &examples, ctx.config.seed())?;

    let dir = ctx.command_dir("train")?;
    let model_path = dir.join("model.json");
    save_model(&model_path, &model)?;
    let digest = file_digest(&model_path)?;
    manifest.artifact_version("model", MODEL_ARTIFACT_VERSION);
    manifest.note("model_digest", &digest);
    manifest.note("examples", examples.len().to_string());
    manifest.write(&dir, &ctx.config)?;
    println!(
        "train: fitted on {} examples; model digest {digest}",
        examples.len()
    );
    Ok(())
}

/// Stratified cross validation over the labelled set.
pub fn cmd_evaluate(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("evaluate");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("labeled", &ctx.artifact("label", "labeled.jsonl")?)?;

    let examples = labeled_examples(ctx)?;
    let spec = ctx.config.classifier.model_spec()?;
    let report = cross_validate(
        &examples,
        &spec,
        ctx.config.classifier.folds,
        ctx.config.seed(),
    )?;

    let mut text = String::new();
    text.push_str(&format!(
        "folds\t{}\nweighted_precision\t{}\nweighted_recall\t{}\nweighted_f1\t{}\n",
        report.folds, report.precision, report.recall, report.f1
    ));
    for m in &report.per_class {
        text.push_str(&format!(
            "{}\tprecision {:.4} recall {:.4} f1 {:.4} support {}\n",
            m.class, m.precision, m.recall, m.f1, m.support
        ));
    }
    text.push_str(&format!(
        "confusion\ttn {} fp {} fn {} tp {}\n",
        report.confusion[0][0],
        report.confusion[0][1],
        report.confusion[1][0],
        report.confusion[1][1]
    ));

    let dir = ctx.command_dir("evaluate")?;
    write_text(
        &dir.join("eval.json"),
        &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"),
    )?;
    write_text(&dir.join("eval.txt"), &text)?;
    manifest.artifact_version("eval", TABLE_ARTIFACT_VERSION);
    manifest.write(&dir, &ctx.config)?;
    println!(
        "evaluate: weighted F1 {:.4} over {} folds ({} examples)",
        report.f1,
        report.folds,
        examples.len()
    );
    Ok(())
}

fn load_trained_model(ctx: &RunContext) -> Result<TrainedModel, CliError> {
    let path = ctx.artifact("train", "model.json")?;
    let model = load_model(&path)?;
    if model.feature_count() != FEATURE_COUNT {
        return Err(CliError::Data(format!(
            "model expects {} features; this build extracts {FEATURE_COUNT}",
            model.feature_count()
        )));
    }
    Ok(model)
}

/// Score every snapshot account with the persisted model.
pub fn cmd_classify(ctx: &RunContext) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new("classify");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    let model_path = ctx.artifact("train", "model.json")?;
    manifest.input("model", &model_path)?;
    let model = load_trained_model(ctx)?;

    let profiles = ctx.load_profiles()?;
    let mut out = String::from("pseudonym\tscore\tlabel\n");
    let mut positives = 0usize;
    for p in &profiles {
        let score = model.score(&ctx.extract(p).values)?;
        let label = if score >= 0.5 {
            positives += 1;
            "positive"
        } else {
            "negative"
        };
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            ctx.pseudonym(&p.account_id),
            score,
            label
        ));
    }

    let dir = ctx.command_dir("classify")?;
    write_text(&dir.join("predictions.tsv"), &out)?;
    manifest.artifact_version("predictions", TABLE_ARTIFACT_VERSION);
    manifest.note("positives", positives.to_string());
    manifest.write(&dir, &ctx.config)?;
    println!(
        "classify: {positives} of {} scored positive",
        profiles.len()
    );
    Ok(())
}

fn expansion_artifact(ctx: &RunContext, run: &SnowballRun) -> ExpansionArtifact {
    ExpansionArtifact {
        seeds: run.seeds.iter().map(|id| ctx.pseudonym(id)).collect(),
        stages: run.stages,
        frontier_sizes: run.frontier_history.iter().map(|f| f.len()).collect(),
        accepted_by_stage: run
            .accepted_by_stage
            .iter()
            .map(|stage| stage.iter().map(|id| ctx.pseudonym(id)).collect())
            .collect(),
        rejected: run.rejected,
        unresolved: run.unresolved,
    }
}

/// Classifier-gated snowball expansion from the configured seeds.
pub fn cmd_expand(ctx: &RunContext) -> Result<(), CliError> {
    if ctx.config.expand.seeds.is_empty() {
        return Err(CliError::Config(
            "expand.seeds must list at least one account".to_string(),
        ));
    }
    let mut manifest = ManifestBuilder::new("expand");
    manifest.input("snapshots", &ctx.config.paths.snapshots)?;
    manifest.input("edges", &ctx.config.paths.edges)?;
    let model_path = ctx.artifact("train", "model.json")?;
    manifest.input("model", &model_path)?;
    let model = load_trained_model(ctx)?;

    let profiles = ctx.load_profiles()?;
    let edges = ctx.load_edges()?;
    let source = SnapshotSource::new(profiles, &edges.edges);
    let seeds: Vec<anonet::ingest::AccountId> = ctx
        .config
        .expand
        .seeds
        .iter()
        .map(|s| s.as_str().into())
        .collect();

    let classify = |p: &AccountProfile| -> bool {
        model
            .predict(&ctx.extract(p).values)
            .expect("feature count checked at model load")
    };
    let dir = ctx.command_dir("expand")?;
    let run = match snowball_expand(&seeds, &source, classify, ctx.config.expand.stages) {
        Ok(run) => run,
        Err(SnowballError::Stage {
            stage,
            message,
            partial,
        }) => {
            // Preserve partial results before surfacing the failure.
            let artifact = expansion_artifact(ctx, &partial);
            write_text(
                &dir.join("expansion.partial.json"),
                &(serde_json::to_string_pretty(&artifact).expect("artifact serializes") + "\n"),
            )?;
            return Err(CliError::Data(format!(
                "expansion stage {stage} failed: {message} (partial results in expansion.partial.json)"
            )));
        }
        Err(e @ SnowballError::UnresolvableSeed { .. }) => {
            return Err(CliError::Data(e.to_string()));
        }
    };

    let artifact = expansion_artifact(ctx, &run);
    write_text(
        &dir.join("expansion.json"),
        &(serde_json::to_string_pretty(&artifact).expect("artifact serializes") + "\n"),
    )?;
    let mut accepted_tsv = String::from("stage\tpseudonym\n");
    for (stage, accepted) in artifact.accepted_by_stage.iter().enumerate() {
        for pseudonym in accepted {
            accepted_tsv.push_str(&format!("{}\t{}\n", stage + 1, pseudonym));
        }
    }
    write_text(&dir.join("accepted.tsv"), &accepted_tsv)?;
    manifest.artifact_version("expansion", TABLE_ARTIFACT_VERSION);
    let accepted_total: usize = artifact.accepted_by_stage.iter().map(|s| s.len()).sum();
    manifest.note("accepted", accepted_total.to_string());
    manifest.note("rejected", artifact.rejected.to_string());
    manifest.note("unresolved", artifact.unresolved.to_string());
    manifest.write(&dir, &ctx.config)?;
    println!(
        "expand: {} stages, accepted {:?}, rejected {}, unresolved {}",
        artifact.stages,
        artifact
            .accepted_by_stage
            .iter()
            .map(|s| s.len())
            .collect::<Vec<_>>(),
        artifact.rejected,
        artifact.unresolved
    );
    Ok(())
}
