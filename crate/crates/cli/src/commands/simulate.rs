//! SNR sweep over a set of plans.
//!
//! Trial `k` draws its own corpus from a seed derived from the experiment seed
//! and `k`, and every segment's channel seed depends only on the trial and
//! segment, so all SNR points and plans see the same fading realizations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use satsem_core::agent::DecisionPlan;
use satsem_core::kbstore::UpdateLevel;
use satsem_core::metrics::SegmentUsage;
use satsem_core::pipeline::{run_segment, SharedKb};
use satsem_core::rng::derive_seed;
use satsem_core::scenario::{generate_corpus, CorpusParams, SessionCorpus};
use satsem_core::semcodec::{Workflow, WorkflowBudget};

use super::{mean, pool, std_err};
use crate::config::{ExperimentConfig, PlanSpec};
use crate::CliError;

const TAG_TRIAL: u64 = 0x5452_4941;
const TAG_CHANNEL: u64 = 0x4348_414E;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRecord {
    pub snr_index: usize,
    pub snr_db: f64,
    pub plan: String,
    pub workflow: Workflow,
    pub kb_level: UpdateLevel,
    pub trial: usize,
    pub corpus_seed: u64,
    pub segments: usize,
    pub akd: f64,
    pub wer: f64,
    pub feature_mse: f64,
    pub token_errors: usize,
    pub tokens_sent: usize,
    pub equalizer_floored: usize,
    pub usage: Vec<SegmentUsage>,
}

/// One row per (SNR point, plan).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSummary {
    pub snr_db: f64,
    pub plan: String,
    pub trials: usize,
    pub mean_akd: f64,
    pub se_akd: f64,
    pub mean_wer: f64,
    pub se_wer: f64,
    pub mean_feature_mse: f64,
    pub se_feature_mse: f64,
    /// Pooled over all tokens sent at this point.
    pub token_error_rate: f64,
    pub mean_symbols: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateOutput {
    /// Ordered by SNR point, then plan, then trial.
    pub records: Vec<SimRecord>,
    pub summary: Vec<SimSummary>,
}

pub fn build_plan(spec: &PlanSpec, cfg: &ExperimentConfig) -> DecisionPlan {
    let mut budgets = WorkflowBudget::preset(spec.workflow);
    if let Some(m) = spec.m {
        budgets.caps.m = m;
    }
    DecisionPlan {
        workflow: spec.workflow,
        kb_level: spec.kb_level,
        codec: spec.codec.clone().unwrap_or_else(|| cfg.codec.clone()),
        budgets,
        rationale: spec.label.clone(),
    }
}

fn trial_corpus(cfg: &ExperimentConfig, params: &CorpusParams, trial: usize) -> Result<SessionCorpus, CliError> {
    Ok(generate_corpus(derive_seed(cfg.seed, TAG_TRIAL, trial as u64), params)?)
}

fn run_trial(
    cfg: &ExperimentConfig,
    corpus: &SessionCorpus,
    plan: &DecisionPlan,
    snr_index: usize,
    snr_db: f64,
    trial: usize,
) -> Result<SimRecord, CliError> {
    let mut kb = SharedKb::default();
    let mut results = Vec::with_capacity(corpus.segments.len());
    for seg in &corpus.segments {
        let seed = derive_seed(corpus.seed, TAG_CHANNEL, seg.index as u64);
        results.push(run_segment(plan, seg, &mut kb, &cfg.pipeline, Some(snr_db), seed)?);
    }
    let m: Vec<_> = results.iter().map(|r| &r.metrics).collect();
    Ok(SimRecord {
        snr_index,
        snr_db,
        plan: plan.rationale.clone(),
        workflow: plan.workflow,
        kb_level: plan.kb_level,
        trial,
        corpus_seed: corpus.seed,
        segments: results.len(),
        akd: mean(&m.iter().map(|m| m.akd).collect::<Vec<_>>()),
        wer: mean(&m.iter().map(|m| m.wer).collect::<Vec<_>>()),
        feature_mse: mean(&m.iter().map(|m| m.feature_mse).collect::<Vec<_>>()),
        token_errors: m.iter().map(|m| m.token_errors).sum(),
        tokens_sent: m.iter().map(|m| m.tokens_sent).sum(),
        equalizer_floored: m.iter().map(|m| m.equalizer_floored).sum(),
        usage: results.iter().map(|r| r.usage).collect(),
    })
}

pub fn cmd_simulate(cfg: &ExperimentConfig) -> Result<SimulateOutput, CliError> {
    let s = &cfg.simulate;
    let params = CorpusParams {
        n_segments: s.segments_per_trial,
        ..cfg.corpus_params()?
    };
    let plans: Vec<DecisionPlan> = s.plans.iter().map(|p| build_plan(p, cfg)).collect();
    let pool = pool(cfg)?;

    let (corpora, records) = pool.install(|| -> Result<_, CliError> {
        let corpora = (0..s.trials)
            .into_par_iter()
            .map(|k| trial_corpus(cfg, &params, k))
            .collect::<Result<Vec<_>, _>>()?;
        let jobs: Vec<(usize, usize, usize)> = (0..s.snr_db.len())
            .flat_map(|i| (0..plans.len()).flat_map(move |p| (0..s.trials).map(move |k| (i, p, k))))
            .collect();
        let records = jobs
            .par_iter()
            .map(|&(i, p, k)| run_trial(cfg, &corpora[k], &plans[p], i, s.snr_db[i], k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((corpora, records))
    })?;
    drop(corpora);

    let summary = records
        .chunks(s.trials)
        .map(|chunk| {
            let col = |f: fn(&SimRecord) -> f64| chunk.iter().map(f).collect::<Vec<_>>();
            let (akd, wer, mse) = (col(|r| r.akd), col(|r| r.wer), col(|r| r.feature_mse));
            let errors: usize = chunk.iter().map(|r| r.token_errors).sum();
            let sent: usize = chunk.iter().map(|r| r.tokens_sent).sum();
            SimSummary {
                snr_db: chunk[0].snr_db,
                plan: chunk[0].plan.clone(),
                trials: chunk.len(),
                mean_akd: mean(&akd),
                se_akd: std_err(&akd),
                mean_wer: mean(&wer),
                se_wer: std_err(&wer),
                mean_feature_mse: mean(&mse),
                se_feature_mse: std_err(&mse),
                token_error_rate: if sent == 0 { 0.0 } else { errors as f64 / sent as f64 },
                mean_symbols: mean(&col(|r| r.usage.iter().map(|u| u.total()).sum::<usize>() as f64)),
            }
        })
        .collect();
    Ok(SimulateOutput { records, summary })
}
