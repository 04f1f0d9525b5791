//! Update counts per KB level over a batch of synthetic corpora.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use satsem_core::kbstore::{apply_decision, decide_update, KnowledgeBase, UpdateLevel, UpdateThresholds};
use satsem_core::metrics::average_update_symbols;
use satsem_core::rng::derive_seed;
use satsem_core::scenario::{generate_corpus, SessionCorpus};

use super::{mean, pool};
use crate::config::ExperimentConfig;
use crate::CliError;

const TAG_CORPUS: u64 = 0x4B42_5357;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbSweepRecord {
    pub corpus: usize,
    pub corpus_seed: u64,
    pub level: UpdateLevel,
    pub segments: usize,
    pub update_count: usize,
    pub update_symbols: usize,
    pub avg_update_symbols: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbSweepSummary {
    pub level: UpdateLevel,
    pub corpora: usize,
    pub mean_update_count: f64,
    pub min_update_count: usize,
    pub max_update_count: usize,
    pub mean_avg_update_symbols: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KbSweepOutput {
    pub records: Vec<KbSweepRecord>,
    pub summary: Vec<KbSweepSummary>,
    /// Corpora whose counts are not non-decreasing in the order the levels
    /// are configured.
    pub violations: usize,
}

/// Runs every segment of `corpus` through a fresh KB at `level`; returns the
/// number of updates and the symbols they cost.
pub fn update_count(corpus: &SessionCorpus, level: UpdateLevel, t: &UpdateThresholds) -> Result<(usize, usize), CliError> {
    let mut kb = KnowledgeBase::new();
    let (mut count, mut symbols) = (0, 0);
    for seg in &corpus.segments {
        let cand = seg.reference_candidate();
        let d = decide_update(&kb, &cand, level, t)?;
        let charge = apply_decision(&mut kb, &cand, &d);
        if charge > 0 {
            count += 1;
            symbols += charge;
        }
    }
    Ok((count, symbols))
}

pub fn cmd_kb_sweep(cfg: &ExperimentConfig) -> Result<KbSweepOutput, CliError> {
    let params = cfg.corpus_params()?;
    let levels = &cfg.kb_sweep.levels;
    let t = &cfg.pipeline.thresholds;
    let per_corpus = pool(cfg)?.install(|| {
        (0..cfg.kb_sweep.corpora)
            .into_par_iter()
            .map(|k| -> Result<Vec<KbSweepRecord>, CliError> {
                let seed = derive_seed(cfg.seed, TAG_CORPUS, k as u64);
                let corpus = generate_corpus(seed, &params)?;
                let n = corpus.segments.len();
                levels
                    .iter()
                    .map(|&level| {
                        let (count, symbols) = update_count(&corpus, level, t)?;
                        Ok(KbSweepRecord {
                            corpus: k,
                            corpus_seed: seed,
                            level,
                            segments: n,
                            update_count: count,
                            update_symbols: symbols,
                            avg_update_symbols: average_update_symbols(count, n, KnowledgeBase::new().image_cost_symbols),
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()
    })?;

    let violations = per_corpus
        .iter()
        .filter(|rs| rs.windows(2).any(|w| w[0].update_count > w[1].update_count))
        .count();
    let summary = levels
        .iter()
        .enumerate()
        .map(|(i, &level)| {
            let col: Vec<&KbSweepRecord> = per_corpus.iter().map(|rs| &rs[i]).collect();
            let counts: Vec<f64> = col.iter().map(|r| r.update_count as f64).collect();
            KbSweepSummary {
                level,
                corpora: col.len(),
                mean_update_count: mean(&counts),
                min_update_count: col.iter().map(|r| r.update_count).min().unwrap_or(0),
                max_update_count: col.iter().map(|r| r.update_count).max().unwrap_or(0),
                mean_avg_update_symbols: mean(&col.iter().map(|r| r.avg_update_symbols).collect::<Vec<_>>()),
            }
        })
        .collect();
    Ok(KbSweepOutput {
        records: per_corpus.into_iter().flatten().collect(),
        summary,
        violations,
    })
}
