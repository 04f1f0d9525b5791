//! End-to-end orchestration of one segment and of a whole session.
//!
//! A segment goes through: knowledge-base decision on its first frame, stream
//! assembly for the chosen workflow, multiplexing into OFDM frames, the fading
//! channel, pilot-based estimation and equalization, demultiplexing and
//! decoding, and finally metric computation against the ground truth.

use chrono::Duration;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agent::{
    summarize_env, AgentError, DecisionPlan, EnvReport, MemoryLog, MemoryRecord, OutcomeMetrics, Policy,
    TaskSpec,
};
use crate::channel::{
    apply_channel, realize_channel, snr_to_noise_power, ChannelError, ChannelRealization, FadingConfig,
    GridTiming,
};
use crate::grid::ComplexGrid;
use crate::kbstore::{
    apply_decision, decide_update, reference_index, KbError, KnowledgeBase, UpdateAction, UpdateLevel,
    UpdateThresholds,
};
use crate::linkbudget::RfParams;
use crate::metrics::{account, akd, feature_mse, wer, BandwidthLedger, SegmentUsage};
use crate::ofdm::{equalize, ls_estimate, OfdmError, OfdmFrame, PilotLayout};
use crate::rng::derive_seed;
use crate::scenario::{keypoints_from_vector, Scenario, Segment, SessionCorpus};
use crate::semcodec::{
    decode_floats, decode_floats_soft, decode_tokens, demultiplex, encode_floats, encode_tokens, float_base_symbols,
    max_items_within, multiplex, rate_match, token_base_symbols, AudioSemantics, CodecConfig, CodecMode,
    SemError, StreamId, SymbolStream, VideoSemantics, Workflow, VIDEO_DIM,
};

const TAG_FADING: u64 = 0x4641_4445;
const TAG_NOISE: u64 = 0x4E4F_4953;
const TAG_SEGMENT_SEED: u64 = 0x5345_4753;

/// Durations travel in units of 100 ms so typical phoneme lengths sit well
/// inside the quantizer range.
pub const DURATION_SCALE: f64 = 10.0;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Codec(#[from] SemError),
    #[error(transparent)]
    Ofdm(#[from] OfdmError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error("invalid plan: {}", .0.join("; "))]
    Plan(Vec<String>),
    #[error("metric: {0}")]
    Metric(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelModel {
    /// Unit gain everywhere.
    Ideal,
    Fading(FadingConfig),
}

impl Default for ChannelModel {
    fn default() -> Self {
        ChannelModel::Fading(FadingConfig::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub layout: PilotLayout,
    pub timing: GridTiming,
    pub channel: ChannelModel,
    pub thresholds: UpdateThresholds,
    /// Prior used by the receiver to shrink noisy direct-mode 3DMM values
    /// toward the knowledge-base reference pose. `None` disables it.
    pub kb_prior: Option<PosePrior>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            layout: PilotLayout::default(),
            timing: GridTiming::default(),
            channel: ChannelModel::default(),
            thresholds: UpdateThresholds::default(),
            kb_prior: Some(PosePrior::default()),
        }
    }
}

/// Largest spread of a frame's coefficients around the reference pose. The
/// receiver estimates the actual spread from the received values and never
/// lets it exceed these bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosePrior {
    pub exp_std: f64,
    pub rot_std: f64,
    pub trans_std: f64,
}

impl Default for PosePrior {
    fn default() -> Self {
        Self {
            exp_std: 1.0,
            rot_std: 0.2,
            trans_std: 0.2,
        }
    }
}

/// Coefficient groups sharing one prior: expression, rotation, translation.
fn pose_group(component: usize) -> usize {
    match component {
        0..6 => 0,
        6..9 => 1,
        _ => 2,
    }
}

impl PosePrior {
    fn max_variance(&self, group: usize) -> f64 {
        let s = [self.exp_std, self.rot_std, self.trans_std][group];
        s * s
    }
}

/// Linear MMSE combination of noisy values with the reference pose. The prior
/// variance of each group is the excess of the observed spread around the
/// reference over the noise variance, clipped to `[0, max]`.
fn shrink_to_reference(
    soft: &[(f64, f64)],
    reference: &[f64; VIDEO_DIM],
    prior: &PosePrior,
    range: f64,
) -> Vec<f64> {
    let mut excess = [0.0; 3];
    let mut count = [0usize; 3];
    for (i, &(y, var)) in soft.iter().enumerate() {
        let c = i % VIDEO_DIM;
        if var.is_finite() {
            excess[pose_group(c)] += (y - reference[c]).powi(2) - var;
            count[pose_group(c)] += 1;
        }
    }
    let p: [f64; 3] = std::array::from_fn(|g| {
        if count[g] == 0 {
            return 0.0;
        }
        (excess[g] / count[g] as f64).clamp(0.0, prior.max_variance(g))
    });
    soft.iter()
        .enumerate()
        .map(|(i, &(y, var))| {
            let c = i % VIDEO_DIM;
            let p = p[pose_group(c)];
            let w = if var.is_finite() && p > 0.0 { p / (p + var) } else { 0.0 };
            (reference[c] + w * (y - reference[c])).clamp(-range, range)
        })
        .collect()
}

/// Transmitter and receiver copies of the knowledge base.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SharedKb {
    pub tx: KnowledgeBase,
    pub rx: KnowledgeBase,
}

impl SharedKb {
    pub fn in_sync(&self) -> bool {
        self.tx.to_records_string() == self.rx.to_records_string()
    }
}

/// How the 3DMM stream is thinned to fit its budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VideoFit {
    /// Keep every `stride`-th frame (plus the last one).
    pub stride: usize,
    pub float_bits: u32,
}

impl VideoFit {
    pub fn kept_frames(&self, n_frames: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..n_frames).step_by(self.stride.max(1)).collect();
        if n_frames > 0 && idx.last() != Some(&(n_frames - 1)) {
            idx.push(n_frames - 1);
        }
        idx
    }

    fn codec(&self, cfg: &CodecConfig) -> CodecConfig {
        CodecConfig {
            float_bits: self.float_bits,
            ..cfg.clone()
        }
    }
}

/// Chooses the finest representation of `n_frames` frames that fits in `cap`
/// symbols: in digital mode, coarser quantization first, then temporal
/// thinning at the coarsest resolution; in direct mode, thinning only. Both
/// ends compute this from public values, so no side information is needed.
pub fn fit_video(n_frames: usize, cap: usize, cfg: &CodecConfig) -> Option<VideoFit> {
    if n_frames == 0 || cap == 0 {
        return None;
    }
    let fits = |fit: VideoFit| {
        let floats = fit.kept_frames(n_frames).len() * VIDEO_DIM;
        float_base_symbols(floats, &fit.codec(cfg)) * cfg.repetition <= cap
    };
    let bit_options: Vec<u32> = match cfg.mode {
        CodecMode::Digital => [16, 12, 8, 4].into_iter().filter(|&b| b <= cfg.float_bits).collect(),
        CodecMode::Direct => vec![cfg.float_bits],
    };
    for &float_bits in &bit_options {
        let fit = VideoFit { stride: 1, float_bits };
        if fits(fit) {
            return Some(fit);
        }
    }
    let coarsest = *bit_options.last()?;
    (2..=n_frames)
        .map(|stride| VideoFit {
            stride,
            float_bits: coarsest,
        })
        .find(|&f| fits(f))
}

/// Rebuilds every frame from the kept ones by linear interpolation.
pub fn interpolate_frames(kept: &[usize], values: &[[f64; VIDEO_DIM]], n_frames: usize) -> Vec<[f64; VIDEO_DIM]> {
    (0..n_frames)
        .map(|f| {
            let j = kept.partition_point(|&k| k <= f).saturating_sub(1);
            if kept[j] == f || j + 1 >= kept.len() {
                return values[j];
            }
            let (a, b) = (kept[j], kept[j + 1]);
            let w = (f - a) as f64 / (b - a) as f64;
            std::array::from_fn(|c| values[j][c] + w * (values[j + 1][c] - values[j][c]))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SegmentMetrics {
    pub akd: f64,
    /// Text word error rate against the full reference, so dropped tokens count.
    pub wer: f64,
    /// Position-wise text token errors over the tokens actually sent.
    pub token_errors: usize,
    pub tokens_sent: usize,
    /// Mean squared error over every float feature carried by the workflow.
    pub feature_mse: f64,
    pub video_mse: Option<f64>,
    pub duration_mse: Option<f64>,
    pub phoneme_wer: Option<f64>,
    pub equalizer_floored: usize,
    pub tokens_clamped: usize,
}

impl SegmentMetrics {
    pub fn token_error_rate(&self) -> f64 {
        if self.tokens_sent == 0 {
            0.0
        } else {
            self.token_errors as f64 / self.tokens_sent as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentResult {
    pub segment_index: usize,
    pub workflow: Workflow,
    pub kb_level: UpdateLevel,
    pub kb_action: UpdateAction,
    pub kb_charge: usize,
    pub kb_reference: usize,
    pub usage: SegmentUsage,
    pub video_fit: Option<VideoFit>,
    pub snr_db: Option<f64>,
    pub metrics: SegmentMetrics,
    pub recovered_video: VideoSemantics,
    pub recovered_audio: AudioSemantics,
}

impl SegmentResult {
    pub fn symbols_used(&self) -> usize {
        self.usage.total()
    }
}

/// Passes frames through the configured channel. Returns the equalized frames
/// and the channel estimates.
fn transmit(
    frames: &[OfdmFrame],
    cfg: &PipelineConfig,
    snr_db: Option<f64>,
    seed: u64,
) -> Result<(Vec<OfdmFrame>, Vec<ComplexGrid>, usize), PipelineError> {
    let layout = &cfg.layout;
    let noise = snr_db.map_or(0.0, |s| snr_to_noise_power(s, 1.0));
    let mut out = Vec::with_capacity(frames.len());
    let mut csi = Vec::with_capacity(frames.len());
    let mut floored = 0;
    for (i, x) in frames.iter().enumerate() {
        let realization = match &cfg.channel {
            ChannelModel::Ideal => ChannelRealization::identity(layout.n_f, layout.n_t),
            ChannelModel::Fading(f) => realize_channel(
                &f.with_seed(derive_seed(seed, TAG_FADING, i as u64)),
                layout.n_f,
                layout.n_t,
                cfg.timing,
            )?,
        };
        let y = apply_channel(x, &realization, noise, derive_seed(seed, TAG_NOISE, i as u64))?;
        let h_hat = ls_estimate(&y, layout)?;
        let (eq, report) = equalize(&y, &h_hat)?;
        floored += report.floored;
        out.push(eq);
        csi.push(h_hat);
    }
    Ok((out, csi, floored))
}

fn find(streams: &[SymbolStream], id: StreamId) -> Option<&SymbolStream> {
    streams.iter().find(|s| s.stream_id == id)
}

fn token_stream(
    tokens: &[u32],
    vocab: u32,
    cap: usize,
    cfg: &CodecConfig,
    id: StreamId,
) -> Result<Option<SymbolStream>, PipelineError> {
    let n = max_items_within(cap, tokens.len(), |k| token_base_symbols(k, vocab, cfg) * cfg.repetition);
    if n == 0 {
        return Ok(None);
    }
    let s = encode_tokens(&tokens[..n], vocab, cfg, id)?;
    Ok(Some(rate_match(&s, cap)?))
}

fn float_stream(values: &[f64], cap: usize, cfg: &CodecConfig, id: StreamId) -> Result<Option<SymbolStream>, PipelineError> {
    let n = max_items_within(cap, values.len(), |k| float_base_symbols(k, cfg) * cfg.repetition);
    if n == 0 {
        return Ok(None);
    }
    let s = encode_floats(&values[..n], cfg, id);
    Ok(Some(rate_match(&s, cap)?))
}

fn mean_akd(truth: &[[f64; VIDEO_DIM]], hyp: &[[f64; VIDEO_DIM]]) -> Result<f64, PipelineError> {
    let mut total = 0.0;
    for (a, b) in truth.iter().zip(hyp) {
        total += akd(&keypoints_from_vector(a), &keypoints_from_vector(b))
            .map_err(|e| PipelineError::Metric(e.to_string()))?;
    }
    Ok(total / truth.len().max(1) as f64)
}

fn metric<T>(r: Result<T, crate::metrics::MetricError>) -> Result<T, PipelineError> {
    r.map_err(|e| PipelineError::Metric(e.to_string()))
}

/// Runs one segment under `plan`. `snr_db = None` means a noiseless channel.
pub fn run_segment(
    plan: &DecisionPlan,
    segment: &Segment,
    kb: &mut SharedKb,
    cfg: &PipelineConfig,
    snr_db: Option<f64>,
    seed: u64,
) -> Result<SegmentResult, PipelineError> {
    plan.codec.validate()?;
    let codec = &plan.codec;
    let caps = plan.budgets.caps;

    // 1. knowledge base
    let candidate = segment.reference_candidate();
    let decision = decide_update(&kb.tx, &candidate, plan.kb_level, &cfg.thresholds)?;
    let kb_charge = apply_decision(&mut kb.tx, &candidate, &decision);
    // the reference image reaches the receiver over its own (charged) link
    apply_decision(&mut kb.rx, &candidate, &decision);
    let kb_reference = reference_index(&kb.rx, &decision);

    // 2. streams
    let truth_video = segment.video();
    let n_frames = truth_video.frames.len();
    let audio = &segment.audio;
    let mut streams = Vec::new();
    let mut video_fit = None;
    let scaled_durations: Vec<f64> = audio.durations_s.iter().map(|d| d * DURATION_SCALE).collect();
    match plan.workflow {
        Workflow::V2A => {
            video_fit = fit_video(n_frames, caps.m, codec);
            if let Some(fit) = video_fit {
                let values: Vec<f64> = fit
                    .kept_frames(n_frames)
                    .iter()
                    .flat_map(|&f| truth_video.frames[f])
                    .collect();
                let s = encode_floats(&values, &fit.codec(codec), StreamId::M);
                streams.push(rate_match(&s, caps.m)?);
            }
            streams.extend(token_stream(&audio.text_tokens, codec.text_vocab, caps.t, codec, StreamId::T)?);
        }
        Workflow::A2V => {
            streams.extend(token_stream(&audio.text_tokens, codec.text_vocab, caps.t, codec, StreamId::T)?);
            streams.extend(token_stream(
                &audio.phoneme_tokens,
                codec.phoneme_vocab,
                caps.p,
                codec,
                StreamId::P,
            )?);
            streams.extend(float_stream(&scaled_durations, caps.d, codec, StreamId::D)?);
        }
    }

    // 3. physical layer
    let mux = multiplex(&streams, &plan.budgets, &cfg.layout)?;
    let (rx_frames, csi, floored) = transmit(&mux.frames, cfg, snr_db, seed)?;
    let received = demultiplex(&rx_frames, Some(&csi), &mux.layout, &cfg.layout)?;

    // 4. decode and score
    let mut metrics = SegmentMetrics {
        equalizer_floored: floored,
        ..SegmentMetrics::default()
    };
    let mut recovered_audio = AudioSemantics::default();
    if let Some(s) = find(&received, StreamId::T) {
        let d = decode_tokens(s, codec)?;
        metrics.tokens_clamped += d.clamped;
        recovered_audio.text_tokens = d.tokens;
    }
    let sent = recovered_audio.text_tokens.len();
    metrics.tokens_sent = sent;
    metrics.token_errors = recovered_audio
        .text_tokens
        .iter()
        .zip(&audio.text_tokens[..sent])
        .filter(|(a, b)| a != b)
        .count();
    metrics.wer = metric(wer(&audio.text_tokens, &recovered_audio.text_tokens))?;

    let reference = kb.rx.get(kb_reference).expect("reference exists after decision");
    let held: [f64; VIDEO_DIM] = reference.params();
    let recovered_video = match plan.workflow {
        Workflow::V2A => match (video_fit, find(&received, StreamId::M)) {
            (Some(fit), Some(s)) => {
                let fit_codec = fit.codec(codec);
                let values = match (codec.mode, cfg.kb_prior, snr_db) {
                    (CodecMode::Direct, Some(prior), Some(snr)) => {
                        // equalized symbols also carry the pilot-estimate noise
                        let noise = snr_to_noise_power(snr, 1.0) * (1.0 + cfg.layout.estimate_noise_gain());
                        let soft = decode_floats_soft(s, &fit_codec, noise)?;
                        shrink_to_reference(&soft, &held, &prior, codec.float_range)
                    }
                    _ => decode_floats(s, &fit_codec)?,
                };
                let kept = fit.kept_frames(n_frames);
                let frames = VideoSemantics::from_flat(&values)?.frames;
                VideoSemantics {
                    frames: interpolate_frames(&kept, &frames, n_frames),
                }
            }
            _ => VideoSemantics {
                frames: vec![held; n_frames],
            },
        },
        // surrogate predictor: hold the reference pose for the whole segment
        Workflow::A2V => VideoSemantics {
            frames: vec![held; n_frames],
        },
    };
    metrics.akd = mean_akd(&truth_video.frames, &recovered_video.frames)?;

    match plan.workflow {
        Workflow::V2A => {
            let mse = metric(feature_mse(&truth_video.flatten(), &recovered_video.flatten()))?;
            metrics.video_mse = Some(mse);
            metrics.feature_mse = mse;
        }
        Workflow::A2V => {
            if let Some(s) = find(&received, StreamId::P) {
                let d = decode_tokens(s, codec)?;
                metrics.tokens_clamped += d.clamped;
                recovered_audio.phoneme_tokens = d.tokens;
            }
            if !audio.phoneme_tokens.is_empty() {
                metrics.phoneme_wer = Some(metric(wer(&audio.phoneme_tokens, &recovered_audio.phoneme_tokens))?);
            }
            let mut durations: Vec<f64> = match find(&received, StreamId::D) {
                Some(s) => decode_floats(s, codec)?,
                None => Vec::new(),
            };
            // unsent durations are scored as zero
            durations.resize(scaled_durations.len(), 0.0);
            let mse = metric(feature_mse(&scaled_durations, &durations))?;
            metrics.duration_mse = Some(mse);
            metrics.feature_mse = mse;
            recovered_audio.durations_s = durations.iter().map(|d| d / DURATION_SCALE).collect();
        }
    }

    let usage = SegmentUsage {
        m: mux.layout.symbols_for(StreamId::M),
        t: mux.layout.symbols_for(StreamId::T),
        p: mux.layout.symbols_for(StreamId::P),
        d: mux.layout.symbols_for(StreamId::D),
        kb_charge,
    };
    Ok(SegmentResult {
        segment_index: segment.index,
        workflow: plan.workflow,
        kb_level: plan.kb_level,
        kb_action: decision.action,
        kb_charge,
        kb_reference,
        usage,
        video_fit,
        snr_db,
        metrics,
        recovered_video,
        recovered_audio,
    })
}

// ---------------------------------------------------------------- sessions

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SessionConfig {
    pub pipeline: PipelineConfig,
    pub rf: RfParams,
    pub task: TaskSpec,
    pub interval_s: f64,
    pub bandwidth_budget_symbols: usize,
    /// Added to the link-budget SNR to obtain the per-subcarrier operating SNR
    /// of the simulated grid (bandwidth ratio, coding and despreading gains).
    pub snr_offset_db: f64,
    /// Use this operating SNR instead of the link budget when set.
    pub snr_override_db: Option<f64>,
    /// Append outcomes whose metrics meet the task targets to the memory log.
    pub record_outcomes: bool,
    pub seed: u64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            pipeline: PipelineConfig::default(),
            rf: RfParams::default(),
            task: TaskSpec::face_verification(),
            interval_s: 20.0,
            bandwidth_budget_symbols: PilotLayout::default().capacity(),
            snr_offset_db: 0.0,
            snr_override_db: None,
            record_outcomes: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSummary {
    pub interval: usize,
    pub env: EnvReport,
    pub operating_snr_db: f64,
    pub plan: DecisionPlan,
    pub segments: usize,
    pub failures: usize,
    pub mean_akd: f64,
    pub mean_wer: f64,
    pub mean_feature_mse: f64,
    pub semantic_symbols: usize,
    pub kb_symbols: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentFailure {
    pub segment_index: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionOutput {
    pub policy: String,
    pub results: Vec<SegmentResult>,
    pub failures: Vec<SegmentFailure>,
    pub intervals: Vec<IntervalSummary>,
    pub ledger: BandwidthLedger,
    pub kb_in_sync: bool,
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

/// Runs a corpus through a pass: once per interval the environment is
/// summarized and the policy picks a plan, which then drives every segment of
/// that interval.
pub fn run_session(
    policy: &dyn Policy,
    corpus: &SessionCorpus,
    scenario: &Scenario,
    cfg: &SessionConfig,
    memory: &mut MemoryLog,
) -> Result<SessionOutput, PipelineError> {
    let seg_s = corpus.params.segment_duration_s;
    let per_interval = ((cfg.interval_s / seg_s).round() as usize).max(1);
    let mut kb = SharedKb::default();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut intervals = Vec::new();
    let mut kb_in_sync = true;

    for (i, chunk) in corpus.segments.chunks(per_interval).enumerate() {
        let t = scenario.pass.start() + Duration::microseconds((i as f64 * cfg.interval_s * 1e6) as i64);
        let env = summarize_env(scenario, t, &cfg.rf, cfg.bandwidth_budget_symbols)?;
        let snr = cfg.snr_override_db.unwrap_or(env.predicted_snr_db + cfg.snr_offset_db);
        let plan = policy.decide(&cfg.task, &env, memory.records(), &cfg.pipeline.layout);
        crate::agent::validate_plan(&plan, &env, &cfg.pipeline.layout).map_err(PipelineError::Plan)?;

        let mut done = Vec::new();
        let mut failed = 0;
        for seg in chunk {
            let seed = derive_seed(cfg.seed, TAG_SEGMENT_SEED, seg.index as u64);
            match run_segment(&plan, seg, &mut kb, &cfg.pipeline, Some(snr), seed) {
                Ok(r) => done.push(r),
                Err(e) => {
                    failed += 1;
                    failures.push(SegmentFailure {
                        segment_index: seg.index,
                        error: e.to_string(),
                    });
                }
            }
            kb_in_sync &= kb.in_sync();
        }
        let summary = IntervalSummary {
            interval: i,
            operating_snr_db: snr,
            plan: plan.clone(),
            segments: done.len(),
            failures: failed,
            mean_akd: mean(done.iter().map(|r| r.metrics.akd)),
            mean_wer: mean(done.iter().map(|r| r.metrics.wer)),
            mean_feature_mse: mean(done.iter().map(|r| r.metrics.feature_mse)),
            semantic_symbols: done.iter().map(|r| r.usage.semantic()).sum(),
            kb_symbols: done.iter().map(|r| r.kb_charge).sum(),
            env: env.clone(),
        };
        if cfg.record_outcomes && !done.is_empty() {
            let outcome = OutcomeMetrics {
                akd: summary.mean_akd,
                wer: summary.mean_wer,
                feature_mse: summary.mean_feature_mse,
                bandwidth_symbols: (summary.semantic_symbols + summary.kb_symbols) as f64 / done.len() as f64,
            };
            if outcome.meets(&cfg.task.quality_targets) {
                memory.append(MemoryRecord {
                    digest: env.digest(),
                    task_kind: cfg.task.task_kind,
                    plan: plan.clone(),
                    metrics: outcome,
                    timestamp: t,
                })?;
            }
        }
        intervals.push(summary);
        results.extend(done);
    }

    let usages: Vec<SegmentUsage> = results.iter().map(|r| r.usage).collect();
    Ok(SessionOutput {
        policy: policy.name(),
        ledger: account(&usages),
        results,
        failures,
        intervals,
        kb_in_sync,
    })
}
