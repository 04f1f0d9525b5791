//! Decision layer: picks the workflow, KB update level, codec settings and
//! symbol budgets for a task in a given link environment.
//!
//! Two policies share one plan format. The lookup policy replays the best past
//! outcome recorded for the same SNR bucket and weather class. The
//! language-model policy asks a completion endpoint for a plan, validates the
//! reply, and falls back to the lookup policy (and from there to a default
//! plan) whenever anything goes wrong.

use std::collections::VecDeque;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use chrono::{DateTime, Utc};
use log::warn;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::kbstore::UpdateLevel;
use crate::linkbudget::{link_budget, LinkError, RfParams, WeatherState};
use crate::ofdm::PilotLayout;
use crate::scenario::{GeoPoint, Scenario, ScenarioError, WeatherClass};
use crate::semcodec::{CodecConfig, CodecMode, StreamCaps, Workflow, WorkflowBudget};

pub const FALLBACK_TAG: &str = "fallback";
pub const DEFAULT_ENDPOINT_TIMEOUT: Duration = Duration::from_secs(30);
/// Width of the SNR buckets used as lookup keys.
pub const SNR_BUCKET_DB: f64 = 2.0;

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("endpoint transport: {0}")]
    Transport(String),
    #[error("endpoint reply: {0}")]
    Reply(String),
    #[error("plan rejected: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("memory file: {0}")]
    Io(#[from] std::io::Error),
    #[error("memory record: {0}")]
    Record(#[from] serde_json::Error),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    FaceVerification,
    VideoConference,
    VoiceDispatch,
    Broadcast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModalityPriority {
    Video,
    Audio,
    Balanced,
}

/// Upper bounds on error metrics a task tolerates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QualityTargets {
    pub max_akd: Option<f64>,
    pub max_wer: Option<f64>,
    pub max_feature_mse: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub task_kind: TaskKind,
    pub modality_priority: ModalityPriority,
    #[serde(default)]
    pub quality_targets: QualityTargets,
}

impl TaskSpec {
    pub fn face_verification() -> Self {
        Self {
            task_kind: TaskKind::FaceVerification,
            modality_priority: ModalityPriority::Video,
            quality_targets: QualityTargets::default(),
        }
    }

    pub fn voice_dispatch() -> Self {
        Self {
            task_kind: TaskKind::VoiceDispatch,
            modality_priority: ModalityPriority::Audio,
            quality_targets: QualityTargets::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvReport {
    pub satellite_id: String,
    pub time_utc: DateTime<Utc>,
    pub tx: GeoPoint,
    pub rx: GeoPoint,
    pub weather: WeatherState,
    pub altitude_m: f64,
    pub elevation_deg: f64,
    pub predicted_snr_db: f64,
    pub bandwidth_budget_symbols: usize,
}

/// Lookup key: 2 dB SNR bucket plus weather class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnvDigest {
    pub snr_bucket: i32,
    pub weather: WeatherClass,
}

impl EnvReport {
    pub fn digest(&self) -> EnvDigest {
        EnvDigest {
            snr_bucket: snr_bucket(self.predicted_snr_db),
            weather: WeatherClass::classify(&self.weather),
        }
    }
}

pub fn snr_bucket(snr_db: f64) -> i32 {
    (snr_db / SNR_BUCKET_DB).floor() as i32
}

/// Composes pass geometry, weather and the link budget at `t`. Both legs see
/// the pass elevation.
pub fn summarize_env(
    scenario: &Scenario,
    t: DateTime<Utc>,
    rf: &RfParams,
    bandwidth_budget_symbols: usize,
) -> Result<EnvReport, AgentError> {
    let sample = scenario.pass.at(t)?;
    let weather = scenario.weather.state_at(t)?;
    let g = sample.geometry();
    let lb = link_budget(rf, &g, &g, &weather, &weather)?;
    Ok(EnvReport {
        satellite_id: scenario.pass.satellite_id.clone(),
        time_utc: t,
        tx: scenario.tx,
        rx: scenario.rx,
        weather,
        altitude_m: sample.altitude_m,
        elevation_deg: sample.elevation_deg,
        predicted_snr_db: lb.snr_db,
        bandwidth_budget_symbols,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionPlan {
    pub workflow: Workflow,
    pub kb_level: UpdateLevel,
    pub codec: CodecConfig,
    pub budgets: WorkflowBudget,
    pub rationale: String,
}

impl DecisionPlan {
    pub fn is_fallback(&self) -> bool {
        self.rationale.starts_with(FALLBACK_TAG)
    }
}

/// Codec used by the built-in plans: floats ride directly on I/Q so that
/// fading degrades them gracefully; tokens always use digital QAM.
pub fn plan_codec() -> CodecConfig {
    CodecConfig {
        mode: CodecMode::Direct,
        ..CodecConfig::default()
    }
}

fn shrink_to(budget: &mut WorkflowBudget, limit: usize) {
    let total = budget.total();
    if total <= limit || total == 0 {
        return;
    }
    let scale = |v: usize| v * limit / total;
    budget.caps = StreamCaps {
        m: scale(budget.caps.m),
        t: scale(budget.caps.t),
        p: scale(budget.caps.p),
        d: scale(budget.caps.d),
    };
}

/// V2A + L2 for video or balanced priority, A2V + L2 for audio priority,
/// with budgets scaled down if the environment allows fewer symbols.
pub fn default_plan(task: &TaskSpec, env: &EnvReport, layout: &PilotLayout) -> DecisionPlan {
    let workflow = match task.modality_priority {
        ModalityPriority::Audio => Workflow::A2V,
        ModalityPriority::Video | ModalityPriority::Balanced => Workflow::V2A,
    };
    let mut budgets = WorkflowBudget::preset(workflow);
    let limit = env.bandwidth_budget_symbols.min(layout.capacity() * budgets.frames);
    shrink_to(&mut budgets, limit);
    DecisionPlan {
        workflow,
        kb_level: UpdateLevel::L2,
        codec: plan_codec(),
        budgets,
        rationale: format!("default plan for {:?} priority", task.modality_priority),
    }
}

pub fn validate_plan(plan: &DecisionPlan, env: &EnvReport, layout: &PilotLayout) -> Result<(), Vec<String>> {
    let mut v = Vec::new();
    if let Err(e) = plan.codec.validate() {
        v.push(e.to_string());
    }
    if let Err(e) = layout.validate() {
        v.push(e.to_string());
    }
    let b = &plan.budgets;
    if b.workflow != plan.workflow {
        v.push(format!("budget workflow {:?} differs from plan workflow {:?}", b.workflow, plan.workflow));
    }
    match plan.workflow {
        Workflow::A2V if b.caps.m != 0 => v.push("A2V carries no video stream".into()),
        Workflow::V2A if b.caps.m == 0 => v.push("V2A needs a video stream".into()),
        _ => {}
    }
    if b.caps.t == 0 {
        v.push("text stream has no symbols".into());
    }
    if b.frames == 0 {
        v.push("at least one frame is required".into());
    }
    if b.total() > env.bandwidth_budget_symbols {
        v.push(format!(
            "budget {} exceeds bandwidth budget {}",
            b.total(),
            env.bandwidth_budget_symbols
        ));
    }
    if b.total() > layout.capacity() * b.frames {
        v.push(format!(
            "budget {} exceeds {} frame(s) of capacity {}",
            b.total(),
            b.frames,
            layout.capacity()
        ));
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

// ---------------------------------------------------------------- memory

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct OutcomeMetrics {
    pub akd: f64,
    pub wer: f64,
    pub feature_mse: f64,
    pub bandwidth_symbols: f64,
}

impl OutcomeMetrics {
    /// The error metric a task with this priority cares about; lower is better.
    pub fn priority(&self, p: ModalityPriority) -> f64 {
        match p {
            ModalityPriority::Video => self.akd,
            ModalityPriority::Audio => self.wer,
            ModalityPriority::Balanced => self.feature_mse,
        }
    }

    pub fn meets(&self, t: &QualityTargets) -> bool {
        t.max_akd.is_none_or(|m| self.akd <= m)
            && t.max_wer.is_none_or(|m| self.wer <= m)
            && t.max_feature_mse.is_none_or(|m| self.feature_mse <= m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryRecord {
    pub digest: EnvDigest,
    pub task_kind: TaskKind,
    pub plan: DecisionPlan,
    pub metrics: OutcomeMetrics,
    pub timestamp: DateTime<Utc>,
}

/// Append-only outcome log, optionally mirrored to a line-delimited file.
#[derive(Debug, Default)]
pub struct MemoryLog {
    records: Vec<MemoryRecord>,
    path: Option<PathBuf>,
}

impl MemoryLog {
    pub fn in_memory(records: Vec<MemoryRecord>) -> Self {
        Self { records, path: None }
    }

    /// Loads existing records from `path` (if the file exists) and appends
    /// future records to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, AgentError> {
        let path = path.as_ref().to_path_buf();
        let records = if path.exists() {
            read_memory(&path)?
        } else {
            Vec::new()
        };
        Ok(Self {
            records,
            path: Some(path),
        })
    }

    pub fn records(&self) -> &[MemoryRecord] {
        &self.records
    }

    pub fn append(&mut self, record: MemoryRecord) -> Result<(), AgentError> {
        if let Some(path) = &self.path {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            let mut line = serde_json::to_vec(&record)?;
            line.push(b'\n');
            f.write_all(&line)?;
            f.flush()?;
        }
        self.records.push(record);
        Ok(())
    }
}

pub fn read_memory(path: &Path) -> Result<Vec<MemoryRecord>, AgentError> {
    let mut out = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- lookup

pub fn lookup_decide(
    memory: &[MemoryRecord],
    task: &TaskSpec,
    env: &EnvReport,
    layout: &PilotLayout,
) -> DecisionPlan {
    let key = env.digest();
    let best = memory
        .iter()
        .filter(|r| r.task_kind == task.task_kind && r.digest == key)
        .filter(|r| validate_plan(&r.plan, env, layout).is_ok())
        .min_by(|a, b| {
            let pa = a.metrics.priority(task.modality_priority);
            let pb = b.metrics.priority(task.modality_priority);
            pa.total_cmp(&pb)
                .then(a.metrics.bandwidth_symbols.total_cmp(&b.metrics.bandwidth_symbols))
                .then(a.timestamp.cmp(&b.timestamp))
        });
    match best {
        Some(r) => DecisionPlan {
            rationale: format!(
                "lookup: best recorded {:?}-priority outcome in SNR bucket {} / {:?}",
                task.modality_priority, key.snr_bucket, key.weather
            ),
            ..r.plan.clone()
        },
        None => default_plan(task, env, layout),
    }
}

// ---------------------------------------------------------------- endpoint

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
}

pub trait CompletionClient {
    /// Sends one request and returns the raw reply body.
    fn complete(&self, request: &CompletionRequest) -> Result<String, AgentError>;

    fn model(&self) -> &str;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointConfig {
    pub url: String,
    pub model: String,
    /// Environment variable holding the bearer token, if any.
    #[serde(default)]
    pub token_env: Option<String>,
    #[serde(default = "default_timeout_s")]
    pub timeout_s: f64,
}

fn default_timeout_s() -> f64 {
    DEFAULT_ENDPOINT_TIMEOUT.as_secs_f64()
}

pub struct HttpClient {
    cfg: EndpointConfig,
    agent: ureq::Agent,
}

impl HttpClient {
    pub fn new(cfg: EndpointConfig) -> Self {
        let agent = ureq::Agent::new_with_config(
            ureq::Agent::config_builder()
                .timeout_global(Some(Duration::from_secs_f64(cfg.timeout_s.max(0.001))))
                .build(),
        );
        Self { cfg, agent }
    }
}

impl CompletionClient for HttpClient {
    fn complete(&self, request: &CompletionRequest) -> Result<String, AgentError> {
        let body = serde_json::to_string(request)?;
        let mut req = self.agent.post(&self.cfg.url).content_type("application/json");
        if let Some(var) = &self.cfg.token_env {
            let token = std::env::var(var)
                .map_err(|_| AgentError::Transport(format!("environment variable {var} is not set")))?;
            req = req.header("Authorization", &format!("Bearer {token}"));
        }
        let mut resp = req
            .send(&body)
            .map_err(|e| AgentError::Transport(e.to_string()))?;
        resp.body_mut()
            .read_to_string()
            .map_err(|e| AgentError::Transport(e.to_string()))
    }

    fn model(&self) -> &str {
        &self.cfg.model
    }
}

type Responder = Box<dyn Fn(&CompletionRequest) -> Result<String, AgentError> + Send + Sync>;

/// In-process endpoint for tests and offline runs.
pub struct MockClient {
    responder: Responder,
    log: Mutex<VecDeque<CompletionRequest>>,
}

impl MockClient {
    pub fn new(f: impl Fn(&CompletionRequest) -> Result<String, AgentError> + Send + Sync + 'static) -> Self {
        Self {
            responder: Box::new(f),
            log: Mutex::new(VecDeque::new()),
        }
    }

    /// Always replies with `content` wrapped in a chat-completion envelope.
    pub fn fixed(content: impl Into<String>) -> Self {
        let content = content.into();
        Self::new(move |_| Ok(chat_envelope(&content)))
    }

    /// Always replies with exactly `body`.
    pub fn fixed_raw(body: impl Into<String>) -> Self {
        let body = body.into();
        Self::new(move |_| Ok(body.clone()))
    }

    pub fn unreachable() -> Self {
        Self::new(|_| Err(AgentError::Transport("connection refused".into())))
    }

    /// Replays the case-study decision: V2A, L2, 600 video + 300 text symbols.
    pub fn case_study() -> Self {
        Self::fixed(format!(
            "Face verification needs identity and motion fidelity, so V2A. \
             The link is stable, so downshift the update level to L2 and move the \
             saved symbols to the 3DMM stream.\n{}",
            plan_json(&case_study_plan())
        ))
    }

    pub fn requests(&self) -> Vec<CompletionRequest> {
        self.log.lock().expect("mock log").iter().cloned().collect()
    }
}

impl CompletionClient for MockClient {
    fn complete(&self, request: &CompletionRequest) -> Result<String, AgentError> {
        self.log.lock().expect("mock log").push_back(request.clone());
        (self.responder)(request)
    }

    fn model(&self) -> &str {
        "mock"
    }
}

pub fn chat_envelope(content: &str) -> String {
    serde_json::json!({
        "choices": [{ "message": { "role": "assistant", "content": content } }]
    })
    .to_string()
}

pub fn case_study_plan() -> DecisionPlan {
    DecisionPlan {
        workflow: Workflow::V2A,
        kb_level: UpdateLevel::L2,
        codec: plan_codec(),
        budgets: WorkflowBudget {
            workflow: Workflow::V2A,
            caps: StreamCaps {
                m: 600,
                t: 300,
                p: 0,
                d: 0,
            },
            frames: 1,
        },
        rationale: "stable link: L2 updates, saved symbols moved to the 3DMM stream".into(),
    }
}

/// Wire form of a plan as exchanged with the endpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WirePlan {
    workflow: String,
    kb_level: Value,
    #[serde(default)]
    codec: Option<CodecConfig>,
    budgets: WireBudgets,
    #[serde(default)]
    rationale: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireBudgets {
    #[serde(default)]
    m: usize,
    #[serde(default)]
    t: usize,
    #[serde(default)]
    p: usize,
    #[serde(default)]
    d: usize,
    #[serde(default = "one")]
    frames: usize,
}

fn one() -> usize {
    1
}

pub fn plan_json(plan: &DecisionPlan) -> String {
    let wire = WirePlan {
        workflow: format!("{:?}", plan.workflow),
        kb_level: Value::String(format!("{:?}", plan.kb_level)),
        codec: Some(plan.codec.clone()),
        budgets: WireBudgets {
            m: plan.budgets.caps.m,
            t: plan.budgets.caps.t,
            p: plan.budgets.caps.p,
            d: plan.budgets.caps.d,
            frames: plan.budgets.frames,
        },
        rationale: Some(plan.rationale.clone()),
    };
    serde_json::to_string(&wire).expect("plan serializes")
}

fn parse_level(v: &Value) -> Option<UpdateLevel> {
    let idx = match v {
        Value::String(s) => {
            let s = s.trim();
            let digits = s.strip_prefix('L').or_else(|| s.strip_prefix('l')).unwrap_or(s);
            digits.parse::<u64>().ok()?
        }
        Value::Number(n) => n.as_u64()?,
        _ => return None,
    };
    UpdateLevel::ALL.get(usize::try_from(idx).ok()?).copied()
}

fn from_wire(w: WirePlan) -> Result<DecisionPlan, Vec<String>> {
    let mut v = Vec::new();
    let workflow = match w.workflow.trim().to_ascii_uppercase().as_str() {
        "V2A" => Some(Workflow::V2A),
        "A2V" => Some(Workflow::A2V),
        other => {
            v.push(format!("unknown workflow {other:?}"));
            None
        }
    };
    let level = parse_level(&w.kb_level);
    if level.is_none() {
        v.push(format!("kb_level {} is not one of L0..L3", w.kb_level));
    }
    match (workflow, level) {
        (Some(workflow), Some(kb_level)) if v.is_empty() => Ok(DecisionPlan {
            workflow,
            kb_level,
            codec: w.codec.unwrap_or_else(plan_codec),
            budgets: WorkflowBudget {
                workflow,
                caps: StreamCaps {
                    m: w.budgets.m,
                    t: w.budgets.t,
                    p: w.budgets.p,
                    d: w.budgets.d,
                },
                frames: w.budgets.frames,
            },
            rationale: w.rationale.unwrap_or_default(),
        }),
        _ => Err(v),
    }
}

/// Top-level `{...}` spans in `text`, skipping braces inside JSON strings.
fn json_object_spans(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut spans = Vec::new();
    let (mut depth, mut start, mut in_str, mut escape) = (0usize, 0usize, false, false);
    for (i, &b) in bytes.iter().enumerate() {
        if in_str {
            match (escape, b) {
                (true, _) => escape = false,
                (false, b'\\') => escape = true,
                (false, b'"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match b {
            b'"' if depth > 0 => in_str = true,
            b'{' => {
                if depth == 0 {
                    start = i;
                }
                depth += 1;
            }
            b'}' if depth > 0 => {
                depth -= 1;
                if depth == 0 {
                    spans.push(&text[start..=i]);
                }
            }
            _ => {}
        }
    }
    spans
}

/// Extracts the message content from a reply body. Accepts a chat-completion
/// envelope, a `{"content": ...}` object, or bare text.
pub fn reply_content(body: &str) -> String {
    if let Ok(v) = serde_json::from_str::<Value>(body) {
        if let Some(c) = v
            .pointer("/choices/0/message/content")
            .or_else(|| v.get("content"))
            .and_then(Value::as_str)
        {
            return c.to_string();
        }
    }
    body.to_string()
}

/// Parses exactly one plan object out of the message content.
pub fn parse_plan(content: &str) -> Result<DecisionPlan, AgentError> {
    let mut plans = Vec::new();
    let mut problems = Vec::new();
    for span in json_object_spans(content) {
        match serde_json::from_str::<WirePlan>(span) {
            Ok(w) => plans.push(from_wire(w)),
            Err(e) => problems.push(e.to_string()),
        }
    }
    match plans.len() {
        0 => Err(AgentError::Reply(match problems.first() {
            Some(p) => format!("no plan object found ({p})"),
            None => "no plan object found".into(),
        })),
        1 => plans.pop().expect("one").map_err(AgentError::Invalid),
        n => Err(AgentError::Reply(format!("expected one plan object, found {n}"))),
    }
}

const SYSTEM_PROMPT: &str = "You plan semantic transmission over a satellite relay. \
Reply with one JSON object and nothing else that looks like JSON. Schema: \
{\"workflow\": \"V2A\" | \"A2V\", \"kb_level\": \"L0\" | \"L1\" | \"L2\" | \"L3\", \
\"codec\": {\"mode\": \"digital\" | \"direct\", \"float_bits\": 4 | 8 | 12 | 16, \"float_range\": number, \
\"constellation\": \"qam16\" | \"qam64\", \"repetition\": integer >= 1, \"text_vocab\": integer, \
\"phoneme_vocab\": integer}, \"budgets\": {\"m\": int, \"t\": int, \"p\": int, \"d\": int, \"frames\": int}, \
\"rationale\": string}. V2A sends 3DMM motion (m) and text (t); A2V sends text, phonemes (p) and \
durations (d) with m = 0. The budget total must not exceed the bandwidth budget or the frame capacity.";

pub fn build_request(
    model: &str,
    task: &TaskSpec,
    env: &EnvReport,
    memory: &[MemoryRecord],
    layout: &PilotLayout,
) -> CompletionRequest {
    let key = env.digest();
    let similar: Vec<Value> = memory
        .iter()
        .filter(|r| r.task_kind == task.task_kind && r.digest.weather == key.weather)
        .filter(|r| (r.digest.snr_bucket - key.snr_bucket).abs() <= 1)
        .take(16)
        .map(|r| {
            serde_json::json!({
                "snr_bucket": r.digest.snr_bucket,
                "workflow": r.plan.workflow,
                "kb_level": r.plan.kb_level,
                "budget": r.plan.budgets.total(),
                "akd": r.metrics.akd,
                "wer": r.metrics.wer,
                "feature_mse": r.metrics.feature_mse,
                "bandwidth": r.metrics.bandwidth_symbols,
            })
        })
        .collect();
    let user = serde_json::json!({
        "task": task,
        "environment": env,
        "frame_capacity_symbols": layout.capacity(),
        "memory": similar,
    });
    CompletionRequest {
        model: model.to_string(),
        messages: vec![
            ChatMessage {
                role: "system".into(),
                content: SYSTEM_PROMPT.into(),
            },
            ChatMessage {
                role: "user".into(),
                content: user.to_string(),
            },
        ],
    }
}

fn endpoint_plan(
    client: &dyn CompletionClient,
    task: &TaskSpec,
    env: &EnvReport,
    memory: &[MemoryRecord],
    layout: &PilotLayout,
) -> Result<DecisionPlan, AgentError> {
    let req = build_request(client.model(), task, env, memory, layout);
    let body = client.complete(&req)?;
    let plan = parse_plan(&reply_content(&body))?;
    validate_plan(&plan, env, layout).map_err(AgentError::Invalid)?;
    Ok(plan)
}

/// Asks the endpoint for a plan; any failure yields the lookup plan (or the
/// default) with its rationale tagged as a fallback.
pub fn llm_decide(
    client: &dyn CompletionClient,
    task: &TaskSpec,
    env: &EnvReport,
    memory: &[MemoryRecord],
    layout: &PilotLayout,
) -> DecisionPlan {
    match endpoint_plan(client, task, env, memory, layout) {
        Ok(p) => p,
        Err(e) => {
            warn!("endpoint plan unusable, falling back: {e}");
            let mut plan = lookup_decide(memory, task, env, layout);
            if validate_plan(&plan, env, layout).is_err() {
                plan = default_plan(task, env, layout);
            }
            plan.rationale = format!("{FALLBACK_TAG}: {e}; {}", plan.rationale);
            plan
        }
    }
}

/// Source of plans for a session.
pub trait Policy {
    fn name(&self) -> String;

    fn decide(
        &self,
        task: &TaskSpec,
        env: &EnvReport,
        memory: &[MemoryRecord],
        layout: &PilotLayout,
    ) -> DecisionPlan;
}

pub struct LookupPolicy;

impl Policy for LookupPolicy {
    fn name(&self) -> String {
        "lookup".into()
    }

    fn decide(&self, task: &TaskSpec, env: &EnvReport, memory: &[MemoryRecord], layout: &PilotLayout) -> DecisionPlan {
        lookup_decide(memory, task, env, layout)
    }
}

/// Always returns the same plan (e.g. the forced-L3 baseline).
pub struct FixedPolicy(pub DecisionPlan);

impl Policy for FixedPolicy {
    fn name(&self) -> String {
        format!("fixed-{:?}-{:?}", self.0.workflow, self.0.kb_level)
    }

    fn decide(&self, _: &TaskSpec, _: &EnvReport, _: &[MemoryRecord], _: &PilotLayout) -> DecisionPlan {
        self.0.clone()
    }
}

pub struct LlmPolicy<C: CompletionClient>(pub C);

impl<C: CompletionClient> Policy for LlmPolicy<C> {
    fn name(&self) -> String {
        format!("llm-{}", self.0.model())
    }

    fn decide(&self, task: &TaskSpec, env: &EnvReport, memory: &[MemoryRecord], layout: &PilotLayout) -> DecisionPlan {
        llm_decide(&self.0, task, env, memory, layout)
    }
}
