//! Experiment configuration: one TOML file with an explicit schema version.
//! Every section is optional and defaults to the reference deployment.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use satsem_core::agent::{plan_codec, EndpointConfig, TaskSpec};
use satsem_core::kbstore::UpdateLevel;
use satsem_core::linkbudget::RfParams;
use satsem_core::pipeline::PipelineConfig;
use satsem_core::scenario::{CorpusParams, WeatherClass};
use satsem_core::semcodec::{CodecConfig, Workflow};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Required in files; the built-in default carries the current version.
    #[serde(default)]
    pub schema_version: Option<u32>,
    pub seed: u64,
    // where and how fast a run executes does not change its results, so these
    // stay out of the copy recorded in result headers
    #[serde(skip_serializing)]
    pub workers: Option<usize>,
    #[serde(skip_serializing)]
    pub output_dir: PathBuf,
    pub rf: RfParams,
    pub pipeline: PipelineConfig,
    /// Codec for the `simulate` plans that do not set their own. Defaults to
    /// the agent plans' codec: floats directly on I/Q, tokens on QAM.
    pub codec: CodecConfig,
    /// `preset = "default" | "calibrated" | "pose_varying"` plus any
    /// individual corpus parameter to override.
    pub corpus: toml::Table,
    pub linkbudget: LinkBudgetConfig,
    pub simulate: SimulateConfig,
    pub kb_sweep: KbSweepConfig,
    pub agent: AgentConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let mut corpus = toml::Table::new();
        corpus.insert("preset".into(), toml::Value::String("calibrated".into()));
        Self {
            schema_version: Some(SCHEMA_VERSION),
            seed: 0,
            workers: None,
            output_dir: PathBuf::from("out"),
            rf: RfParams::default(),
            pipeline: PipelineConfig::default(),
            codec: plan_codec(),
            corpus,
            linkbudget: LinkBudgetConfig::default(),
            simulate: SimulateConfig::default(),
            kb_sweep: KbSweepConfig::default(),
            agent: AgentConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinkBudgetConfig {
    pub altitude_m: f64,
    pub elevation_up_deg: f64,
    pub elevation_down_deg: f64,
    /// One output row per weather class, applied to both legs.
    pub weather: Vec<WeatherClass>,
    pub effective_path_km: f64,
}

impl Default for LinkBudgetConfig {
    fn default() -> Self {
        Self {
            altitude_m: 600e3,
            elevation_up_deg: 90.0,
            elevation_down_deg: 90.0,
            weather: vec![WeatherClass::Clear, WeatherClass::Light, WeatherClass::Heavy],
            effective_path_km: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    pub label: String,
    pub workflow: Workflow,
    #[serde(default = "default_level")]
    pub kb_level: UpdateLevel,
    /// Overrides the preset 3DMM stream cap.
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub codec: Option<CodecConfig>,
}

fn default_level() -> UpdateLevel {
    UpdateLevel::L2
}

impl PlanSpec {
    pub fn preset(workflow: Workflow) -> Self {
        Self {
            label: format!("{workflow:?}"),
            workflow,
            kb_level: default_level(),
            m: None,
            codec: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateConfig {
    /// Per-subcarrier operating SNR points.
    pub snr_db: Vec<f64>,
    pub plans: Vec<PlanSpec>,
    /// Independent trials per (point, plan); each draws its own corpus.
    pub trials: usize,
    pub segments_per_trial: usize,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            snr_db: (0..12).map(|i| -10.0 + 35.0 * i as f64 / 11.0).collect(),
            plans: vec![PlanSpec::preset(Workflow::V2A), PlanSpec::preset(Workflow::A2V)],
            trials: 200,
            segments_per_trial: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KbSweepConfig {
    pub corpora: usize,
    pub levels: Vec<UpdateLevel>,
}

impl Default for KbSweepConfig {
    fn default() -> Self {
        Self {
            corpora: 50,
            levels: UpdateLevel::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EndpointSpec {
    /// Scripted reply reproducing the reference case-study decision.
    MockCaseStudy,
    /// Every request fails at the transport level.
    MockUnreachable,
    /// Fixed reply content.
    MockReply { content: String },
    Http {
        url: String,
        model: String,
        #[serde(default)]
        token_env: Option<String>,
        #[serde(default = "default_timeout")]
        timeout_s: f64,
    },
}

fn default_timeout() -> f64 {
    satsem_core::agent::DEFAULT_ENDPOINT_TIMEOUT.as_secs_f64()
}

impl EndpointSpec {
    pub fn http_config(&self) -> Option<EndpointConfig> {
        match self {
            EndpointSpec::Http {
                url,
                model,
                token_env,
                timeout_s,
            } => Some(EndpointConfig {
                url: url.clone(),
                model: model.clone(),
                token_env: token_env.clone(),
                timeout_s: *timeout_s,
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    Llm,
    Lookup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AgentConfig {
    pub policy: PolicyKind,
    pub endpoint: EndpointSpec,
    pub task: TaskSpec,
    /// Length of the pass window, centred on culmination.
    pub duration_s: f64,
    pub interval_s: f64,
    pub bandwidth_budget_symbols: usize,
    pub snr_offset_db: f64,
    pub snr_override_db: Option<f64>,
    /// Also run every interval's plan with the update level forced to L3.
    pub forced_l3_baseline: bool,
    pub memory_path: Option<PathBuf>,
    pub record_outcomes: bool,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            policy: PolicyKind::Llm,
            endpoint: EndpointSpec::MockCaseStudy,
            task: TaskSpec::face_verification(),
            duration_s: 600.0,
            interval_s: 20.0,
            bandwidth_budget_symbols: 1260,
            snr_offset_db: 30.0,
            snr_override_db: None,
            forced_l3_baseline: true,
            memory_path: None,
            record_outcomes: false,
        }
    }
}

fn cfg_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| cfg_err(e.to_string()))?;
        match cfg.schema_version {
            Some(SCHEMA_VERSION) => {}
            Some(v) => return Err(cfg_err(format!("schema_version {v} is not supported (expected {SCHEMA_VERSION})"))),
            None => return Err(cfg_err("schema_version is required")),
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| cfg_err(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Corpus parameters after applying the preset and the overrides.
    pub fn corpus_params(&self) -> Result<CorpusParams, CliError> {
        let mut table = self.corpus.clone();
        let base = match table.remove("preset") {
            None => CorpusParams::default(),
            Some(toml::Value::String(p)) => match p.as_str() {
                "default" => CorpusParams::default(),
                "calibrated" => CorpusParams::calibrated(),
                "pose_varying" => CorpusParams::pose_varying(),
                other => return Err(cfg_err(format!("unknown corpus preset {other:?}"))),
            },
            Some(v) => return Err(cfg_err(format!("corpus preset must be a string, got {v}"))),
        };
        let mut merged = match toml::Value::try_from(base).map_err(|e| cfg_err(e.to_string()))? {
            toml::Value::Table(t) => t,
            _ => unreachable!("corpus parameters serialize to a table"),
        };
        merged.extend(table);
        let params: CorpusParams = toml::Value::Table(merged)
            .try_into()
            .map_err(|e: toml::de::Error| cfg_err(format!("corpus: {e}")))?;
        params.validate().map_err(|e| cfg_err(e.to_string()))?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.rf.validate().map_err(|e| cfg_err(e.to_string()))?;
        self.pipeline.layout.validate().map_err(|e| cfg_err(e.to_string()))?;
        self.pipeline.thresholds.validate().map_err(|e| cfg_err(e.to_string()))?;
        self.codec.validate().map_err(|e| cfg_err(e.to_string()))?;
        self.corpus_params()?;
        if self.workers == Some(0) {
            return Err(cfg_err("workers must be at least 1"));
        }

        let lb = &self.linkbudget;
        for e in [lb.elevation_up_deg, lb.elevation_down_deg] {
            if !(e > 0.0 && e <= 90.0) {
                return Err(cfg_err(format!("linkbudget elevation {e} outside (0, 90]")));
            }
        }
        if !(lb.altitude_m > 0.0) || !(lb.effective_path_km >= 0.0) {
            return Err(cfg_err("linkbudget altitude and path must be positive"));
        }

        let s = &self.simulate;
        if s.snr_db.is_empty() || s.snr_db.iter().any(|v| !v.is_finite()) {
            return Err(cfg_err("simulate.snr_db needs finite values"));
        }
        if s.plans.is_empty() || s.trials == 0 || s.segments_per_trial == 0 {
            return Err(cfg_err("simulate needs plans, trials and segments_per_trial"));
        }
        for (i, p) in s.plans.iter().enumerate() {
            if s.plans[..i].iter().any(|q| q.label == p.label) {
                return Err(cfg_err(format!("duplicate plan label {:?}", p.label)));
            }
            if let Some(c) = &p.codec {
                c.validate().map_err(|e| cfg_err(format!("plan {}: {e}", p.label)))?;
            }
        }

        if self.kb_sweep.corpora == 0 || self.kb_sweep.levels.is_empty() {
            return Err(cfg_err("kb_sweep needs corpora and levels"));
        }

        let a = &self.agent;
        if !(a.duration_s > 0.0 && a.interval_s > 0.0) {
            return Err(cfg_err("agent duration_s and interval_s must be positive"));
        }
        if let Some(v) = a.snr_override_db {
            if !v.is_finite() {
                return Err(cfg_err("agent.snr_override_db must be finite"));
            }
        }
        Ok(())
    }
}
