//! Agent-driven session over the case-study pass, plus an optional paired
//! run that repeats every interval's plan with the update level forced to L3.

use std::cell::RefCell;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use satsem_core::agent::{
    DecisionPlan, EnvReport, HttpClient, LlmPolicy, LookupPolicy, MemoryLog, MemoryRecord, MockClient, Policy,
    TaskSpec,
};
use satsem_core::kbstore::UpdateLevel;
use satsem_core::metrics::SegmentUsage;
use satsem_core::ofdm::PilotLayout;
use satsem_core::pipeline::{run_session, SessionConfig, SessionOutput};
use satsem_core::rng::derive_seed;
use satsem_core::scenario::{generate_corpus, Scenario};
use satsem_core::semcodec::Workflow;

use crate::config::{EndpointSpec, ExperimentConfig, PolicyKind};
use crate::CliError;

const TAG_CORPUS: u64 = 0x4147_4E54;

pub const RUN_AGENT: &str = "agent";
pub const RUN_FORCED_L3: &str = "forced_l3";

/// One line of the decision trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub run: String,
    pub policy: String,
    pub interval: usize,
    pub time_utc: DateTime<Utc>,
    pub satellite_id: String,
    pub altitude_m: f64,
    pub elevation_deg: f64,
    pub predicted_snr_db: f64,
    pub operating_snr_db: f64,
    pub workflow: Workflow,
    pub kb_level: UpdateLevel,
    pub fallback: bool,
    pub plan: DecisionPlan,
    pub segments: usize,
    pub failures: usize,
    pub mean_akd: f64,
    pub mean_wer: f64,
    pub mean_feature_mse: f64,
    pub semantic_symbols: usize,
    pub kb_symbols: usize,
    pub usage: Vec<SegmentUsage>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub run: String,
    pub policy: String,
    pub segments: usize,
    pub failures: usize,
    pub kb_updates: usize,
    pub kb_symbols: usize,
    pub semantic_symbols: usize,
    pub total_symbols: usize,
    pub mean_akd: f64,
    pub mean_wer: f64,
    pub mean_feature_mse: f64,
    pub kb_in_sync: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentCaseOutput {
    pub trace: Vec<TraceRecord>,
    pub summary: Vec<RunSummary>,
    /// KB-update symbols of the agent run over those of the forced-L3 run.
    pub kb_ratio: Option<f64>,
    pub agent: SessionOutput,
    pub forced_l3: Option<SessionOutput>,
}

/// Replays a fixed sequence of plans with the update level overridden.
struct ForcedLevel {
    plans: Vec<DecisionPlan>,
    level: UpdateLevel,
    next: RefCell<usize>,
}

impl Policy for ForcedLevel {
    fn name(&self) -> String {
        format!("forced-{:?}", self.level)
    }

    fn decide(&self, _: &TaskSpec, _: &EnvReport, _: &[MemoryRecord], _: &PilotLayout) -> DecisionPlan {
        let mut i = self.next.borrow_mut();
        let mut plan = self.plans[(*i).min(self.plans.len() - 1)].clone();
        *i += 1;
        plan.kb_level = self.level;
        plan.rationale = format!("forced {:?}; {}", self.level, plan.rationale);
        plan
    }
}

fn make_policy(cfg: &ExperimentConfig) -> Box<dyn Policy> {
    let a = &cfg.agent;
    if a.policy == PolicyKind::Lookup {
        return Box::new(LookupPolicy);
    }
    match &a.endpoint {
        EndpointSpec::MockCaseStudy => Box::new(LlmPolicy(MockClient::case_study())),
        EndpointSpec::MockUnreachable => Box::new(LlmPolicy(MockClient::unreachable())),
        EndpointSpec::MockReply { content } => Box::new(LlmPolicy(MockClient::fixed(content.clone()))),
        spec @ EndpointSpec::Http { .. } => {
            Box::new(LlmPolicy(HttpClient::new(spec.http_config().expect("http endpoint"))))
        }
    }
}

fn trace(run: &str, out: &SessionOutput) -> Vec<TraceRecord> {
    let mut results = out.results.iter();
    out.intervals
        .iter()
        .map(|iv| TraceRecord {
            run: run.into(),
            policy: out.policy.clone(),
            interval: iv.interval,
            time_utc: iv.env.time_utc,
            satellite_id: iv.env.satellite_id.clone(),
            altitude_m: iv.env.altitude_m,
            elevation_deg: iv.env.elevation_deg,
            predicted_snr_db: iv.env.predicted_snr_db,
            operating_snr_db: iv.operating_snr_db,
            workflow: iv.plan.workflow,
            kb_level: iv.plan.kb_level,
            fallback: iv.plan.is_fallback(),
            plan: iv.plan.clone(),
            segments: iv.segments,
            failures: iv.failures,
            mean_akd: iv.mean_akd,
            mean_wer: iv.mean_wer,
            mean_feature_mse: iv.mean_feature_mse,
            semantic_symbols: iv.semantic_symbols,
            kb_symbols: iv.kb_symbols,
            usage: results.by_ref().take(iv.segments).map(|r| r.usage).collect(),
        })
        .collect()
}

fn summarize(run: &str, out: &SessionOutput) -> RunSummary {
    let n = out.results.len().max(1) as f64;
    let avg = |f: fn(&satsem_core::pipeline::SegmentResult) -> f64| out.results.iter().map(f).sum::<f64>() / n;
    RunSummary {
        run: run.into(),
        policy: out.policy.clone(),
        segments: out.results.len(),
        failures: out.failures.len(),
        kb_updates: out.ledger.kb_updates,
        kb_symbols: out.ledger.totals.kb_charge,
        semantic_symbols: out.ledger.semantic_total,
        total_symbols: out.ledger.grand_total,
        mean_akd: avg(|r| r.metrics.akd),
        mean_wer: avg(|r| r.metrics.wer),
        mean_feature_mse: avg(|r| r.metrics.feature_mse),
        kb_in_sync: out.kb_in_sync,
    }
}

pub fn cmd_agent_case(cfg: &ExperimentConfig) -> Result<AgentCaseOutput, CliError> {
    let a = &cfg.agent;
    let params = cfg.corpus_params()?;
    let span_s = params.n_segments as f64 * params.segment_duration_s;
    if span_s > a.duration_s {
        return Err(CliError::Config(format!(
            "corpus spans {span_s} s but the pass window is only {} s",
            a.duration_s
        )));
    }
    let corpus = generate_corpus(derive_seed(cfg.seed, TAG_CORPUS, 0), &params)?;
    let scenario = Scenario::case_study(a.duration_s);
    let session = SessionConfig {
        pipeline: cfg.pipeline.clone(),
        rf: cfg.rf,
        task: a.task.clone(),
        interval_s: a.interval_s,
        bandwidth_budget_symbols: a.bandwidth_budget_symbols,
        snr_offset_db: a.snr_offset_db,
        snr_override_db: a.snr_override_db,
        record_outcomes: a.record_outcomes,
        seed: cfg.seed,
    };

    let mut memory = match &a.memory_path {
        Some(p) => MemoryLog::open(p)?,
        None => MemoryLog::in_memory(Vec::new()),
    };
    let policy = make_policy(cfg);
    let agent = run_session(policy.as_ref(), &corpus, &scenario, &session, &mut memory)?;
    let mut trace_out = trace(RUN_AGENT, &agent);
    let mut summary = vec![summarize(RUN_AGENT, &agent)];

    let mut forced_l3 = None;
    let mut kb_ratio = None;
    if a.forced_l3_baseline && !agent.intervals.is_empty() {
        let forced = ForcedLevel {
            plans: agent.intervals.iter().map(|iv| iv.plan.clone()).collect(),
            level: UpdateLevel::L3,
            next: RefCell::new(0),
        };
        let baseline_cfg = SessionConfig {
            record_outcomes: false,
            ..session
        };
        let out = run_session(&forced, &corpus, &scenario, &baseline_cfg, &mut MemoryLog::in_memory(Vec::new()))?;
        trace_out.extend(trace(RUN_FORCED_L3, &out));
        summary.push(summarize(RUN_FORCED_L3, &out));
        let base = out.ledger.totals.kb_charge;
        if base > 0 {
            kb_ratio = Some(agent.ledger.totals.kb_charge as f64 / base as f64);
        }
        forced_l3 = Some(out);
    }

    Ok(AgentCaseOutput {
        trace: trace_out,
        summary,
        kb_ratio,
        agent,
        forced_l3,
    })
}
