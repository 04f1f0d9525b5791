use std::path::Path;
use std::process::Command as Process;

use satsem_cli::commands::agent_case::{TraceRecord, RUN_AGENT, RUN_FORCED_L3};
use satsem_cli::commands::simulate::SimRecord;
use satsem_cli::config::{EndpointSpec, PolicyKind, SCHEMA_VERSION};
use satsem_cli::output::{read_results, results_path};
use satsem_cli::{cmd_agent_case, cmd_kb_sweep, cmd_linkbudget, cmd_simulate, run, CliError, Command, ExperimentConfig};
use satsem_core::kbstore::{UpdateLevel, IMAGE_COST_SYMBOLS};
use satsem_core::linkbudget::RfParams;
use satsem_core::metrics::{account, SegmentUsage};
use satsem_core::scenario::WeatherClass;

fn small() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.simulate.trials = 4;
    cfg.kb_sweep.corpora = 3;
    cfg
}

fn config_error(text: &str) -> String {
    match ExperimentConfig::from_toml_str(text) {
        Err(CliError::Config(msg)) => msg,
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn config_requires_current_schema_version() {
    assert!(config_error("seed = 1").contains("schema_version"));
    assert!(config_error("schema_version = 2").contains("not supported"));
    let cfg = ExperimentConfig::from_toml_str("schema_version = 1\nseed = 9").unwrap();
    assert_eq!(cfg.seed, 9);
}

#[test]
fn config_rejects_unknown_and_invalid_keys() {
    config_error("schema_version = 1\nsed = 3");
    config_error("schema_version = 1\n[simulate]\nsnr = [1.0]");
    config_error("schema_version = 1\n[corpus]\npreset = \"calibrated\"\nn_user = 3");
    config_error("schema_version = 1\n[corpus]\npreset = \"windy\"");
    config_error("schema_version = 1\n[simulate]\nsnr_db = []");
    config_error("schema_version = 1\n[rf]\npt_dbm = 25.0");
    config_error("schema_version = 1\n[agent.endpoint]\nkind = \"carrier_pigeon\"");
    let dup = "schema_version = 1\n[[simulate.plans]]\nlabel = \"x\"\nworkflow = \"V2A\"\n\
               [[simulate.plans]]\nlabel = \"x\"\nworkflow = \"A2V\"";
    assert!(config_error(dup).contains("duplicate"));
}

#[test]
fn corpus_overrides_apply_over_the_preset() {
    let cfg = ExperimentConfig::from_toml_str(
        "schema_version = 1\n[corpus]\npreset = \"pose_varying\"\nn_segments = 7",
    )
    .unwrap();
    let p = cfg.corpus_params().unwrap();
    assert_eq!(p.n_segments, 7);
    assert_eq!(p.exp_step, satsem_core::scenario::CorpusParams::pose_varying().exp_step);
}

#[test]
fn default_config_survives_a_toml_round_trip() {
    let text = toml::to_string(&ExperimentConfig::default()).unwrap();
    assert_eq!(ExperimentConfig::from_toml_str(&text).unwrap(), ExperimentConfig::default());
}

#[test]
fn zero_gain_budget_is_plain_arithmetic() {
    let mut cfg = ExperimentConfig::default();
    cfg.rf = RfParams {
        gt_dbi: 0.0,
        gr_dbi: 0.0,
        gs_dbi: 0.0,
        ..RfParams::default()
    };
    for r in cmd_linkbudget(&cfg).unwrap() {
        let expected = cfg.rf.pt_dbm - r.fspl_up_db - r.fspl_down_db - r.ra_up_db - r.ra_down_db + r.noise_dbm.abs();
        assert!((r.snr_db - expected).abs() < 1e-9);
    }
}

#[test]
fn rain_lowers_snr_by_exactly_the_rain_attenuation() {
    let rows = cmd_linkbudget(&ExperimentConfig::default()).unwrap();
    let clear = rows.iter().find(|r| r.weather == WeatherClass::Clear).unwrap();
    for r in rows.iter().filter(|r| r.weather != WeatherClass::Clear) {
        assert!(r.ra_up_db > 0.0);
        let drop = clear.snr_db - r.snr_db;
        assert!((drop - (r.ra_up_db + r.ra_down_db)).abs() < 1e-9);
    }
}

#[test]
fn simulate_emits_one_record_per_point_plan_and_trial() {
    let cfg = small();
    let out = cmd_simulate(&cfg).unwrap();
    assert_eq!(out.records.len(), 12 * 2 * 4);
    assert_eq!(out.summary.len(), 12 * 2);
    for (i, r) in out.records.iter().enumerate() {
        assert_eq!(r.snr_index, i / 8);
        assert_eq!(r.trial, i % 4);
    }
}

#[test]
fn trials_share_corpus_and_channel_across_plans_and_points() {
    let out = cmd_simulate(&small()).unwrap();
    let seeds = |r: &SimRecord| (r.trial, r.corpus_seed);
    let first: Vec<_> = out.records[..4].iter().map(seeds).collect();
    for chunk in out.records.chunks(4) {
        assert_eq!(chunk.iter().map(seeds).collect::<Vec<_>>(), first);
    }
}

#[test]
fn default_sweep_curves_fall_with_snr() {
    let out = cmd_simulate(&ExperimentConfig::default()).unwrap();
    for plan in ["V2A", "A2V"] {
        let rows: Vec<_> = out.summary.iter().filter(|s| s.plan == plan).collect();
        let mut inversions = 0;
        for w in rows.windows(2) {
            let rise = w[1].mean_akd - w[0].mean_akd;
            if rise > 0.0 {
                inversions += 1;
                assert!(rise <= w[0].se_akd.max(w[1].se_akd), "{plan} AKD rises by {rise}");
            }
        }
        assert!(inversions <= 1, "{plan}: {inversions} AKD inversions");
    }
}

#[test]
fn kb_sweep_matches_the_update_accounting() {
    let out = cmd_kb_sweep(&small()).unwrap();
    assert_eq!(out.records.len(), 3 * 4);
    for r in &out.records {
        if r.level == UpdateLevel::L3 {
            assert_eq!(r.update_count, r.segments);
        }
        assert_eq!(r.update_symbols, r.update_count * IMAGE_COST_SYMBOLS);
        let avg = (r.update_count * IMAGE_COST_SYMBOLS) as f64 / r.segments as f64;
        assert_eq!(r.avg_update_symbols, avg);
    }
    assert_eq!(out.violations, 0);
}

#[test]
fn agent_case_pairs_the_forced_l3_run() {
    let out = cmd_agent_case(&ExperimentConfig::default()).unwrap();
    let forced = out.forced_l3.as_ref().unwrap();
    assert!(forced.intervals.iter().all(|iv| iv.plan.kb_level == UpdateLevel::L3));
    for (a, f) in out.agent.intervals.iter().zip(&forced.intervals) {
        assert_eq!(a.plan.budgets, f.plan.budgets);
        assert_eq!(a.operating_snr_db, f.operating_snr_db);
    }
    // only the update level differs, so the semantic streams cost the same
    assert_eq!(out.agent.ledger.semantic_total, forced.ledger.semantic_total);
    assert!(out.agent.kb_in_sync && forced.kb_in_sync);
}

#[test]
fn unreachable_endpoints_fall_back_to_valid_plans() {
    let mut cfg = small();
    cfg.agent.forced_l3_baseline = false;
    cfg.agent.endpoint = EndpointSpec::Http {
        url: "http://127.0.0.1:9/v1/chat/completions".into(),
        model: "none".into(),
        token_env: Some("SATSEM_TEST_TOKEN_UNSET".into()),
        timeout_s: 2.0,
    };
    let out = cmd_agent_case(&cfg).unwrap();
    assert!(out.agent.intervals.iter().all(|iv| iv.plan.is_fallback()));
    assert_eq!(out.agent.failures.len(), 0);

    cfg.agent.endpoint = EndpointSpec::MockReply {
        content: "no idea".into(),
    };
    let out = cmd_agent_case(&cfg).unwrap();
    assert!(out.agent.intervals.iter().all(|iv| iv.plan.is_fallback()));
}

#[test]
fn lookup_policy_runs_without_an_endpoint() {
    let mut cfg = small();
    cfg.agent.policy = PolicyKind::Lookup;
    let out = cmd_agent_case(&cfg).unwrap();
    assert_eq!(out.agent.policy, "lookup");
    assert!(out.kb_ratio.is_some());
}

#[test]
fn outcomes_are_recorded_to_the_memory_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.agent.memory_path = Some(dir.path().join("memory.jsonl"));
    cfg.agent.record_outcomes = true;
    cfg.agent.snr_override_db = Some(25.0);
    cfg.agent.task.quality_targets = Default::default();
    cfg.agent.forced_l3_baseline = false;
    let out = cmd_agent_case(&cfg).unwrap();
    let stored = satsem_core::agent::read_memory(&dir.path().join("memory.jsonl")).unwrap();
    assert_eq!(stored.len(), out.agent.intervals.len());
}

fn usages(records: &[serde_json::Value], field: &str) -> Vec<SegmentUsage> {
    records
        .iter()
        .flat_map(|r| serde_json::from_value::<Vec<SegmentUsage>>(r[field].clone()).unwrap())
        .collect()
}

#[test]
fn result_files_reparse_with_exact_ledger_closure() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.output_dir = dir.path().to_path_buf();

    run(Command::AgentCase, &cfg).unwrap();
    let (header, records) = read_results(&results_path(dir.path(), Command::AgentCase)).unwrap();
    assert_eq!(header.schema_version, SCHEMA_VERSION);
    assert_eq!(header.command, "agent-case");
    assert_eq!(header.config.agent, cfg.agent);
    let direct = cmd_agent_case(&cfg).unwrap();
    for (run_name, session) in [(RUN_AGENT, &direct.agent), (RUN_FORCED_L3, direct.forced_l3.as_ref().unwrap())] {
        let trace: Vec<serde_json::Value> = records.iter().filter(|r| r["run"] == run_name).cloned().collect();
        let ledger = account(&usages(&trace, "usage"));
        assert_eq!(ledger, session.ledger);
        let per_interval: Vec<TraceRecord> = trace.iter().map(|r| serde_json::from_value(r.clone()).unwrap()).collect();
        let kb: usize = per_interval.iter().map(|t| t.kb_symbols).sum();
        assert_eq!(kb, ledger.totals.kb_charge);
    }

    run(Command::Simulate, &cfg).unwrap();
    let (_, records) = read_results(&results_path(dir.path(), Command::Simulate)).unwrap();
    let direct = cmd_simulate(&cfg).unwrap();
    assert_eq!(records.len(), direct.records.len());
    let parsed: Vec<SimRecord> = records.iter().map(|r| serde_json::from_value(r.clone()).unwrap()).collect();
    assert_eq!(parsed, direct.records);
    let all: Vec<SegmentUsage> = direct.records.iter().flat_map(|r| r.usage.clone()).collect();
    assert_eq!(account(&usages(&records, "usage")), account(&all));
}

fn satsem(args: &[&str], config: Option<&Path>) -> std::process::Output {
    let mut cmd = Process::new(env!("CARGO_BIN_EXE_satsem"));
    cmd.args(args);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.output().unwrap()
}

#[test]
fn exit_codes_separate_config_and_runtime_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "schema_version = 1\nbogus = true\n").unwrap();
    assert_eq!(satsem(&["linkbudget"], Some(&bad)).status.code(), Some(2));
    assert_eq!(satsem(&["linkbudget"], Some(&dir.path().join("missing.toml"))).status.code(), Some(2));
    assert_eq!(satsem(&["linkbudget", "--workers", "0"], None).status.code(), Some(2));
    assert_eq!(satsem(&["fly"], None).status.code(), Some(2));

    // a file where the output directory should be
    let blocker = dir.path().join("blocker");
    std::fs::write(&blocker, "").unwrap();
    let out = satsem(&["linkbudget", "--out", blocker.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3));

    let ok = satsem(&["linkbudget", "--out", dir.path().join("ok").to_str().unwrap()], None);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("clear"));
}

#[test]
fn seed_flag_overrides_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.toml");
    std::fs::write(&config, "schema_version = 1\nseed = 1\n[kb_sweep]\ncorpora = 2\n").unwrap();
    let read = |sub: &str| std::fs::read(dir.path().join(sub).join("kb-sweep.jsonl")).unwrap();
    for (sub, seed) in [("a", "1"), ("b", "2")] {
        let out = satsem(&["kb-sweep", "--seed", seed, "--out", dir.path().join(sub).to_str().unwrap()], Some(&config));
        assert!(out.status.success());
    }
    let out = satsem(&["kb-sweep", "--out", dir.path().join("c").to_str().unwrap()], Some(&config));
    assert!(out.status.success());
    assert_ne!(read("a"), read("b"));
    assert_eq!(read("a"), read("c"));
}
