use chrono::{Duration, TimeZone, Utc};
use proptest::prelude::*;
use rand::{Rng, RngCore};
use satsem_core::agent::*;
use satsem_core::kbstore::UpdateLevel;
use satsem_core::linkbudget::{RfParams, WeatherState};
use satsem_core::ofdm::PilotLayout;
use satsem_core::rng::stream_rng;
use satsem_core::scenario::{GeoPoint, Scenario};
use satsem_core::semcodec::{StreamCaps, Workflow, WorkflowBudget};

fn env(snr: f64) -> EnvReport {
    EnvReport {
        satellite_id: "TEST-1".into(),
        time_utc: Utc.with_ymd_and_hms(2025, 12, 9, 12, 0, 0).unwrap(),
        tx: GeoPoint { lat_deg: 32.0, lon_deg: 118.8 },
        rx: GeoPoint { lat_deg: 33.5, lon_deg: 120.1 },
        weather: WeatherState::CLEAR,
        altitude_m: 550e3,
        elevation_deg: 60.0,
        predicted_snr_db: snr,
        bandwidth_budget_symbols: 1260,
    }
}

fn plan(workflow: Workflow, level: UpdateLevel, m: usize) -> DecisionPlan {
    let mut budgets = WorkflowBudget::preset(workflow);
    if workflow == Workflow::V2A {
        budgets.caps.m = m;
    }
    DecisionPlan {
        workflow,
        kb_level: level,
        codec: plan_codec(),
        budgets,
        rationale: String::new(),
    }
}

fn record(env: &EnvReport, plan: DecisionPlan, metrics: OutcomeMetrics, minute: i64) -> MemoryRecord {
    MemoryRecord {
        digest: env.digest(),
        task_kind: TaskKind::FaceVerification,
        plan,
        metrics,
        timestamp: env.time_utc + Duration::minutes(minute),
    }
}

#[test]
fn case_study_endpoint_yields_v2a_l2() {
    let client = MockClient::case_study();
    let e = env(12.0);
    let p = llm_decide(&client, &TaskSpec::face_verification(), &e, &[], &PilotLayout::default());
    assert!(!p.is_fallback(), "{}", p.rationale);
    assert_eq!((p.workflow, p.kb_level), (Workflow::V2A, UpdateLevel::L2));
    assert_eq!(p.budgets.caps, StreamCaps { m: 600, t: 300, p: 0, d: 0 });
    let reqs = client.requests();
    assert_eq!(reqs.len(), 1);
    assert_eq!(reqs[0].messages[0].role, "system");
}

#[test]
fn unreachable_endpoint_falls_back_to_lookup() {
    let e = env(12.0);
    let best = plan(Workflow::V2A, UpdateLevel::L1, 300);
    let memory = vec![
        record(&e, plan(Workflow::A2V, UpdateLevel::L2, 0), OutcomeMetrics { akd: 9.0, ..Default::default() }, 0),
        record(&e, best.clone(), OutcomeMetrics { akd: 3.0, ..Default::default() }, 1),
    ];
    let p = llm_decide(&MockClient::unreachable(), &TaskSpec::face_verification(), &e, &memory, &PilotLayout::default());
    assert!(p.is_fallback());
    assert_eq!((p.workflow, p.kb_level), (best.workflow, best.kb_level));
}

#[test]
fn over_budget_reply_is_rejected() {
    let mut big = case_study_plan();
    big.budgets.caps.m = 5000;
    let client = MockClient::fixed(plan_json(&big));
    let p = llm_decide(&client, &TaskSpec::face_verification(), &env(5.0), &[], &PilotLayout::default());
    assert!(p.is_fallback());
    validate_plan(&p, &env(5.0), &PilotLayout::default()).unwrap();
}

fn mutate(rng: &mut impl RngCore, base: &str) -> String {
    let mut bytes = base.as_bytes().to_vec();
    match rng.random_range(0..6) {
        0 => {
            let mut junk = vec![0u8; rng.random_range(0..200)];
            rng.fill_bytes(&mut junk);
            return String::from_utf8_lossy(&junk).into_owned();
        }
        1 => bytes.truncate(rng.random_range(0..bytes.len())),
        2 => {
            for _ in 0..rng.random_range(1..8) {
                let i = rng.random_range(0..bytes.len());
                bytes[i] = rng.random();
            }
        }
        3 => return base.replace("V2A", ["X2Y", "", "v2a!"][rng.random_range(0..3)]),
        4 => return format!("{base}{base}"),
        _ => {
            let n = rng.random_range(0..100_000u64);
            return base.replace("600", &n.to_string());
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn fuzzed_replies_never_produce_invalid_plans() {
    let base = plan_json(&case_study_plan());
    let layout = PilotLayout::default();
    let task = TaskSpec::face_verification();
    let mut rng = stream_rng(0xF022, 0);
    for i in 0..1000 {
        let reply = mutate(&mut rng, &base);
        let envelope = i % 2 == 0;
        let client = MockClient::fixed_raw(if envelope { chat_envelope(&reply) } else { reply.clone() });
        let e = env(-10.0 + (i % 40) as f64);
        let p = llm_decide(&client, &task, &e, &[], &layout);
        assert!(validate_plan(&p, &e, &layout).is_ok(), "reply {reply:?} gave {p:?}");
    }
}

#[test]
fn lookup_is_deterministic_with_tie_breaks() {
    let e = env(12.0);
    let m = OutcomeMetrics { akd: 2.0, bandwidth_symbols: 900.0, ..Default::default() };
    let cheaper = OutcomeMetrics { bandwidth_symbols: 600.0, ..m };
    let memory = vec![
        record(&e, plan(Workflow::V2A, UpdateLevel::L3, 300), m, 5),
        record(&e, plan(Workflow::V2A, UpdateLevel::L2, 300), cheaper, 9),
        record(&e, plan(Workflow::V2A, UpdateLevel::L1, 300), cheaper, 7),
    ];
    let task = TaskSpec::face_verification();
    let layout = PilotLayout::default();
    let a = lookup_decide(&memory, &task, &e, &layout);
    // equal metric and bandwidth: the earliest record wins
    assert_eq!(a.kb_level, UpdateLevel::L1);
    assert_eq!(a, lookup_decide(&memory, &task, &e, &layout));
    // other buckets are ignored
    assert_eq!(lookup_decide(&memory, &task, &env(30.0), &layout), default_plan(&task, &env(30.0), &layout));
}

#[test]
fn memory_file_persists_across_opens() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memory.jsonl");
    let e = env(7.3);
    let recs: Vec<MemoryRecord> = (0..5)
        .map(|i| record(&e, plan(Workflow::V2A, UpdateLevel::L2, 300), OutcomeMetrics { akd: i as f64 * 0.1, ..Default::default() }, i))
        .collect();
    {
        let mut log = MemoryLog::open(&path).unwrap();
        for r in &recs[..3] {
            log.append(r.clone()).unwrap();
        }
    }
    let mut log = MemoryLog::open(&path).unwrap();
    assert_eq!(log.records(), &recs[..3]);
    for r in &recs[3..] {
        log.append(r.clone()).unwrap();
    }
    assert_eq!(read_memory(&path).unwrap(), recs);
}

#[test]
fn environment_summary_uses_the_link_budget() {
    let sc = Scenario::case_study(600.0);
    let t = sc.pass.culmination().t_utc;
    let rep = summarize_env(&sc, t, &RfParams::default(), 1260).unwrap();
    assert!(rep.predicted_snr_db.is_finite());
    assert!((rep.elevation_deg - 75.0).abs() < 1e-9);
    assert!(summarize_env(&sc, t + Duration::hours(1), &RfParams::default(), 1260).is_err());
}

fn arb_record() -> impl Strategy<Value = MemoryRecord> {
    (
        -20i32..20,
        any::<bool>(),
        0usize..4,
        prop::sample::select(vec![0usize, 150, 300, 600]),
        (0u32..1000, 0u32..1000, 0u32..1000, 0u32..2000),
        0i64..100_000,
        ".{0,20}",
    )
        .prop_map(|(bucket, v2a, lvl, m, (a, w, f, bw), minute, why)| {
            let wf = if v2a { Workflow::V2A } else { Workflow::A2V };
            let mut p = plan(wf, UpdateLevel::ALL[lvl], m.max(1));
            p.rationale = why;
            let mut e = env(f64::from(bucket) * 2.0 + 0.5);
            e.weather = WeatherState::CLEAR;
            record(
                &e,
                p,
                OutcomeMetrics {
                    akd: f64::from(a) / 16.0,
                    wer: f64::from(w) / 1000.0,
                    feature_mse: f64::from(f) / 64.0,
                    bandwidth_symbols: f64::from(bw),
                },
                minute,
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn memory_round_trip_is_lossless(records in prop::collection::vec(arb_record(), 0..20)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.jsonl");
        let mut log = MemoryLog::open(&path).unwrap();
        for r in &records {
            log.append(r.clone()).unwrap();
        }
        prop_assert_eq!(read_memory(&path).unwrap_or_default(), records);
    }

    #[test]
    fn lookup_choice_survives_monotone_rescaling(
        records in prop::collection::vec(arb_record(), 1..40),
        bucket in -20i32..20,
        which in 0usize..3,
    ) {
        let e = env(f64::from(bucket) * 2.0 + 0.5);
        let task = TaskSpec::face_verification();
        let layout = PilotLayout::default();
        let rescale = |x: f64| match which {
            0 => x.exp(),
            1 => 4.0 * x + 1.0,
            _ => x * x * x,
        };
        let scaled: Vec<MemoryRecord> = records
            .iter()
            .cloned()
            .map(|mut r| {
                r.metrics.akd = rescale(r.metrics.akd);
                r
            })
            .collect();
        prop_assert_eq!(
            lookup_decide(&records, &task, &e, &layout),
            lookup_decide(&scaled, &task, &e, &layout)
        );
    }

    #[test]
    fn any_reply_yields_a_valid_plan(reply in ".{0,300}", snr in -30.0f64..40.0) {
        let e = env(snr);
        let layout = PilotLayout::default();
        let p = llm_decide(&MockClient::fixed(reply), &TaskSpec::face_verification(), &e, &[], &layout);
        prop_assert!(validate_plan(&p, &e, &layout).is_ok());
    }
}
