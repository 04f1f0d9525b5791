//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runtime limits are checked along with the results.

use std::path::Path;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore};

use satsem_cli::commands::simulate::SimSummary;
use satsem_cli::config::{EndpointSpec, PlanSpec};
use satsem_cli::{cmd_agent_case, cmd_kb_sweep, cmd_linkbudget, cmd_simulate, ExperimentConfig};
use satsem_core::agent::{
    case_study_plan, chat_envelope, llm_decide, plan_json, summarize_env, validate_plan, MockClient, TaskSpec,
};
use satsem_core::channel::{apply_channel, realize_channel, FadingConfig, GridTiming, TapProfile};
use satsem_core::kbstore::{UpdateLevel, IMAGE_COST_SYMBOLS};
use satsem_core::linkbudget::{fspl_db, RfParams};
use satsem_core::metrics::average_update_symbols;
use satsem_core::ofdm::{build_frame, equalize, extract_data, ls_estimate, PilotLayout};
use satsem_core::rng::stream_rng;
use satsem_core::scenario::{WeatherClass, Scenario};
use satsem_core::semcodec::qam::{bits_to_symbols, symbols_to_bits};
use satsem_core::semcodec::{CodecConfig, Constellation, TransmissionMethod, Workflow};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_link_budget() -> Outcome {
    // oracle values from an independent high-precision evaluation
    const FSPL: f64 = 154.0236249209525;
    const NOISE: f64 = -100.96488723758829;
    const SNR: f64 = -17.0823626043167;
    let cfg = ExperimentConfig::default();
    check(cfg.rf == RfParams::default(), "default config does not carry the reference RF parameters")?;
    let rows = cmd_linkbudget(&cfg).map_err(|e| e.to_string())?;
    let clear = rows
        .iter()
        .find(|r| r.weather == WeatherClass::Clear)
        .ok_or("no clear-sky row")?;
    for (name, got, want) in [
        ("FSPL up", clear.fspl_up_db, FSPL),
        ("FSPL down", clear.fspl_down_db, FSPL),
        ("N", clear.noise_dbm, NOISE),
        ("SNR", clear.snr_db, SNR),
    ] {
        check((got - want).abs() <= 0.01, format!("{name} = {got}, oracle {want}"))?;
    }
    Ok(format!(
        "FSPL {:.2} dB per leg, N {:.2} dBm, SNR {:.2} dB",
        clear.fspl_up_db, clear.noise_dbm, clear.snr_db
    ))
}

fn c2_distance_doubling() -> Outcome {
    let want = 20.0 * 2f64.log10();
    let mut rng = stream_rng(0xD0B1, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let d = 10f64.powf(rng.random_range(2.0..8.0));
        let f = 10f64.powf(rng.random_range(8.0..11.0));
        worst = worst.max((fspl_db(2.0 * d, f) - fspl_db(d, f) - want).abs());
    }
    check(worst <= 1e-6, format!("largest deviation {worst:e} dB"))?;
    Ok(format!("100 draws, largest deviation from 6.0206 dB: {worst:.1e}"))
}

fn c3_ofdm_identity() -> Outcome {
    let layout = PilotLayout::default();
    let timing = GridTiming::default();
    let mut rng = stream_rng(0x0FD4, 0);
    for i in 0..1000u64 {
        let n = rng.random_range(1..=layout.capacity());
        let c = if i % 2 == 0 { Constellation::Qam16 } else { Constellation::Qam64 };
        let bits: Vec<bool> = (0..n * c.bits_per_symbol()).map(|_| rng.random()).collect();
        let x = bits_to_symbols(&bits, c);
        let flat = FadingConfig {
            profile: TapProfile::single_tap(),
            max_doppler_hz: 0.0,
            ..FadingConfig::default().with_seed(i)
        };
        let ch = realize_channel(&flat, layout.n_f, layout.n_t, timing).map_err(|e| e.to_string())?;
        let frame = build_frame(&x, &layout).map_err(|e| e.to_string())?;
        let y = apply_channel(&frame, &ch, 0.0, i).map_err(|e| e.to_string())?;
        let h = ls_estimate(&y, &layout).map_err(|e| e.to_string())?;
        let (eq, _) = equalize(&y, &h).map_err(|e| e.to_string())?;
        let got = extract_data(&eq, &layout, n).map_err(|e| e.to_string())?;
        check(symbols_to_bits(&got, c) == bits, format!("payload {i} ({n} symbols) not recovered"))?;
    }
    Ok("1000 random payloads of 1..=1260 symbols recovered bit-exactly".into())
}

fn c4_pilots() -> Outcome {
    let l = PilotLayout::default();
    let (p, d) = (l.pilots_per_symbol(), l.data_per_symbol());
    check(p == 30 && d == 90, format!("{p} pilot / {d} data subcarriers"))?;
    check(l.pilot_subcarriers().len() == 30 && l.data_subcarriers().len() == 90, "subcarrier lists disagree")?;
    Ok(format!("{p} pilot + {d} data subcarriers, capacity {}", l.capacity()))
}

fn c5_table_constants() -> Outcome {
    let got: Vec<usize> = TransmissionMethod::ALL.iter().map(|m| m.symbols()).collect();
    let want = [400_991, 54_390, 600, 300, 0, 600, 32_768, 300, 600];
    check(got == want, format!("{got:?}"))?;
    Ok(format!("{got:?}"))
}

fn c6_update_accounting() -> Outcome {
    let avg: Vec<f64> = [17, 27, 50, 100]
        .iter()
        .map(|&c| average_update_symbols(c, 100, IMAGE_COST_SYMBOLS))
        .collect();
    check(avg[0].round() == 2785.0, format!("L0 {}", avg[0]))?;
    check((avg[1] - 4424.0).abs() <= 4.0, format!("L1 {}", avg[1]))?;
    check(avg[2] == 8192.0 && avg[3] == 16384.0, format!("L2/L3 {} {}", avg[2], avg[3]))?;
    Ok(format!("{avg:?}"))
}

fn c7_kb_monotonicity() -> Outcome {
    let mut notes = Vec::new();
    for preset in ["default", "calibrated"] {
        let mut cfg = ExperimentConfig::default();
        cfg.corpus.insert("preset".into(), preset.into());
        cfg.kb_sweep.levels = UpdateLevel::ALL.to_vec();
        let out = cmd_kb_sweep(&cfg).map_err(|e| e.to_string())?;
        check(out.summary.iter().all(|s| s.corpora == 50), "expected 50 corpora")?;
        check(out.violations == 0, format!("{preset}: {} monotonicity violations", out.violations))?;
        let l3 = out.records.iter().filter(|r| r.level == UpdateLevel::L3);
        check(l3.clone().all(|r| r.update_count == 100 && r.segments == 100), format!("{preset}: L3 count != 100"))?;
        let means: Vec<String> = out.summary.iter().map(|s| format!("{:.1}", s.mean_update_count)).collect();
        notes.push(format!("{preset} [{}]", means.join(", ")));
    }
    Ok(format!("0 violations over 50 corpora each; mean counts {}", notes.join(", ")))
}

/// Adjacent increases in a series indexed by SNR, and how many of them are
/// larger than one standard error of either point.
fn inversions(rows: &[&SimSummary], value: fn(&SimSummary) -> f64, se: fn(&SimSummary) -> f64) -> (usize, usize) {
    let mut n = 0;
    let mut large = 0;
    for w in rows.windows(2) {
        let rise = value(w[1]) - value(w[0]);
        if rise > 0.0 {
            n += 1;
            if rise > se(w[0]).max(se(w[1])) {
                large += 1;
            }
        }
    }
    (n, large)
}

fn c8_snr_sweep() -> Outcome {
    let mut cfg = ExperimentConfig::default();
    cfg.codec = CodecConfig::default();
    check(cfg.simulate.snr_db.len() == 12, "expected a 12-point sweep")?;
    check(
        (cfg.simulate.snr_db[0] + 10.0).abs() < 1e-12 && (cfg.simulate.snr_db[11] - 25.0).abs() < 1e-12,
        "sweep must span -10..25 dB",
    )?;
    check(cfg.simulate.trials == 200, "expected 200 seeds per point")?;
    let out = cmd_simulate(&cfg).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for plan in &cfg.simulate.plans {
        let rows: Vec<&SimSummary> = out.summary.iter().filter(|s| s.plan == plan.label).collect();
        for (metric, value, se) in [
            ("WER", (|s: &SimSummary| s.mean_wer) as fn(&SimSummary) -> f64, (|s: &SimSummary| s.se_wer) as fn(&SimSummary) -> f64),
            ("feature-MSE", |s: &SimSummary| s.mean_feature_mse, |s: &SimSummary| s.se_feature_mse),
        ] {
            let (n, large) = inversions(&rows, value, se);
            check(
                n <= 1 && large == 0,
                format!("{} {metric}: {n} inversions, {large} beyond one std-err", plan.label),
            )?;
            notes.push(format!("{} {metric} {n} inv", plan.label));
        }
    }

    cfg.simulate.snr_db = vec![0.0, 20.0];
    let ter = cmd_simulate(&cfg).map_err(|e| e.to_string())?;
    for plan in &cfg.simulate.plans {
        let at = |snr: f64| {
            ter.summary
                .iter()
                .find(|s| s.plan == plan.label && s.snr_db == snr)
                .map(|s| s.token_error_rate)
                .unwrap_or(f64::NAN)
        };
        let (low, high) = (at(0.0), at(20.0));
        check(high * 10.0 <= low, format!("{} TER {high:.4} at 20 dB vs {low:.4} at 0 dB", plan.label))?;
        notes.push(format!("{} TER {low:.3} -> {high:.4}", plan.label));
    }
    Ok(notes.join("; "))
}

fn c9_workflow_asymmetry() -> Outcome {
    let mut cfg = ExperimentConfig::default();
    cfg.corpus.insert("preset".into(), "pose_varying".into());
    cfg.simulate.snr_db = vec![12.0];
    cfg.simulate.trials = 200;
    cfg.simulate.plans = vec![
        PlanSpec {
            label: "V2A-M300".into(),
            m: Some(300),
            ..PlanSpec::preset(Workflow::V2A)
        },
        PlanSpec {
            label: "V2A-M600".into(),
            m: Some(600),
            ..PlanSpec::preset(Workflow::V2A)
        },
        PlanSpec::preset(Workflow::A2V),
    ];
    let out = cmd_simulate(&cfg).map_err(|e| e.to_string())?;
    let akd = |label: &str| -> Vec<f64> { out.records.iter().filter(|r| r.plan == label).map(|r| r.akd).collect() };
    let (m300, m600, a2v) = (akd("V2A-M300"), akd("V2A-M600"), akd("A2V"));
    check(m300.len() == 200 && a2v.len() == 200, "expected 200 trials per plan")?;
    // trials share corpus and channel across plans, so compare paired differences
    let diff: Vec<f64> = m300.iter().zip(&a2v).map(|(v, a)| v - a).collect();
    let n = diff.len() as f64;
    let mean = diff.iter().sum::<f64>() / n;
    let sd = (diff.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let upper = mean + 1.96 * sd / n.sqrt();
    check(upper < 0.0, format!("AKD(V2A) - AKD(A2V) 95% upper bound {upper:.3}"))?;
    let avg = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    check(avg(&m600) < avg(&m300), format!("M600 {:.3} not below M300 {:.3}", avg(&m600), avg(&m300)))?;
    Ok(format!(
        "mean AKD V2A(M300) {:.3}, V2A(M600) {:.3}, A2V {:.3}; paired difference 95% upper bound {upper:.3}",
        avg(&m300),
        avg(&m600),
        avg(&a2v)
    ))
}

/// Replies the parser must reject. Case and `L`-prefix variations of valid
/// values are accepted on purpose, so they are not used here.
fn mutate(rng: &mut impl RngCore, base: &str, class: usize) -> String {
    match class {
        0 => {
            let mut junk = vec![0u8; rng.random_range(1..300)];
            rng.fill_bytes(&mut junk);
            String::from_utf8_lossy(&junk).into_owned()
        }
        1 => base[..rng.random_range(0..base.len() - 1)].to_string(),
        2 => base.replace("\"V2A\"", ["\"X2Y\"", "\"\"", "3", "null", "\"V2AV\""][rng.random_range(0..5)]),
        3 => base.replace("\"m\":600", &format!("\"m\":{}", rng.random_range(1261..100_000))),
        4 => base.replace("\"L2\"", ["\"L9\"", "7", "null", "[]", "\"LL2\""][rng.random_range(0..5)]),
        5 => {
            let a = base.find("\"budgets\"").expect("budgets key");
            let b = a + base[a..].find('}').expect("budgets end") + 2;
            format!("{}{}", &base[..a], &base[b..])
        }
        6 => format!("{base} and also {base}"),
        7 => [" ", "", "null", "{}", "[]"][rng.random_range(0..5)].to_string(),
        8 => base.replace("\"workflow\":\"V2A\"", "\"workflow\":\"A2V\""),
        _ => base.replace("\"t\":300", "\"t\":0"),
    }
}

fn c10_agent_case() -> Outcome {
    let cfg = ExperimentConfig::default();
    check(cfg.agent.endpoint == EndpointSpec::MockCaseStudy, "default endpoint is not the case-study mock")?;
    let out = cmd_agent_case(&cfg).map_err(|e| e.to_string())?;
    let plans: Vec<_> = out.agent.intervals.iter().map(|iv| &iv.plan).collect();
    check(!plans.is_empty(), "no intervals")?;
    check(
        plans.iter().all(|p| p.workflow == Workflow::V2A && p.kb_level == UpdateLevel::L2 && !p.is_fallback()),
        "agent did not choose (V2A, L2) throughout",
    )?;
    let ratio = out.kb_ratio.ok_or("no forced-L3 baseline")?;
    check((0.4..=0.6).contains(&ratio), format!("L2/L3 KB bandwidth ratio {ratio:.3}"))?;

    let mut unreachable = cfg.clone();
    unreachable.agent.endpoint = EndpointSpec::MockUnreachable;
    unreachable.agent.forced_l3_baseline = false;
    let down = cmd_agent_case(&unreachable).map_err(|e| e.to_string())?;
    check(
        down.agent.intervals.iter().all(|iv| iv.plan.is_fallback()),
        "unreachable endpoint did not fall back",
    )?;

    let scenario = Scenario::case_study(cfg.agent.duration_s);
    let layout = PilotLayout::default();
    let task = TaskSpec::face_verification();
    let env = summarize_env(&scenario, scenario.center(), &cfg.rf, cfg.agent.bandwidth_budget_symbols)
        .map_err(|e| e.to_string())?;
    let base = plan_json(&case_study_plan());
    let mut rng = stream_rng(0xF022, 1);
    let mut invalid = 0;
    let mut accepted = 0;
    for i in 0..1000 {
        let reply = mutate(&mut rng, &base, i % 10);
        let body = if i % 20 < 10 { chat_envelope(&reply) } else { reply.clone() };
        let plan = llm_decide(&MockClient::fixed_raw(body), &task, &env, &[], &layout);
        if validate_plan(&plan, &env, &layout).is_err() {
            invalid += 1;
        }
        if !plan.is_fallback() {
            accepted += 1;
        }
    }
    check(invalid == 0, format!("{invalid} invalid plans from malformed replies"))?;
    check(accepted == 0, format!("{accepted} malformed replies were accepted"))?;
    Ok(format!(
        "plan (V2A, L2), KB bandwidth vs forced L3 {ratio:.3}; 1000 malformed replies all fell back to valid plans"
    ))
}

fn c11_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_satsem");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("experiment.toml");
    std::fs::write(&config, "schema_version = 1\nseed = 17\n").map_err(|e| e.to_string())?;
    let run = |cmd: &str, out: &Path, workers: &str| -> Result<(), String> {
        let status = Process::new(bin)
            .args([cmd, "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .args(["--workers", workers])
            .output()
            .map_err(|e| e.to_string())?;
        check(status.status.success(), format!("{cmd} exited with {}", status.status))
    };
    let mut files = 0;
    for cmd in ["linkbudget", "simulate", "kb-sweep", "agent-case"] {
        let runs = [("a", "1"), ("b", "1"), ("c", "4")];
        for (sub, workers) in runs {
            run(cmd, &dir.path().join(sub), workers)?;
        }
        for ext in ["jsonl", "csv"] {
            let name = format!("{cmd}.{ext}");
            let read = |sub: &str| std::fs::read(dir.path().join(sub).join(&name)).map_err(|e| e.to_string());
            let a = read("a")?;
            check(!a.is_empty(), format!("{name} is empty"))?;
            check(a == read("b")?, format!("{name} differs between reruns"))?;
            check(a == read("c")?, format!("{name} differs with 4 workers"))?;
            files += 1;
        }
    }
    Ok(format!("{files} result files byte-identical across reruns and worker counts"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("1 link budget exactness", c1_link_budget, Duration::from_secs(1)),
        ("2 distance-doubling law", c2_distance_doubling, Duration::from_secs(1)),
        ("3 OFDM identity", c3_ofdm_identity, Duration::from_secs(10)),
        ("4 pilot arithmetic", c4_pilots, Duration::from_secs(1)),
        ("5 transmission-method constants", c5_table_constants, Duration::from_secs(1)),
        ("6 update-count accounting", c6_update_accounting, Duration::from_secs(1)),
        ("7 KB monotonicity", c7_kb_monotonicity, Duration::from_secs(30)),
        ("8 cliff/monotonicity sweep", c8_snr_sweep, Duration::from_secs(300)),
        ("9 workflow asymmetry", c9_workflow_asymmetry, Duration::from_secs(300)),
        ("10 agent case study", c10_agent_case, Duration::from_secs(120)),
        ("11 determinism", c11_determinism, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail} (took {took:.1?}, limit {limit:?})")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{took:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{took:.2?}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
