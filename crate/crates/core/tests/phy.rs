//! Channel and OFDM behaviour checked from outside the crate.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use satsem_core::channel::*;
use satsem_core::ofdm::*;
use satsem_core::rng::stream_rng;

fn qpsk_payload(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = stream_rng(seed, 0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| Complex64::new(if rng.random() { s } else { -s }, if rng.random() { s } else { -s }))
        .collect()
}

#[test]
fn fading_legs_have_unit_average_power() {
    let timing = GridTiming::default();
    let (mut up, mut down, mut n) = (0.0, 0.0, 0usize);
    for seed in 0..4000u64 {
        let cfg = FadingConfig::default().with_seed(seed);
        let r = realize_channel(&cfg, 12, 2, timing).unwrap();
        up += r.h_up.as_slice().iter().map(|h| h.norm_sqr()).sum::<f64>();
        down += r.h_down.as_slice().iter().map(|h| h.norm_sqr()).sum::<f64>();
        n += r.h_up.as_slice().len();
    }
    for p in [up / n as f64, down / n as f64] {
        assert!((p - 1.0).abs() < 0.02, "average leg power {p}");
    }
}

#[test]
fn realization_is_reproducible() {
    let cfg = FadingConfig::default().with_seed(77);
    let a = realize_channel(&cfg, 120, 14, GridTiming::default()).unwrap();
    let b = realize_channel(&cfg, 120, 14, GridTiming::default()).unwrap();
    assert_eq!(a, b);
    let c = realize_channel(&cfg.with_seed(78), 120, 14, GridTiming::default()).unwrap();
    assert_ne!(a, c);
}

#[test]
fn zero_doppler_is_constant_in_time() {
    let cfg = FadingConfig {
        max_doppler_hz: 0.0,
        ..FadingConfig::default().with_seed(5)
    };
    let r = realize_channel(&cfg, 120, 14, GridTiming::default()).unwrap();
    for h in [&r.h_up, &r.h_down] {
        for t in 1..14 {
            assert_eq!(h.column(t), h.column(0));
        }
    }
}

#[test]
fn single_tap_is_flat_in_frequency() {
    let cfg = FadingConfig {
        profile: TapProfile::single_tap(),
        max_doppler_hz: 300.0,
        ..FadingConfig::default().with_seed(9)
    };
    let r = realize_channel(&cfg, 120, 14, GridTiming::default()).unwrap();
    for t in 0..14 {
        let col = r.h_up.column(t);
        assert!(col.iter().all(|h| h.norm() == col[0].norm()));
    }
}

#[test]
fn default_layout_has_thirty_pilots() {
    let l = PilotLayout::default();
    assert_eq!(l.pilots_per_symbol(), 30);
    assert_eq!(l.data_per_symbol(), 90);
    assert_eq!(l.pilot_subcarriers().len() + l.data_subcarriers().len(), l.n_f);
    assert_eq!(l.capacity(), 1260);
}

#[test]
fn noiseless_flat_chain_is_identity() {
    let layout = PilotLayout::default();
    let x = qpsk_payload(3, layout.capacity());
    let cfg = FadingConfig {
        profile: TapProfile::single_tap(),
        max_doppler_hz: 0.0,
        ..FadingConfig::default().with_seed(11)
    };
    let frame = build_frame(&x, &layout).unwrap();
    let ch = realize_channel(&cfg, layout.n_f, layout.n_t, GridTiming::default()).unwrap();
    let y = apply_channel(&frame, &ch, 0.0, 0).unwrap();
    let h = ls_estimate(&y, &layout).unwrap();
    let (eq, report) = equalize(&y, &h).unwrap();
    assert_eq!(report.floored, 0);
    let got = extract_data(&eq, &layout, x.len()).unwrap();
    for (a, b) in got.iter().zip(&x) {
        assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn overflowing_payload_is_rejected() {
    let layout = PilotLayout::default();
    let x = qpsk_payload(1, layout.capacity() + 1);
    assert!(matches!(build_frame(&x, &layout), Err(OfdmError::Overflow { .. })));
}

#[test]
fn zero_estimate_is_floored_and_reported() {
    let layout = PilotLayout::default();
    let y = build_frame(&qpsk_payload(2, 10), &layout).unwrap();
    let zero = satsem_core::grid::ComplexGrid::zeros(layout.n_f, layout.n_t);
    let (eq, report) = equalize(&y, &zero).unwrap();
    assert_eq!(report.floored, layout.n_f * layout.n_t);
    assert!(eq.grid.as_slice().iter().all(|z| z.re.is_finite() && z.im.is_finite()));
}

fn equalization_mse(snr_db: f64, seeds: u64) -> f64 {
    let layout = PilotLayout::default();
    let timing = GridTiming::default();
    let mut total = 0.0;
    for seed in 0..seeds {
        let x = qpsk_payload(seed, layout.capacity());
        let frame = build_frame(&x, &layout).unwrap();
        let ch = realize_channel(&FadingConfig::default().with_seed(seed), layout.n_f, layout.n_t, timing).unwrap();
        let y = apply_channel(&frame, &ch, snr_to_noise_power(snr_db, 1.0), seed ^ 0xABCD).unwrap();
        let h = ls_estimate(&y, &layout).unwrap();
        let (eq, _) = equalize(&y, &h).unwrap();
        let got = extract_data(&eq, &layout, x.len()).unwrap();
        // clip single-symbol blow-ups in deep fades so the average is stable
        total += got.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr().min(4.0)).sum::<f64>() / x.len() as f64;
    }
    total / seeds as f64
}

#[test]
fn equalization_error_falls_with_snr() {
    let curve: Vec<f64> = (0..8).map(|i| equalization_mse(-5.0 + 5.0 * i as f64, 60)).collect();
    for w in curve.windows(2) {
        assert!(w[1] <= w[0], "curve not monotone: {curve:?}");
    }
    assert!(curve[7] < curve[0] / 10.0);
}

#[test]
fn noise_power_matches_requested_snr() {
    let layout = PilotLayout::default();
    let unit = ChannelRealization::identity(layout.n_f, layout.n_t);
    let silent = OfdmFrame::new(satsem_core::grid::ComplexGrid::zeros(layout.n_f, layout.n_t));
    let np = snr_to_noise_power(10.0, 1.0);
    let mut acc = 0.0;
    for seed in 0..200 {
        let y = apply_channel(&silent, &unit, np, seed).unwrap();
        acc += y.grid.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    let measured = acc / (200 * layout.n_f * layout.n_t) as f64;
    assert!((measured / np - 1.0).abs() < 0.01, "noise power {measured} vs {np}");
}

proptest! {
    #[test]
    fn frame_round_trip_is_exact(len in 0usize..=1260, seed in any::<u64>()) {
        let layout = PilotLayout::default();
        let x = qpsk_payload(seed, len);
        let frame = build_frame(&x, &layout).unwrap();
        prop_assert_eq!(extract_data(&frame, &layout, len).unwrap(), x);
    }
}

#[test]
fn estimate_noise_gain_closed_form() {
    // per gap the three data subcarriers get 0.625, 0.5, 0.625; the last three
    // sit past the final pilot
    let hold = PilotLayout::default();
    assert!((hold.estimate_noise_gain() - (29.0 * 1.75 + 3.0) / 90.0).abs() < 1e-12);
    let linear = PilotLayout {
        edge_mode: EdgeMode::Linear,
        ..PilotLayout::default()
    };
    assert!((linear.estimate_noise_gain() - (29.0 * 1.75 + 1.625 + 2.5 + 3.625) / 90.0).abs() < 1e-12);
}

#[test]
fn estimate_noise_gain_matches_simulation() {
    let layout = PilotLayout::default();
    let unit = ChannelRealization::identity(layout.n_f, layout.n_t);
    let frame = build_frame(&qpsk_payload(3, layout.capacity()), &layout).unwrap();
    let np = snr_to_noise_power(5.0, 1.0);
    let data = layout.data_subcarriers();
    let mut acc = 0.0;
    for seed in 0..300 {
        let y = apply_channel(&frame, &unit, np, seed).unwrap();
        let h = ls_estimate(&y, &layout).unwrap();
        for t in 0..layout.n_t {
            acc += data.iter().map(|&k| (h.get(k, t) - 1.0).norm_sqr()).sum::<f64>();
        }
    }
    let measured = acc / (300 * data.len() * layout.n_t) as f64 / np;
    let expected = layout.estimate_noise_gain();
    assert!((measured / expected - 1.0).abs() < 0.03, "{measured} vs {expected}");
}
