use proptest::prelude::*;
use satsem_core::linkbudget::*;

// frozen from an arbitrary-precision evaluation
const FSPL_600KM_2GHZ: f64 = 154.023_624_920_952_5;
const NOISE_DBM: f64 = -100.964_887_237_588_29;
const SNR_TWO_ZENITH_LEGS: f64 = -17.082_362_604_316_7;

fn zenith(alt: f64) -> LinkGeometry {
    LinkGeometry::new(alt, 90.0).unwrap()
}

#[test]
fn reference_budget_matches_oracle() {
    let rf = RfParams::default();
    let g = zenith(600e3);
    let b = link_budget(&rf, &g, &g, &WeatherState::CLEAR, &WeatherState::CLEAR).unwrap();
    assert!((b.fspl_up_db - FSPL_600KM_2GHZ).abs() < 1e-9);
    assert!((b.fspl_down_db - FSPL_600KM_2GHZ).abs() < 1e-9);
    assert!((b.noise_dbm - NOISE_DBM).abs() < 1e-9);
    assert!((b.snr_db - SNR_TWO_ZENITH_LEGS).abs() < 1e-9);
}

#[test]
fn stored_budget_recomputes_its_snr() {
    let rf = RfParams::default();
    let up = LinkGeometry::new(550e3, 37.0).unwrap();
    let down = LinkGeometry::new(550e3, 61.0).unwrap();
    let rain = WeatherState {
        gamma_r_db_per_km: 0.02,
        effective_path_km: 5.0,
    };
    let b = link_budget(&rf, &up, &down, &rain, &WeatherState::CLEAR).unwrap();
    assert!((b.recompute_snr(&rf) - b.snr_db).abs() < 1e-9);
    assert!((b.ra_all_db() - 0.1).abs() < 1e-12);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(LinkGeometry::new(-1.0, 45.0).is_err());
    assert!(LinkGeometry::new(500e3, 0.0).is_err());
    assert!(LinkGeometry::new(500e3, 90.5).is_err());
    let g = LinkGeometry::new(500e3, 3.0).unwrap();
    assert!(matches!(
        g.validate_with_min(DEFAULT_MIN_ELEVATION_DEG),
        Err(LinkError::BelowMinElevation { .. })
    ));
    let rf = RfParams {
        bandwidth_hz: 0.0,
        ..RfParams::default()
    };
    let z = zenith(600e3);
    assert!(link_budget(&rf, &z, &z, &WeatherState::CLEAR, &WeatherState::CLEAR).is_err());
    let wet = WeatherState {
        gamma_r_db_per_km: -0.1,
        effective_path_km: 1.0,
    };
    assert!(link_budget(&RfParams::default(), &z, &z, &wet, &WeatherState::CLEAR).is_err());
}

#[test]
fn zenith_slant_range_is_altitude() {
    for alt in [300e3, 550e3, 600e3, 1200e3] {
        assert_eq!(slant_range(&zenith(alt)), alt);
    }
}

proptest! {
    #[test]
    fn doubling_distance_adds_six_db(d in 1.0f64..1e8, f in 1e6f64..1e11) {
        let delta = fspl_db(2.0 * d, f) - fspl_db(d, f);
        prop_assert!((delta - 20.0 * 2f64.log10()).abs() < 1e-9);
    }

    #[test]
    fn fspl_increases_in_both_arguments(d in 1.0f64..1e8, f in 1e6f64..1e11, k in 1.0001f64..10.0) {
        prop_assert!(fspl_db(d * k, f) > fspl_db(d, f));
        prop_assert!(fspl_db(d, f * k) > fspl_db(d, f));
    }

    #[test]
    fn slant_range_shrinks_with_elevation(alt in 200e3f64..2000e3, e in 1.0f64..89.0, de in 0.01f64..1.0) {
        let lo = slant_range(&LinkGeometry::new(alt, e).unwrap());
        let hi = slant_range(&LinkGeometry::new(alt, e + de).unwrap());
        prop_assert!(hi < lo);
        prop_assert!(hi >= alt);
    }

    #[test]
    fn snr_is_affine_in_power_and_loss(dp in -20.0f64..20.0, dl in -20.0f64..20.0) {
        let rf = RfParams::default();
        let base = snr_db(&rf, 300.0, 1.0);
        let louder = RfParams { pt_dbm: rf.pt_dbm + dp, ..rf };
        prop_assert!((snr_db(&louder, 300.0, 1.0) - base - dp).abs() < 1e-9);
        prop_assert!((snr_db(&rf, 300.0 + dl, 1.0) - base + dl).abs() < 1e-9);
    }

    #[test]
    fn rain_law_is_monotone(r in 0.1f64..100.0, k in 1.01f64..3.0) {
        let law = RainLaw { kappa: 8.47e-5, alpha: 1.0664 };
        prop_assert!(law.specific_attenuation(r * k) > law.specific_attenuation(r));
        let w = WeatherState::from_rain_rate(r, law, 5.0);
        prop_assert!((rain_attenuation_db(&w) - 5.0 * law.specific_attenuation(r)).abs() < 1e-12);
    }
}
