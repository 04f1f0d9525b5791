//! Two-leg satellite relay link budget.
//!
//! All powers are in dBm, antenna gains in dBi, losses in dB. The relay is
//! transparent: uplink and downlink path losses and rain losses add, and the
//! satellite contributes a single equivalent gain.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EARTH_RADIUS_M: f64 = 6_371_000.0;
pub const BOLTZMANN_J_PER_K: f64 = 1.380649e-23;
/// Constant term of the free-space path loss with d in meters and f in hertz.
pub const FSPL_CONSTANT_DB: f64 = 147.56;
pub const DEFAULT_MIN_ELEVATION_DEG: f64 = 5.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkError {
    #[error("altitude must be positive, got {0} m")]
    Altitude(f64),
    #[error("elevation must be in (0, 90] degrees, got {0}")]
    Elevation(f64),
    #[error("elevation {elevation} deg is below the configured minimum {min} deg")]
    BelowMinElevation { elevation: f64, min: f64 },
    #[error("invalid RF parameter {name}: {value}")]
    Rf { name: &'static str, value: f64 },
    #[error("invalid weather parameter {name}: {value}")]
    Weather { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkGeometry {
    pub altitude_m: f64,
    pub elevation_deg: f64,
    #[serde(default = "default_earth_radius")]
    pub earth_radius_m: f64,
}

fn default_earth_radius() -> f64 {
    EARTH_RADIUS_M
}

impl LinkGeometry {
    pub fn new(altitude_m: f64, elevation_deg: f64) -> Result<Self, LinkError> {
        let g = Self {
            altitude_m,
            elevation_deg,
            earth_radius_m: EARTH_RADIUS_M,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), LinkError> {
        if !(self.altitude_m > 0.0) || !self.altitude_m.is_finite() {
            return Err(LinkError::Altitude(self.altitude_m));
        }
        if !(self.elevation_deg > 0.0 && self.elevation_deg <= 90.0) {
            return Err(LinkError::Elevation(self.elevation_deg));
        }
        Ok(())
    }

    /// Like [`validate`](Self::validate) but also enforces an operational
    /// minimum elevation.
    pub fn validate_with_min(&self, min_elevation_deg: f64) -> Result<(), LinkError> {
        self.validate()?;
        if self.elevation_deg < min_elevation_deg {
            return Err(LinkError::BelowMinElevation {
                elevation: self.elevation_deg,
                min: min_elevation_deg,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RfParams {
    pub pt_dbm: f64,
    pub gt_dbi: f64,
    pub gr_dbi: f64,
    /// Equivalent gain of the relay satellite, treated as one opaque term.
    pub gs_dbi: f64,
    pub carrier_hz: f64,
    pub temp_k: f64,
    pub bandwidth_hz: f64,
    pub boltzmann_j_per_k: f64,
}

impl Default for RfParams {
    /// System parameters of the reference deployment at a 2 GHz carrier.
    fn default() -> Self {
        Self {
            pt_dbm: 25.0,
            gt_dbi: 40.0,
            gr_dbi: 40.0,
            gs_dbi: 85.0,
            carrier_hz: 2.0e9,
            temp_k: 290.0,
            bandwidth_hz: 20.0e6,
            boltzmann_j_per_k: BOLTZMANN_J_PER_K,
        }
    }
}

impl RfParams {
    pub fn validate(&self) -> Result<(), LinkError> {
        for (name, v) in [
            ("pt_dbm", self.pt_dbm),
            ("gt_dbi", self.gt_dbi),
            ("gr_dbi", self.gr_dbi),
            ("gs_dbi", self.gs_dbi),
        ] {
            if !v.is_finite() {
                return Err(LinkError::Rf { name, value: v });
            }
        }
        for (name, v) in [
            ("carrier_hz", self.carrier_hz),
            ("temp_k", self.temp_k),
            ("bandwidth_hz", self.bandwidth_hz),
            ("boltzmann_j_per_k", self.boltzmann_j_per_k),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(LinkError::Rf { name, value: v });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeatherState {
    pub gamma_r_db_per_km: f64,
    pub effective_path_km: f64,
}

impl WeatherState {
    pub const CLEAR: WeatherState = WeatherState {
        gamma_r_db_per_km: 0.0,
        effective_path_km: 0.0,
    };

    pub fn validate(&self) -> Result<(), LinkError> {
        if !(self.gamma_r_db_per_km >= 0.0) {
            return Err(LinkError::Weather {
                name: "gamma_r_db_per_km",
                value: self.gamma_r_db_per_km,
            });
        }
        if !(self.effective_path_km >= 0.0) {
            return Err(LinkError::Weather {
                name: "effective_path_km",
                value: self.effective_path_km,
            });
        }
        Ok(())
    }

    /// Builds a weather state from a rainfall rate using the power law
    /// `gamma = kappa * R^alpha`.
    pub fn from_rain_rate(rate_mm_per_h: f64, law: RainLaw, effective_path_km: f64) -> Self {
        Self {
            gamma_r_db_per_km: law.specific_attenuation(rate_mm_per_h),
            effective_path_km,
        }
    }
}

/// Power-law coefficients relating rainfall rate (mm/h) to specific
/// attenuation (dB/km). Coefficients depend on frequency and polarization and
/// must be supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RainLaw {
    pub kappa: f64,
    pub alpha: f64,
}

impl RainLaw {
    pub fn specific_attenuation(&self, rate_mm_per_h: f64) -> f64 {
        if rate_mm_per_h <= 0.0 {
            return 0.0;
        }
        self.kappa * rate_mm_per_h.powf(self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    pub fspl_up_db: f64,
    pub fspl_down_db: f64,
    pub ra_up_db: f64,
    pub ra_down_db: f64,
    pub noise_dbm: f64,
    pub snr_db: f64,
}

impl LinkBudget {
    pub fn fspl_all_db(&self) -> f64 {
        self.fspl_up_db + self.fspl_down_db
    }

    pub fn ra_all_db(&self) -> f64 {
        self.ra_up_db + self.ra_down_db
    }

    /// Recomputes the SNR from the stored components and the RF parameters
    /// that produced them.
    pub fn recompute_snr(&self, rf: &RfParams) -> f64 {
        rf.pt_dbm + rf.gt_dbi + rf.gs_dbi + rf.gr_dbi
            - self.ra_all_db()
            - self.fspl_all_db()
            - self.noise_dbm
    }
}

/// Spherical-Earth slant range from a ground terminal to a satellite.
pub fn slant_range(geometry: &LinkGeometry) -> f64 {
    let re = geometry.earth_radius_m;
    let r = re + geometry.altitude_m;
    let el = geometry.elevation_deg.to_radians();
    let (sin_el, cos_el) = el.sin_cos();
    if geometry.elevation_deg == 90.0 {
        return geometry.altitude_m;
    }
    (r * r - re * re * cos_el * cos_el).sqrt() - re * sin_el
}

pub fn fspl_db(distance_m: f64, carrier_hz: f64) -> f64 {
    20.0 * distance_m.log10() + 20.0 * carrier_hz.log10() - FSPL_CONSTANT_DB
}

pub fn rain_attenuation_db(weather: &WeatherState) -> f64 {
    weather.gamma_r_db_per_km * weather.effective_path_km
}

/// Thermal noise power `k T B`, in dBm.
pub fn noise_power_dbm(rf: &RfParams) -> f64 {
    10.0 * (rf.boltzmann_j_per_k * rf.temp_k * rf.bandwidth_hz).log10() + 30.0
}

pub fn snr_db(rf: &RfParams, fspl_all_db: f64, ra_all_db: f64) -> f64 {
    snr_with_noise_db(rf, fspl_all_db, ra_all_db, noise_power_dbm(rf))
}

fn snr_with_noise_db(rf: &RfParams, fspl_all_db: f64, ra_all_db: f64, noise_dbm: f64) -> f64 {
    rf.pt_dbm + rf.gt_dbi + rf.gs_dbi + rf.gr_dbi - ra_all_db - fspl_all_db - noise_dbm
}

/// Full two-leg budget. Each leg has its own geometry and weather.
pub fn link_budget(
    rf: &RfParams,
    up: &LinkGeometry,
    down: &LinkGeometry,
    weather_up: &WeatherState,
    weather_down: &WeatherState,
) -> Result<LinkBudget, LinkError> {
    rf.validate()?;
    up.validate()?;
    down.validate()?;
    weather_up.validate()?;
    weather_down.validate()?;

    let fspl_up_db = fspl_db(slant_range(up), rf.carrier_hz);
    let fspl_down_db = fspl_db(slant_range(down), rf.carrier_hz);
    let ra_up_db = rain_attenuation_db(weather_up);
    let ra_down_db = rain_attenuation_db(weather_down);
    let noise_dbm = noise_power_dbm(rf);
    let snr_db = snr_with_noise_db(
        rf,
        fspl_up_db + fspl_down_db,
        ra_up_db + ra_down_db,
        noise_dbm,
    );
    Ok(LinkBudget {
        fspl_up_db,
        fspl_down_db,
        ra_up_db,
        ra_down_db,
        noise_dbm,
        snr_db,
    })
}
