//! Two-leg link budget table, one row per weather class.

use serde::{Deserialize, Serialize};

use satsem_core::linkbudget::{link_budget, slant_range, LinkGeometry};
use satsem_core::scenario::{WeatherClass, RAIN_LAW_2GHZ};

use crate::config::ExperimentConfig;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkBudgetRow {
    pub weather: WeatherClass,
    pub rain_rate_mm_per_h: f64,
    pub slant_up_m: f64,
    pub slant_down_m: f64,
    pub fspl_up_db: f64,
    pub fspl_down_db: f64,
    pub ra_up_db: f64,
    pub ra_down_db: f64,
    pub noise_dbm: f64,
    pub snr_db: f64,
}

pub fn cmd_linkbudget(cfg: &ExperimentConfig) -> Result<Vec<LinkBudgetRow>, CliError> {
    let lb = &cfg.linkbudget;
    let up = LinkGeometry::new(lb.altitude_m, lb.elevation_up_deg)?;
    let down = LinkGeometry::new(lb.altitude_m, lb.elevation_down_deg)?;
    lb.weather
        .iter()
        .map(|&class| {
            let w = class.state(RAIN_LAW_2GHZ, lb.effective_path_km);
            let b = link_budget(&cfg.rf, &up, &down, &w, &w)?;
            Ok(LinkBudgetRow {
                weather: class,
                rain_rate_mm_per_h: class.rain_rate_mm_per_h(),
                slant_up_m: slant_range(&up),
                slant_down_m: slant_range(&down),
                fspl_up_db: b.fspl_up_db,
                fspl_down_db: b.fspl_down_db,
                ra_up_db: b.ra_up_db,
                ra_down_db: b.ra_down_db,
                noise_dbm: b.noise_dbm,
                snr_db: b.snr_db,
            })
        })
        .collect()
}
