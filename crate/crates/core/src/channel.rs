//! Tapped-delay-line fading for the uplink and downlink legs.
//!
//! Each tap carries a complex Gaussian gain and a constant Doppler offset over
//! the frame. The frequency response on the resource grid is
//! `H[k, t] = sum_l h_l * exp(j 2 pi f_l t T_sym) * exp(-j 2 pi k df tau_l)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::ComplexGrid;
use crate::ofdm::OfdmFrame;
use crate::rng::{complex_gaussian, stream_rng};

pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

const STREAM_UP: u64 = 0x0100;
const STREAM_DOWN: u64 = 0x0200;
const STREAM_NOISE: u64 = 0xFF00;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("subcarrier spacing must be positive, got {0}")]
    SubcarrierSpacing(f64),
    #[error("grid dimensions must be positive, got {0}x{1}")]
    Dimensions(usize, usize),
    #[error("invalid tap profile: {0}")]
    Profile(String),
    #[error("invalid fading config: {0}")]
    Config(String),
    #[error("shape mismatch: frame {frame:?}, channel {channel:?}")]
    Shape {
        frame: (usize, usize),
        channel: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TapProfile {
    pub name: String,
    /// Tap delays in units of the delay spread.
    pub delays_norm: Vec<f64>,
    pub powers_db: Vec<f64>,
}

impl TapProfile {
    /// Three-tap NTN-TDL-A (3GPP TR 38.811).
    pub fn ntn_tdl_a() -> Self {
        Self {
            name: "NTN-TDL-A".into(),
            delays_norm: vec![0.0, 1.0811, 2.8416],
            powers_db: vec![0.0, -4.675, -6.482],
        }
    }

    pub fn single_tap() -> Self {
        Self {
            name: "flat".into(),
            delays_norm: vec![0.0],
            powers_db: vec![0.0],
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if self.delays_norm.is_empty() {
            return Err(ChannelError::Profile("no taps".into()));
        }
        if self.delays_norm.len() != self.powers_db.len() {
            return Err(ChannelError::Profile(format!(
                "{} delays but {} powers",
                self.delays_norm.len(),
                self.powers_db.len()
            )));
        }
        if self
            .delays_norm
            .iter()
            .chain(&self.powers_db)
            .any(|v| !v.is_finite())
            || self.delays_norm.iter().any(|&d| d < 0.0)
        {
            return Err(ChannelError::Profile("non-finite or negative entry".into()));
        }
        Ok(())
    }

    /// Linear tap powers scaled to sum to one.
    pub fn normalized_powers(&self) -> Vec<f64> {
        let lin: Vec<f64> = self.powers_db.iter().map(|p| 10f64.powf(p / 10.0)).collect();
        let total: f64 = lin.iter().sum();
        lin.into_iter().map(|p| p / total).collect()
    }
}

impl Default for TapProfile {
    fn default() -> Self {
        Self::ntn_tdl_a()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FadingConfig {
    pub profile: TapProfile,
    pub delay_spread_s: f64,
    pub max_doppler_hz: f64,
    pub seed: u64,
    /// Freeze the channel over the frame (Doppler phase rotation disabled).
    pub block_fading: bool,
}

impl Default for FadingConfig {
    fn default() -> Self {
        Self {
            profile: TapProfile::default(),
            delay_spread_s: 100e-9,
            max_doppler_hz: doppler_hz(3.0 / 3.6, 2.0e9),
            seed: 0,
            block_fading: false,
        }
    }
}

impl FadingConfig {
    pub fn validate(&self) -> Result<(), ChannelError> {
        self.profile.validate()?;
        if !(self.delay_spread_s >= 0.0) {
            return Err(ChannelError::Config("delay_spread_s must be >= 0".into()));
        }
        if !(self.max_doppler_hz >= 0.0) {
            return Err(ChannelError::Config("max_doppler_hz must be >= 0".into()));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

/// Maximum Doppler shift `f v / c` for a terminal moving at `speed_m_per_s`.
pub fn doppler_hz(speed_m_per_s: f64, carrier_hz: f64) -> f64 {
    carrier_hz * speed_m_per_s / SPEED_OF_LIGHT_M_PER_S
}

/// Grid timing used to evaluate frequency responses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridTiming {
    pub subcarrier_spacing_hz: f64,
    pub symbol_duration_s: f64,
}

impl Default for GridTiming {
    /// 15 kHz numerology with a normal cyclic prefix (14 symbols per 1 ms).
    fn default() -> Self {
        Self {
            subcarrier_spacing_hz: 15e3,
            symbol_duration_s: 1e-3 / 14.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    pub h_up: ComplexGrid,
    pub h_down: ComplexGrid,
}

impl ChannelRealization {
    pub fn identity(n_f: usize, n_t: usize) -> Self {
        let one = ComplexGrid::filled(n_f, n_t, Complex64::new(1.0, 0.0));
        Self {
            h_up: one.clone(),
            h_down: one,
        }
    }

    pub fn composite(&self) -> ComplexGrid {
        self.h_down.hadamard(&self.h_up)
    }
}

pub fn realize_channel(
    config: &FadingConfig,
    n_f: usize,
    n_t: usize,
    timing: GridTiming,
) -> Result<ChannelRealization, ChannelError> {
    if !(timing.subcarrier_spacing_hz > 0.0) {
        return Err(ChannelError::SubcarrierSpacing(timing.subcarrier_spacing_hz));
    }
    if n_f == 0 || n_t == 0 {
        return Err(ChannelError::Dimensions(n_f, n_t));
    }
    config.validate()?;
    Ok(ChannelRealization {
        h_up: realize_leg(config, STREAM_UP, n_f, n_t, timing),
        h_down: realize_leg(config, STREAM_DOWN, n_f, n_t, timing),
    })
}

fn realize_leg(
    config: &FadingConfig,
    leg_stream: u64,
    n_f: usize,
    n_t: usize,
    timing: GridTiming,
) -> ComplexGrid {
    struct Tap {
        gain: Complex64,
        doppler_hz: f64,
        delay_s: f64,
    }

    let taps: Vec<Tap> = config
        .profile
        .normalized_powers()
        .into_iter()
        .zip(&config.profile.delays_norm)
        .enumerate()
        .map(|(l, (power, &delay))| {
            let mut rng = stream_rng(config.seed, leg_stream | l as u64);
            let gain = complex_gaussian(&mut rng, power);
            let u: f64 = rng.random();
            Tap {
                gain,
                doppler_hz: (2.0 * u - 1.0) * config.max_doppler_hz,
                delay_s: delay * config.delay_spread_s,
            }
        })
        .collect();

    ComplexGrid::from_fn(n_f, n_t, |k, t| {
        let time = if config.block_fading {
            0.0
        } else {
            t as f64 * timing.symbol_duration_s
        };
        let freq = k as f64 * timing.subcarrier_spacing_hz;
        taps.iter()
            .map(|tap| {
                let phase = 2.0 * PI * (tap.doppler_hz * time - freq * tap.delay_s);
                tap.gain * Complex64::from_polar(1.0, phase)
            })
            .sum()
    })
}

/// `Y = H_down * H_up * X + Z` with `Z` complex Gaussian of the given
/// per-element power, drawn from its own stream of `noise_seed`.
pub fn apply_channel(
    x: &OfdmFrame,
    realization: &ChannelRealization,
    noise_power_linear: f64,
    noise_seed: u64,
) -> Result<OfdmFrame, ChannelError> {
    let shape = x.grid.shape();
    for h in [&realization.h_up, &realization.h_down] {
        if h.shape() != shape {
            return Err(ChannelError::Shape {
                frame: shape,
                channel: h.shape(),
            });
        }
    }
    let mut y = realization.composite().hadamard(&x.grid);
    if noise_power_linear > 0.0 {
        let mut rng = stream_rng(noise_seed, STREAM_NOISE);
        for z in y.as_mut_slice() {
            *z += complex_gaussian(&mut rng, noise_power_linear);
        }
    }
    Ok(OfdmFrame::new(y))
}

pub fn snr_to_noise_power(snr_db: f64, signal_power_linear: f64) -> f64 {
    signal_power_linear / 10f64.powf(snr_db / 10.0)
}
