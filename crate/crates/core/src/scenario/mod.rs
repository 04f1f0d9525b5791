//! Deterministic synthetic world: satellite passes, weather, and multi-segment
//! audiovisual session corpora.
//!
//! Everything here is a pure function of a seed and a parameter set. Faces are
//! stand-ins: identities are random unit vectors, poses follow a bounded random
//! walk, pixels come from a small analytic render driven by rotation and
//! translation, and keypoints are a fixed affine map of the 12 transmitted
//! 3DMM coefficients.

mod archive;
mod keypoint_table;

pub use archive::{read_archive, write_archive, ARCHIVE_MAGIC};

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kbstore::{GrayFrame, ReferenceEntry, EMBEDDING_DIM, FRAME_SIDE};
use crate::linkbudget::{LinkGeometry, RainLaw, WeatherState};
use crate::rng::{derive_seed, standard_normal, stream_rng, SimRng};
use crate::semcodec::{AudioSemantics, VideoSemantics, VIDEO_DIM};

pub const N_KEYPOINTS: usize = 68;

const TAG_PASS: u64 = 0x5041_5353;
const TAG_WEATHER: u64 = 0x5745_4154;
const TAG_USERS: u64 = 0x5553_4552;
const TAG_SEGMENT: u64 = 0x5345_474D;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid scenario parameter {name}: {reason}")]
    Param { name: &'static str, reason: String },
    #[error("time {0} is outside the scenario timeline")]
    OutsideTimeline(DateTime<Utc>),
    #[error("corpus archive: {0}")]
    Archive(String),
    #[error("corpus archive io: {0}")]
    Io(#[from] std::io::Error),
}

fn param(name: &'static str, reason: impl Into<String>) -> ScenarioError {
    ScenarioError::Param {
        name,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat_deg: f64,
    pub lon_deg: f64,
}

// ---------------------------------------------------------------- passes

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassSample {
    pub t_utc: DateTime<Utc>,
    pub altitude_m: f64,
    pub elevation_deg: f64,
}

impl PassSample {
    pub fn geometry(&self) -> LinkGeometry {
        LinkGeometry {
            altitude_m: self.altitude_m,
            elevation_deg: self.elevation_deg,
            earth_radius_m: crate::linkbudget::EARTH_RADIUS_M,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PassConfig {
    pub satellite_id: String,
    pub start_utc: DateTime<Utc>,
    pub duration_s: f64,
    pub sample_period_s: f64,
    pub altitude_min_m: f64,
    pub altitude_max_m: f64,
    pub min_elevation_deg: f64,
    /// Culmination elevation; drawn in `[30, 90)` degrees when absent.
    pub max_elevation_deg: Option<f64>,
}

impl Default for PassConfig {
    fn default() -> Self {
        Self {
            satellite_id: "SIM-0001".into(),
            start_utc: Utc.with_ymd_and_hms(2025, 12, 9, 11, 55, 0).unwrap(),
            duration_s: 600.0,
            sample_period_s: 1.0,
            altitude_min_m: 300e3,
            altitude_max_m: 1_200e3,
            min_elevation_deg: crate::linkbudget::DEFAULT_MIN_ELEVATION_DEG,
            max_elevation_deg: None,
        }
    }
}

impl PassConfig {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.duration_s > 0.0 && self.duration_s.is_finite()) {
            return Err(param("duration_s", "must be positive"));
        }
        if !(self.sample_period_s > 0.0 && self.sample_period_s <= self.duration_s) {
            return Err(param("sample_period_s", "must be in (0, duration_s]"));
        }
        if !(self.altitude_min_m > 0.0 && self.altitude_min_m <= self.altitude_max_m) {
            return Err(param("altitude band", "need 0 < min <= max"));
        }
        if !(self.min_elevation_deg > 0.0 && self.min_elevation_deg < 90.0) {
            return Err(param("min_elevation_deg", "must be in (0, 90)"));
        }
        if let Some(e) = self.max_elevation_deg {
            if !(e >= self.min_elevation_deg && e <= 90.0) {
                return Err(param("max_elevation_deg", "must be in [min_elevation_deg, 90]"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassTimeline {
    pub satellite_id: String,
    pub samples: Vec<PassSample>,
}

impl PassTimeline {
    pub fn start(&self) -> DateTime<Utc> {
        self.samples[0].t_utc
    }

    pub fn end(&self) -> DateTime<Utc> {
        self.samples[self.samples.len() - 1].t_utc
    }

    pub fn contains(&self, t: DateTime<Utc>) -> bool {
        t >= self.start() && t <= self.end()
    }

    pub fn culmination(&self) -> &PassSample {
        self.samples
            .iter()
            .fold(&self.samples[0], |b, s| if s.elevation_deg > b.elevation_deg { s } else { b })
    }

    /// Linearly interpolated sample at `t`.
    pub fn at(&self, t: DateTime<Utc>) -> Result<PassSample, ScenarioError> {
        if !self.contains(t) {
            return Err(ScenarioError::OutsideTimeline(t));
        }
        let i = self.samples.partition_point(|s| s.t_utc <= t);
        if i == 0 {
            return Ok(self.samples[0]);
        }
        let a = self.samples[i - 1];
        if i == self.samples.len() || a.t_utc == t {
            return Ok(a);
        }
        let b = self.samples[i];
        let span = (b.t_utc - a.t_utc).num_microseconds().unwrap_or(1) as f64;
        let w = (t - a.t_utc).num_microseconds().unwrap_or(0) as f64 / span;
        Ok(PassSample {
            t_utc: t,
            altitude_m: a.altitude_m + w * (b.altitude_m - a.altitude_m),
            elevation_deg: a.elevation_deg + w * (b.elevation_deg - a.elevation_deg),
        })
    }
}

fn offset(start: DateTime<Utc>, seconds: f64) -> DateTime<Utc> {
    start + Duration::microseconds((seconds * 1e6).round() as i64)
}

/// Rise, culminate and set over `duration_s`; altitude is drawn once per pass.
pub fn generate_pass(seed: u64, cfg: &PassConfig) -> Result<PassTimeline, ScenarioError> {
    cfg.validate()?;
    let mut rng = stream_rng(derive_seed(seed, TAG_PASS, 0), 0);
    let altitude_m = if cfg.altitude_max_m > cfg.altitude_min_m {
        rng.random_range(cfg.altitude_min_m..=cfg.altitude_max_m)
    } else {
        cfg.altitude_min_m
    };
    let peak = match cfg.max_elevation_deg {
        Some(e) => e,
        None => rng.random_range(30.0..90.0),
    };
    let n = (cfg.duration_s / cfg.sample_period_s).floor() as usize;
    let samples = (0..=n)
        .map(|i| {
            let t = i as f64 * cfg.sample_period_s;
            let phase = (std::f64::consts::PI * t / cfg.duration_s).sin().max(0.0);
            PassSample {
                t_utc: offset(cfg.start_utc, t),
                altitude_m,
                elevation_deg: cfg.min_elevation_deg + (peak - cfg.min_elevation_deg) * phase,
            }
        })
        .collect();
    Ok(PassTimeline {
        satellite_id: cfg.satellite_id.clone(),
        samples,
    })
}

// ---------------------------------------------------------------- weather

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeatherClass {
    Clear,
    Light,
    Heavy,
}

/// ITU-style power law near 2 GHz, horizontal polarization.
pub const RAIN_LAW_2GHZ: RainLaw = RainLaw {
    kappa: 0.000_084_7,
    alpha: 1.0664,
};

impl WeatherClass {
    pub fn rain_rate_mm_per_h(self) -> f64 {
        match self {
            WeatherClass::Clear => 0.0,
            WeatherClass::Light => 5.0,
            WeatherClass::Heavy => 25.0,
        }
    }

    pub fn state(self, law: RainLaw, effective_path_km: f64) -> WeatherState {
        match self {
            WeatherClass::Clear => WeatherState::CLEAR,
            c => WeatherState::from_rain_rate(c.rain_rate_mm_per_h(), law, effective_path_km),
        }
    }

    /// Bucket for an arbitrary weather state by its rain attenuation.
    pub fn classify(w: &WeatherState) -> Self {
        let ra = w.gamma_r_db_per_km * w.effective_path_km;
        if ra <= 0.0 {
            WeatherClass::Clear
        } else if w.gamma_r_db_per_km <= RAIN_LAW_2GHZ.specific_attenuation(10.0) {
            WeatherClass::Light
        } else {
            WeatherClass::Heavy
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherTimeline {
    pub start_utc: DateTime<Utc>,
    pub period_s: f64,
    pub classes: Vec<WeatherClass>,
    pub effective_path_km: f64,
}

impl WeatherTimeline {
    pub fn constant(start_utc: DateTime<Utc>, duration_s: f64, class: WeatherClass) -> Self {
        Self {
            start_utc,
            period_s: duration_s.max(1.0),
            classes: vec![class],
            effective_path_km: 5.0,
        }
    }

    pub fn class_at(&self, t: DateTime<Utc>) -> Result<WeatherClass, ScenarioError> {
        let dt = (t - self.start_utc).num_microseconds().unwrap_or(i64::MAX) as f64 / 1e6;
        if dt < 0.0 {
            return Err(ScenarioError::OutsideTimeline(t));
        }
        let i = ((dt / self.period_s).floor() as usize).min(self.classes.len() - 1);
        Ok(self.classes[i])
    }

    pub fn state_at(&self, t: DateTime<Utc>) -> Result<WeatherState, ScenarioError> {
        Ok(self.class_at(t)?.state(RAIN_LAW_2GHZ, self.effective_path_km))
    }
}

/// Three-state Markov weather with persistence `stay` per period.
pub fn generate_weather(
    seed: u64,
    start_utc: DateTime<Utc>,
    duration_s: f64,
    period_s: f64,
    stay: f64,
) -> Result<WeatherTimeline, ScenarioError> {
    if !(period_s > 0.0 && duration_s > 0.0) {
        return Err(param("weather period", "must be positive"));
    }
    if !(0.0..=1.0).contains(&stay) {
        return Err(param("stay", "must be a probability"));
    }
    let mut rng = stream_rng(derive_seed(seed, TAG_WEATHER, 0), 0);
    let n = (duration_s / period_s).ceil() as usize;
    let mut cur = WeatherClass::Clear;
    let mut classes = Vec::with_capacity(n);
    for _ in 0..n {
        classes.push(cur);
        if !rng.random_bool(stay) {
            cur = match (cur, rng.random_bool(0.5)) {
                (WeatherClass::Clear, _) => WeatherClass::Light,
                (WeatherClass::Light, true) => WeatherClass::Heavy,
                (WeatherClass::Light, false) => WeatherClass::Clear,
                (WeatherClass::Heavy, _) => WeatherClass::Light,
            };
        }
    }
    Ok(WeatherTimeline {
        start_utc,
        period_s,
        classes,
        effective_path_km: 5.0,
    })
}

/// A pass, the weather over it, and the two ground terminals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub pass: PassTimeline,
    pub weather: WeatherTimeline,
    pub tx: GeoPoint,
    pub rx: GeoPoint,
}

impl Scenario {
    /// Starlink-like pass centered on 2025-12-09 12:00:00 UTC over two
    /// terminals near Nanjing, clear sky.
    pub fn case_study(duration_s: f64) -> Self {
        let center = Utc.with_ymd_and_hms(2025, 12, 9, 12, 0, 0).unwrap();
        let start = offset(center, -duration_s / 2.0);
        let cfg = PassConfig {
            satellite_id: "STARLINK-11479 (62270)".into(),
            start_utc: start,
            duration_s,
            sample_period_s: 1.0,
            altitude_min_m: 550e3,
            altitude_max_m: 550e3,
            min_elevation_deg: 40.0,
            max_elevation_deg: Some(75.0),
        };
        Self {
            pass: generate_pass(0, &cfg).expect("case-study pass parameters are valid"),
            weather: WeatherTimeline::constant(start, duration_s, WeatherClass::Clear),
            tx: GeoPoint {
                lat_deg: 32.0615,
                lon_deg: 118.7915,
            },
            rx: GeoPoint {
                lat_deg: 33.5183,
                lon_deg: 120.1059,
            },
        }
    }

    pub fn center(&self) -> DateTime<Utc> {
        let half = (self.pass.end() - self.pass.start()) / 2;
        self.pass.start() + half
    }
}

// ---------------------------------------------------------------- corpus

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CorpusParams {
    pub n_users: usize,
    pub n_segments: usize,
    pub frames_per_segment: usize,
    /// Probability that a segment starts with a different speaker.
    pub identity_switch_rate: f64,
    /// Probability that a segment starts from a fresh random pose.
    pub pose_jump_rate: f64,
    /// Per-coordinate standard deviation of embedding jitter.
    pub embedding_noise: f64,
    pub exp_step: f64,
    pub rot_step: f64,
    pub trans_step: f64,
    pub exp_bound: f64,
    pub rot_bound: f64,
    pub trans_bound: f64,
    pub text_tokens: usize,
    pub phoneme_tokens: usize,
    pub text_vocab: u32,
    pub phoneme_vocab: u32,
    pub segment_duration_s: f64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            n_users: 8,
            n_segments: 100,
            frames_per_segment: 25,
            identity_switch_rate: 0.1,
            pose_jump_rate: 0.2,
            embedding_noise: 0.01,
            exp_step: 0.15,
            rot_step: 0.012,
            trans_step: 0.012,
            exp_bound: 2.5,
            rot_bound: 0.6,
            trans_bound: 0.6,
            text_tokens: 12,
            phoneme_tokens: 30,
            text_vocab: 1000,
            phoneme_vocab: 72,
            segment_duration_s: 1.0,
        }
    }
}

impl CorpusParams {
    /// Rates tuned so that, under the default update thresholds, the
    /// per-level update counts on 100 segments fall close to 17/27/50/100.
    pub fn calibrated() -> Self {
        Self {
            n_users: 40,
            identity_switch_rate: 0.2,
            pose_jump_rate: 0.35,
            rot_step: 0.015,
            trans_step: 0.015,
            ..Self::default()
        }
    }

    /// Faster expression and head motion, so that a single reference pose
    /// stops describing a whole segment.
    pub fn pose_varying() -> Self {
        Self {
            exp_step: 0.4,
            rot_step: 0.05,
            trans_step: 0.05,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.n_users == 0 || self.n_segments == 0 || self.frames_per_segment == 0 {
            return Err(param("counts", "users, segments and frames must be positive"));
        }
        for (name, p) in [
            ("identity_switch_rate", self.identity_switch_rate),
            ("pose_jump_rate", self.pose_jump_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(param(name, "must be a probability"));
            }
        }
        for (name, v) in [
            ("embedding_noise", self.embedding_noise),
            ("exp_step", self.exp_step),
            ("rot_step", self.rot_step),
            ("trans_step", self.trans_step),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(param(name, "must be finite and non-negative"));
            }
        }
        for (name, v) in [
            ("exp_bound", self.exp_bound),
            ("rot_bound", self.rot_bound),
            ("trans_bound", self.trans_bound),
            ("segment_duration_s", self.segment_duration_s),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(param(name, "must be positive"));
            }
        }
        if self.text_tokens == 0 || self.text_vocab < 2 || self.phoneme_vocab < 2 {
            return Err(param("audio", "need text tokens and vocabularies of at least 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSample {
    pub embedding: Vec<f64>,
    pub pixels: GrayFrame,
    pub exp6: [f64; 6],
    pub rot: [f64; 3],
    pub trans: [f64; 3],
    pub keypoints: Vec<[f64; 2]>,
}

impl FrameSample {
    pub fn params(&self) -> [f64; VIDEO_DIM] {
        let mut p = [0.0; VIDEO_DIM];
        p[..6].copy_from_slice(&self.exp6);
        p[6..9].copy_from_slice(&self.rot);
        p[9..].copy_from_slice(&self.trans);
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub index: usize,
    pub user_id: u32,
    pub frames: Vec<FrameSample>,
    pub audio: AudioSemantics,
}

impl Segment {
    pub fn video(&self) -> VideoSemantics {
        VideoSemantics {
            frames: self.frames.iter().map(FrameSample::params).collect(),
        }
    }

    /// Knowledge-base candidate built from the first frame.
    pub fn reference_candidate(&self) -> ReferenceEntry {
        let f = &self.frames[0];
        ReferenceEntry {
            user_id: self.user_id,
            embedding: f.embedding.clone(),
            pixels: f.pixels.clone(),
            exp6: f.exp6,
            rot: f.rot,
            trans: f.trans,
            segment_index: self.index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionCorpus {
    pub seed: u64,
    pub params: CorpusParams,
    pub users: Vec<Vec<f64>>,
    pub segments: Vec<Segment>,
}

fn unit_vector(rng: &mut SimRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Pose {
    exp6: [f64; 6],
    rot: [f64; 3],
    trans: [f64; 3],
}

impl Pose {
    fn random(rng: &mut SimRng, p: &CorpusParams) -> Self {
        let mut draw = |b: f64| rng.random_range(-b..=b);
        Self {
            exp6: std::array::from_fn(|_| draw(p.exp_bound * 0.5)),
            rot: std::array::from_fn(|_| draw(p.rot_bound)),
            trans: std::array::from_fn(|_| draw(p.trans_bound)),
        }
    }

    fn step(&mut self, rng: &mut SimRng, p: &CorpusParams) {
        let mut walk = |x: &mut f64, s: f64, b: f64| {
            let next = *x + s * standard_normal(rng);
            // reflect at the bounds
            *x = if next > b {
                2.0 * b - next
            } else if next < -b {
                -2.0 * b - next
            } else {
                next
            }
            .clamp(-b, b);
        };
        for x in &mut self.exp6 {
            walk(x, p.exp_step, p.exp_bound);
        }
        for x in &mut self.rot {
            walk(x, p.rot_step, p.rot_bound);
        }
        for x in &mut self.trans {
            walk(x, p.trans_step, p.trans_bound);
        }
    }
}

/// Appearance constants tied to an identity.
#[derive(Debug, Clone, Copy)]
struct Look {
    background: f64,
    face: f64,
    width: f64,
}

fn look_for(identity: &[f64]) -> Look {
    let squash = |x: f64| 0.5 + 0.5 * (4.0 * x).tanh();
    Look {
        background: 20.0 + 50.0 * squash(identity[0]),
        face: 170.0 + 70.0 * squash(identity[1]),
        width: 0.85 + 0.3 * squash(identity[2]),
    }
}

fn gauss2(u: f64, v: f64, su: f64, sv: f64) -> f64 {
    (-0.5 * (u * u / (su * su) + v * v / (sv * sv))).exp()
}

/// Analytic face render: an elliptic face with eyes and mouth, placed and
/// oriented by rotation and translation. Smooth in the pose, so a bounded pose
/// change gives a bounded pixel change.
fn render(rot: &[f64; 3], trans: &[f64; 3], look: Look) -> GrayFrame {
    let side = FRAME_SIDE;
    let half = (side as f64 - 1.0) / 2.0;
    let (cx, cy) = (
        side as f64 * (0.5 * trans[0] + 0.4 * rot[1]),
        side as f64 * (0.5 * trans[1] + 0.4 * rot[0]),
    );
    let scale = look.width * (1.0 + 0.35 * trans[2]);
    let (s, c) = rot[2].sin_cos();
    let mut pixels = Vec::with_capacity(side * side);
    for py in 0..side {
        for px in 0..side {
            let (du, dv) = (px as f64 - half - cx, py as f64 - half - cy);
            let u = (c * du + s * dv) / scale;
            let v = (-s * du + c * dv) / scale;
            let face = gauss2(u, v, 6.0, 8.0);
            let eyes = gauss2(u - 3.5, v + 2.5, 1.3, 1.3) + gauss2(u + 3.5, v + 2.5, 1.3, 1.3);
            let mouth = gauss2(u, v - 4.0, 2.6, 0.9);
            let value = look.background + (look.face - look.background) * face - 110.0 * eyes - 80.0 * mouth;
            pixels.push(value.round().clamp(0.0, 255.0) as u8);
        }
    }
    GrayFrame {
        width: side,
        height: side,
        pixels,
    }
}

/// Affine keypoint map `K [exp6 | rot | trans] + base`.
pub fn keypoints_from_params(exp6: &[f64; 6], rot: &[f64; 3], trans: &[f64; 3]) -> Vec<[f64; 2]> {
    let mut p = [0.0; VIDEO_DIM];
    p[..6].copy_from_slice(exp6);
    p[6..9].copy_from_slice(rot);
    p[9..].copy_from_slice(trans);
    keypoints_from_vector(&p)
}

pub fn keypoints_from_vector(p: &[f64; VIDEO_DIM]) -> Vec<[f64; 2]> {
    use keypoint_table::{BASE_SHAPE, PARAM_MAP};
    let dot = |row: &[f64; VIDEO_DIM]| row.iter().zip(p).map(|(a, b)| a * b).sum::<f64>();
    (0..N_KEYPOINTS)
        .map(|i| {
            [
                BASE_SHAPE[i][0] + dot(&PARAM_MAP[2 * i]),
                BASE_SHAPE[i][1] + dot(&PARAM_MAP[2 * i + 1]),
            ]
        })
        .collect()
}

/// Base shape (all coefficients zero).
pub fn base_shape() -> Vec<[f64; 2]> {
    keypoint_table::BASE_SHAPE.to_vec()
}

/// Column of the keypoint map for coefficient `j`, as 68 displacement vectors.
pub fn keypoint_column(j: usize) -> Vec<[f64; 2]> {
    use keypoint_table::PARAM_MAP;
    (0..N_KEYPOINTS)
        .map(|i| [PARAM_MAP[2 * i][j], PARAM_MAP[2 * i + 1][j]])
        .collect()
}

fn jitter_embedding(rng: &mut SimRng, identity: &[f64], noise: f64) -> Vec<f64> {
    if noise == 0.0 {
        return identity.to_vec();
    }
    let v: Vec<f64> = identity.iter().map(|x| x + noise * standard_normal(rng)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn make_frame(rng: &mut SimRng, identity: &[f64], pose: &Pose, p: &CorpusParams) -> FrameSample {
    FrameSample {
        embedding: jitter_embedding(rng, identity, p.embedding_noise),
        pixels: render(&pose.rot, &pose.trans, look_for(identity)),
        exp6: pose.exp6,
        rot: pose.rot,
        trans: pose.trans,
        keypoints: keypoints_from_params(&pose.exp6, &pose.rot, &pose.trans),
    }
}

fn make_audio(rng: &mut SimRng, p: &CorpusParams) -> AudioSemantics {
    let text_tokens = (0..p.text_tokens).map(|_| rng.random_range(0..p.text_vocab)).collect();
    let phoneme_tokens = (0..p.phoneme_tokens)
        .map(|_| rng.random_range(0..p.phoneme_vocab))
        .collect();
    // positive durations that roughly fill the segment
    let raw: Vec<f64> = (0..p.phoneme_tokens).map(|_| rng.random_range(0.5..1.5)).collect();
    let total: f64 = raw.iter().sum();
    let durations_s = raw
        .into_iter()
        .map(|d| d / total.max(f64::MIN_POSITIVE) * p.segment_duration_s)
        .collect();
    AudioSemantics {
        text_tokens,
        phoneme_tokens,
        durations_s,
    }
}

pub fn generate_corpus(seed: u64, params: &CorpusParams) -> Result<SessionCorpus, ScenarioError> {
    params.validate()?;
    let mut user_rng = stream_rng(derive_seed(seed, TAG_USERS, 0), 0);
    let users: Vec<Vec<f64>> = (0..params.n_users)
        .map(|_| unit_vector(&mut user_rng, EMBEDDING_DIM))
        .collect();

    let mut segments = Vec::with_capacity(params.n_segments);
    let mut user = 0usize;
    let mut pose = Pose::random(&mut user_rng, params);
    for index in 0..params.n_segments {
        let mut rng = stream_rng(derive_seed(seed, TAG_SEGMENT, index as u64), 0);
        if index > 0 {
            let switch = params.n_users > 1 && rng.random_bool(params.identity_switch_rate);
            if switch {
                let other = rng.random_range(0..params.n_users - 1);
                user = if other >= user { other + 1 } else { other };
            }
            if switch || rng.random_bool(params.pose_jump_rate) {
                pose = Pose::random(&mut rng, params);
            }
        }
        let mut frames = Vec::with_capacity(params.frames_per_segment);
        for f in 0..params.frames_per_segment {
            if f > 0 {
                pose.step(&mut rng, params);
            }
            frames.push(make_frame(&mut rng, &users[user], &pose, params));
        }
        // the pose keeps drifting into the next segment
        pose.step(&mut rng, params);
        segments.push(Segment {
            index,
            user_id: user as u32,
            frames,
            audio: make_audio(&mut rng, params),
        });
    }
    Ok(SessionCorpus {
        seed,
        params: *params,
        users,
        segments,
    })
}
