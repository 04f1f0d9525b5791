//! Semantic feature types, the analytic codec, symbol budgets and stream
//! multiplexing onto OFDM frames.

mod codec;
mod mux;
pub mod qam;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use codec::{
    bits_for_vocab, decode_floats, decode_floats_soft, decode_tokens, dequantize, encode_floats, encode_tokens,
    float_base_symbols, max_items_within, quantize, rate_match, token_base_symbols, Payload,
    StreamMeta, SymbolStream, TokenDecode,
};
pub use mux::{demultiplex, multiplex, MuxLayout, Multiplexed, StreamCaps, WorkflowBudget};
pub use qam::Constellation;

use crate::ofdm::OfdmError;

/// Transmitted 3DMM subset per video frame: six expression, three rotation
/// and three translation coefficients.
pub const VIDEO_DIM: usize = 12;
pub const EXP_FULL_DIM: usize = 64;
pub const EXP_SENT_DIM: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemError {
    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("token {token} outside vocabulary of size {vocab}")]
    TokenOutOfVocab { token: u32, vocab: u32 },
    #[error("stream {stream:?} truncated: expected {expected}, got {got}")]
    Truncated {
        stream: StreamId,
        expected: usize,
        got: usize,
    },
    #[error("stream {0:?} carries the wrong payload kind for this decoder")]
    PayloadKind(StreamId),
    #[error("stream {stream:?} has {len} symbols but its cap is {cap}")]
    BudgetViolation {
        stream: StreamId,
        len: usize,
        cap: usize,
    },
    #[error("{total} symbols need more than the {frames} allotted frame(s)")]
    FrameOverflow { total: usize, frames: usize },
    #[error("expansion factor {sr}/({hs}*{fps}) is not a positive integer")]
    NonIntegerExpansion { sr: u32, hs: u32, fps: u32 },
    #[error("invalid codec config: {0}")]
    Config(String),
    #[error(transparent)]
    Ofdm(#[from] OfdmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StreamId {
    /// 3DMM motion parameters.
    M,
    /// Text tokens.
    T,
    /// Phoneme tokens.
    P,
    /// Phoneme durations.
    D,
}

impl StreamId {
    /// Multiplexing order.
    pub const ORDER: [StreamId; 4] = [StreamId::M, StreamId::T, StreamId::P, StreamId::D];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Workflow {
    /// Video semantics first; audio generated from video.
    V2A,
    /// Audio semantics first; video generated from audio.
    A2V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodecMode {
    Digital,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CodecConfig {
    pub mode: CodecMode,
    pub float_bits: u32,
    pub float_range: f64,
    pub constellation: Constellation,
    pub repetition: usize,
    pub text_vocab: u32,
    pub phoneme_vocab: u32,
}

impl Default for CodecConfig {
    fn default() -> Self {
        Self {
            mode: CodecMode::Digital,
            float_bits: 8,
            float_range: 3.0,
            constellation: Constellation::Qam16,
            repetition: 1,
            text_vocab: 1000,
            phoneme_vocab: 72,
        }
    }
}

impl CodecConfig {
    pub fn validate(&self) -> Result<(), SemError> {
        if ![4, 8, 12, 16].contains(&self.float_bits) {
            return Err(SemError::Config(format!(
                "float_bits must be one of 4, 8, 12, 16 (got {})",
                self.float_bits
            )));
        }
        if self.repetition < 1 {
            return Err(SemError::Config("repetition must be >= 1".into()));
        }
        if !(self.float_range > 0.0 && self.float_range.is_finite()) {
            return Err(SemError::Config("float_range must be positive".into()));
        }
        if self.text_vocab == 0 || self.phoneme_vocab == 0 {
            return Err(SemError::Config("vocabularies must be non-empty".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VideoSemantics {
    pub frames: Vec<[f64; VIDEO_DIM]>,
}

impl VideoSemantics {
    pub fn flatten(&self) -> Vec<f64> {
        self.frames.iter().flatten().copied().collect()
    }

    pub fn from_flat(values: &[f64]) -> Result<Self, SemError> {
        if values.len() % VIDEO_DIM != 0 {
            return Err(SemError::Dimension {
                what: "video semantics",
                expected: values.len().next_multiple_of(VIDEO_DIM),
                got: values.len(),
            });
        }
        Ok(Self {
            frames: values
                .chunks_exact(VIDEO_DIM)
                .map(|c| c.try_into().expect("chunk of VIDEO_DIM"))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AudioSemantics {
    pub text_tokens: Vec<u32>,
    pub phoneme_tokens: Vec<u32>,
    pub durations_s: Vec<f64>,
}

impl AudioSemantics {
    pub fn validate(&self, text_vocab: u32, phoneme_vocab: u32) -> Result<(), SemError> {
        if self.durations_s.len() != self.phoneme_tokens.len() {
            return Err(SemError::Dimension {
                what: "durations",
                expected: self.phoneme_tokens.len(),
                got: self.durations_s.len(),
            });
        }
        for (&t, v) in self
            .text_tokens
            .iter()
            .map(|t| (t, text_vocab))
            .chain(self.phoneme_tokens.iter().map(|t| (t, phoneme_vocab)))
        {
            if t >= v {
                return Err(SemError::TokenOutOfVocab { token: t, vocab: v });
            }
        }
        Ok(())
    }
}

/// Keeps the first six expression coefficients plus rotation and translation.
/// Identity coefficients never enter this vector.
pub fn select_video_semantics(
    exp: &[f64],
    rot: &[f64],
    trans: &[f64],
) -> Result<[f64; VIDEO_DIM], SemError> {
    for (what, expected, got) in [
        ("expression", EXP_FULL_DIM, exp.len()),
        ("rotation", 3, rot.len()),
        ("translation", 3, trans.len()),
    ] {
        if got != expected {
            return Err(SemError::Dimension {
                what,
                expected,
                got,
            });
        }
    }
    let mut out = [0.0; VIDEO_DIM];
    out[..EXP_SENT_DIM].copy_from_slice(&exp[..EXP_SENT_DIM]);
    out[6..9].copy_from_slice(rot);
    out[9..12].copy_from_slice(trans);
    Ok(out)
}

/// Ratio of Mel-spectrogram frames to video frames, `(sr / hs) / fps`, which
/// must be a positive integer.
pub fn expansion_factor(sample_rate_hz: u32, hop_size: u32, fps: u32) -> Result<u32, SemError> {
    let err = SemError::NonIntegerExpansion {
        sr: sample_rate_hz,
        hs: hop_size,
        fps,
    };
    if sample_rate_hz == 0 || hop_size == 0 || fps == 0 {
        return Err(err);
    }
    let denom = u64::from(hop_size) * u64::from(fps);
    let sr = u64::from(sample_rate_hz);
    if sr % denom != 0 {
        return Err(err);
    }
    Ok((sr / denom) as u32)
}

/// Reference transmission methods with their per-clip symbol counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransmissionMethod {
    H264Ldpc,
    H265Ldpc,
    Svc,
    V2AVideo,
    A2VVideo,
    FastSpeech2,
    DeepScS,
    V2AAudio,
    A2VAudio,
}

impl TransmissionMethod {
    pub const ALL: [TransmissionMethod; 9] = [
        TransmissionMethod::H264Ldpc,
        TransmissionMethod::H265Ldpc,
        TransmissionMethod::Svc,
        TransmissionMethod::V2AVideo,
        TransmissionMethod::A2VVideo,
        TransmissionMethod::FastSpeech2,
        TransmissionMethod::DeepScS,
        TransmissionMethod::V2AAudio,
        TransmissionMethod::A2VAudio,
    ];

    pub fn symbols(self) -> usize {
        match self {
            TransmissionMethod::H264Ldpc => 400_991,
            TransmissionMethod::H265Ldpc => 54_390,
            TransmissionMethod::Svc => 600,
            TransmissionMethod::V2AVideo => 300,
            TransmissionMethod::A2VVideo => 0,
            TransmissionMethod::FastSpeech2 => 600,
            TransmissionMethod::DeepScS => 32_768,
            TransmissionMethod::V2AAudio => 300,
            TransmissionMethod::A2VAudio => 600,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TransmissionMethod::H264Ldpc => "H264+LDPC",
            TransmissionMethod::H265Ldpc => "H265+LDPC",
            TransmissionMethod::Svc => "SVC",
            TransmissionMethod::V2AVideo => "V2A (video)",
            TransmissionMethod::A2VVideo => "A2V (video)",
            TransmissionMethod::FastSpeech2 => "FastSpeech 2",
            TransmissionMethod::DeepScS => "DeepSC-S",
            TransmissionMethod::V2AAudio => "V2A (audio)",
            TransmissionMethod::A2VAudio => "A2V (audio)",
        }
    }
}
