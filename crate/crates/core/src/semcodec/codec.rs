//! Analytic feature-to-symbol codec.
//!
//! Floats are either quantized and carried on Gray-coded QAM (digital mode) or
//! mapped pairwise onto I/Q (direct mode). Tokens are always sent as
//! fixed-width binary indices on QAM. Every base symbol may be repeated and a
//! stream may then be cyclically extended to fill a symbol budget; the decoder
//! combines all copies of a base symbol, weighting by channel gain when
//! per-symbol channel state is available.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::qam::{bits_to_symbols, symbols_to_bits};
use super::{CodecConfig, CodecMode, SemError, StreamId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Floats { count: usize },
    Tokens { count: usize, vocab: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamMeta {
    pub payload: Payload,
    /// Distinct symbols before repetition and rate matching.
    pub base_symbols: usize,
    pub repetition: usize,
    /// Scale applied in direct mode to reach unit average power.
    pub gain: f64,
    /// Values clipped to the quantizer range during encoding.
    pub clipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolStream {
    pub stream_id: StreamId,
    pub symbols: Vec<Complex64>,
    pub meta: StreamMeta,
    /// Per-symbol combining weights (e.g. `|H_hat|^2`) attached by the receiver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl SymbolStream {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn mean_power(&self) -> f64 {
        if self.symbols.is_empty() {
            return 0.0;
        }
        self.symbols.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.symbols.len() as f64
    }

    pub fn empty(stream_id: StreamId) -> Self {
        Self {
            stream_id,
            symbols: Vec::new(),
            meta: StreamMeta {
                payload: Payload::Floats { count: 0 },
                base_symbols: 0,
                repetition: 1,
                gain: 1.0,
                clipped: 0,
            },
            weights: None,
        }
    }
}

/// Bits needed to index a vocabulary of size `vocab`.
pub fn bits_for_vocab(vocab: u32) -> usize {
    if vocab <= 1 {
        0
    } else {
        (32 - (vocab - 1).leading_zeros()) as usize
    }
}

/// Uniform mid-rise quantizer over `[-range, range]` with `2^bits` cells.
pub fn quantize(value: f64, range: f64, bits: u32) -> (u32, bool) {
    let levels = 1u64 << bits;
    let clipped = !(value.abs() <= range);
    let v = if value.is_nan() { 0.0 } else { value.clamp(-range, range) };
    let step = 2.0 * range / levels as f64;
    let code = ((v + range) / step).floor() as u64;
    (code.min(levels - 1) as u32, clipped)
}

pub fn dequantize(code: u32, range: f64, bits: u32) -> f64 {
    let step = 2.0 * range / (1u64 << bits) as f64;
    -range + (code as f64 + 0.5) * step
}

fn push_bits(bits: &mut Vec<bool>, value: u32, width: usize) {
    for i in (0..width).rev() {
        bits.push((value >> i) & 1 == 1);
    }
}

fn read_bits(bits: &[bool]) -> u32 {
    bits.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b))
}

fn repeat(base: Vec<Complex64>, repetition: usize) -> Vec<Complex64> {
    base.into_iter()
        .flat_map(|z| std::iter::repeat_n(z, repetition))
        .collect()
}

pub fn encode_floats(values: &[f64], cfg: &CodecConfig, stream_id: StreamId) -> SymbolStream {
    let range = cfg.float_range;
    let mut clipped = 0;
    let (base, gain) = match cfg.mode {
        CodecMode::Digital => {
            let mut bits = Vec::with_capacity(values.len() * cfg.float_bits as usize);
            for &v in values {
                let (code, c) = quantize(v, range, cfg.float_bits);
                clipped += usize::from(c);
                push_bits(&mut bits, code, cfg.float_bits as usize);
            }
            (bits_to_symbols(&bits, cfg.constellation), 1.0)
        }
        CodecMode::Direct => {
            let mut scale = |v: f64| {
                if !(v.abs() <= range) {
                    clipped += 1;
                }
                let v = if v.is_nan() { 0.0 } else { v.clamp(-range, range) };
                v / range
            };
            let raw: Vec<Complex64> = values
                .chunks(2)
                .map(|p| Complex64::new(scale(p[0]), p.get(1).map_or(0.0, |&v| scale(v))))
                .collect();
            let p = raw.iter().map(|z| z.norm_sqr()).sum::<f64>() / raw.len().max(1) as f64;
            let gain = if p > 0.0 { 1.0 / p.sqrt() } else { 1.0 };
            (raw.into_iter().map(|z| z * gain).collect(), gain)
        }
    };
    let base_symbols = base.len();
    SymbolStream {
        stream_id,
        symbols: repeat(base, cfg.repetition),
        meta: StreamMeta {
            payload: Payload::Floats {
                count: values.len(),
            },
            base_symbols,
            repetition: cfg.repetition,
            gain,
            clipped,
        },
        weights: None,
    }
}

pub fn encode_tokens(
    tokens: &[u32],
    vocab: u32,
    cfg: &CodecConfig,
    stream_id: StreamId,
) -> Result<SymbolStream, SemError> {
    if let Some(&bad) = tokens.iter().find(|&&t| t >= vocab) {
        return Err(SemError::TokenOutOfVocab { token: bad, vocab });
    }
    let width = bits_for_vocab(vocab);
    let mut bits = Vec::with_capacity(tokens.len() * width);
    for &t in tokens {
        push_bits(&mut bits, t, width);
    }
    let base = bits_to_symbols(&bits, cfg.constellation);
    let base_symbols = base.len();
    Ok(SymbolStream {
        stream_id,
        symbols: repeat(base, cfg.repetition),
        meta: StreamMeta {
            payload: Payload::Tokens {
                count: tokens.len(),
                vocab,
            },
            base_symbols,
            repetition: cfg.repetition,
            gain: 1.0,
            clipped: 0,
        },
        weights: None,
    })
}

/// Cyclically extends (or leaves untouched) a stream so it occupies exactly
/// `cap` symbols. Streams longer than `cap` are rejected.
pub fn rate_match(stream: &SymbolStream, cap: usize) -> Result<SymbolStream, SemError> {
    let n = stream.symbols.len();
    if n > cap {
        return Err(SemError::BudgetViolation {
            stream: stream.stream_id,
            len: n,
            cap,
        });
    }
    let symbols = if n == 0 {
        Vec::new()
    } else {
        stream.symbols.iter().cycle().take(cap).copied().collect()
    };
    Ok(SymbolStream {
        symbols,
        weights: None,
        ..stream.clone()
    })
}

/// Combines every received copy of each base symbol. Also returns the
/// total combining weight per base symbol; after zero-forcing, the combined
/// noise power is the per-element noise power divided by that weight.
fn combine(stream: &SymbolStream) -> Result<(Vec<Complex64>, Vec<f64>), SemError> {
    let meta = &stream.meta;
    let period = meta.base_symbols * meta.repetition;
    if meta.base_symbols == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if stream.symbols.len() < period {
        return Err(SemError::Truncated {
            stream: stream.stream_id,
            expected: period,
            got: stream.symbols.len(),
        });
    }
    if let Some(w) = &stream.weights {
        if w.len() != stream.symbols.len() {
            return Err(SemError::Truncated {
                stream: stream.stream_id,
                expected: stream.symbols.len(),
                got: w.len(),
            });
        }
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); meta.base_symbols];
    let mut wsum = vec![0.0; meta.base_symbols];
    for (i, &z) in stream.symbols.iter().enumerate() {
        let j = (i % period) / meta.repetition;
        let w = stream.weights.as_ref().map_or(1.0, |w| w[i]);
        if z.re.is_finite() && z.im.is_finite() {
            acc[j] += z * w;
            wsum[j] += w;
        }
    }
    let combined = acc
        .into_iter()
        .zip(&wsum)
        .map(|(a, &w)| if w > 0.0 { a / w } else { Complex64::new(0.0, 0.0) })
        .collect();
    Ok((combined, wsum))
}

pub fn decode_floats(stream: &SymbolStream, cfg: &CodecConfig) -> Result<Vec<f64>, SemError> {
    let count = match stream.meta.payload {
        Payload::Floats { count } => count,
        Payload::Tokens { .. } => return Err(SemError::PayloadKind(stream.stream_id)),
    };
    let (base, _) = combine(stream)?;
    let range = cfg.float_range;
    match cfg.mode {
        CodecMode::Digital => {
            let width = cfg.float_bits as usize;
            let bits = symbols_to_bits(&base, cfg.constellation);
            if bits.len() < count * width {
                return Err(SemError::Truncated {
                    stream: stream.stream_id,
                    expected: count * width,
                    got: bits.len(),
                });
            }
            Ok(bits
                .chunks(width)
                .take(count)
                .map(|c| dequantize(read_bits(c), range, cfg.float_bits))
                .collect())
        }
        CodecMode::Direct => {
            if base.len() * 2 < count {
                return Err(SemError::Truncated {
                    stream: stream.stream_id,
                    expected: count.div_ceil(2),
                    got: base.len(),
                });
            }
            let g = stream.meta.gain;
            Ok(base
                .iter()
                .flat_map(|z| [z.re, z.im])
                .take(count)
                .map(|v| (v / g * range).clamp(-range, range))
                .collect())
        }
    }
}

/// Direct-mode decode that also reports the noise variance of each value,
/// given the per-element noise power at the receiver input. Values are not
/// clipped so that a caller can combine them with prior knowledge first.
pub fn decode_floats_soft(
    stream: &SymbolStream,
    cfg: &CodecConfig,
    noise_power: f64,
) -> Result<Vec<(f64, f64)>, SemError> {
    let count = match stream.meta.payload {
        Payload::Floats { count } => count,
        Payload::Tokens { .. } => return Err(SemError::PayloadKind(stream.stream_id)),
    };
    if cfg.mode != CodecMode::Direct {
        return Err(SemError::Config("soft decoding needs direct mode".into()));
    }
    let (base, wsum) = combine(stream)?;
    if base.len() * 2 < count {
        return Err(SemError::Truncated {
            stream: stream.stream_id,
            expected: count.div_ceil(2),
            got: base.len(),
        });
    }
    let scale = cfg.float_range / stream.meta.gain;
    Ok(base
        .iter()
        .zip(&wsum)
        .flat_map(|(z, &w)| {
            let var = if w > 0.0 {
                scale * scale * noise_power / (2.0 * w)
            } else {
                f64::INFINITY
            };
            [(z.re * scale, var), (z.im * scale, var)]
        })
        .take(count)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TokenDecode {
    pub tokens: Vec<u32>,
    /// Decoded indices at or beyond the vocabulary, clamped to `vocab - 1`.
    pub clamped: usize,
}

pub fn decode_tokens(stream: &SymbolStream, cfg: &CodecConfig) -> Result<TokenDecode, SemError> {
    let (count, vocab) = match stream.meta.payload {
        Payload::Tokens { count, vocab } => (count, vocab),
        Payload::Floats { .. } => return Err(SemError::PayloadKind(stream.stream_id)),
    };
    let width = bits_for_vocab(vocab);
    if width == 0 {
        return Ok(TokenDecode {
            tokens: vec![0; count],
            clamped: 0,
        });
    }
    let (base, _) = combine(stream)?;
    let bits = symbols_to_bits(&base, cfg.constellation);
    if bits.len() < count * width {
        return Err(SemError::Truncated {
            stream: stream.stream_id,
            expected: count * width,
            got: bits.len(),
        });
    }
    let mut clamped = 0;
    let tokens = bits
        .chunks(width)
        .take(count)
        .map(|c| {
            let t = read_bits(c);
            if t >= vocab {
                clamped += 1;
                vocab - 1
            } else {
                t
            }
        })
        .collect();
    Ok(TokenDecode { tokens, clamped })
}

/// Base symbols needed for `count` floats under `cfg` (before repetition).
pub fn float_base_symbols(count: usize, cfg: &CodecConfig) -> usize {
    match cfg.mode {
        CodecMode::Digital => {
            (count * cfg.float_bits as usize).div_ceil(cfg.constellation.bits_per_symbol())
        }
        CodecMode::Direct => count.div_ceil(2),
    }
}

pub fn token_base_symbols(count: usize, vocab: u32, cfg: &CodecConfig) -> usize {
    (count * bits_for_vocab(vocab)).div_ceil(cfg.constellation.bits_per_symbol())
}

/// Largest prefix of `count` items whose encoding fits within `cap` symbols.
pub fn max_items_within(cap: usize, count: usize, symbols_for: impl Fn(usize) -> usize) -> usize {
    let (mut lo, mut hi) = (0usize, count);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if symbols_for(mid) <= cap {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}
