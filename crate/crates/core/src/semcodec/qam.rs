//! Square Gray-coded QAM with unit average power.
//!
//! The first half of a symbol's bits selects the in-phase level and the second
//! half the quadrature level, most significant bit first. Along each axis the
//! level index `i` carries the Gray label `i ^ (i >> 1)`, so neighbouring
//! levels differ in one bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constellation {
    Qam16,
    Qam64,
}

impl Constellation {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Constellation::Qam16 => 4,
            Constellation::Qam64 => 6,
        }
    }

    fn bits_per_axis(self) -> usize {
        self.bits_per_symbol() / 2
    }

    fn levels(self) -> usize {
        1 << self.bits_per_axis()
    }

    /// Scale giving unit average energy: `sqrt(2 (M - 1) / 3)` for square M-QAM.
    fn norm(self) -> f64 {
        let m = (self.levels() * self.levels()) as f64;
        (3.0 / (2.0 * (m - 1.0))).sqrt()
    }

    /// Smallest distance between two constellation points.
    pub fn min_distance(self) -> f64 {
        2.0 * self.norm()
    }

    /// Maps the low `bits_per_symbol` bits of `label` to a point.
    pub fn modulate(self, label: u32) -> Complex64 {
        let b = self.bits_per_axis();
        let mask = (1u32 << b) - 1;
        let i_label = (label >> b) & mask;
        let q_label = label & mask;
        Complex64::new(self.level(i_label), self.level(q_label))
    }

    /// Hard decision to the nearest point, returning its label.
    pub fn demodulate(self, z: Complex64) -> u32 {
        (self.slice(z.re) << self.bits_per_axis()) | self.slice(z.im)
    }

    fn level(self, gray_label: u32) -> f64 {
        let idx = gray_to_index(gray_label);
        (2.0 * idx as f64 - (self.levels() as f64 - 1.0)) * self.norm()
    }

    fn slice(self, x: f64) -> u32 {
        let l = self.levels() as f64;
        let pos = ((x / self.norm() + l - 1.0) / 2.0).round();
        let idx = if pos.is_nan() { 0.0 } else { pos.clamp(0.0, l - 1.0) };
        index_to_gray(idx as u32)
    }
}

#[inline]
fn index_to_gray(i: u32) -> u32 {
    i ^ (i >> 1)
}

#[inline]
fn gray_to_index(mut g: u32) -> u32 {
    let mut i = 0;
    while g != 0 {
        i ^= g;
        g >>= 1;
    }
    i
}

/// Packs a bit sequence (MSB first) into constellation points, zero-padding
/// the final symbol.
pub fn bits_to_symbols(bits: &[bool], constellation: Constellation) -> Vec<Complex64> {
    bits.chunks(constellation.bits_per_symbol())
        .map(|chunk| {
            let mut label = 0u32;
            for i in 0..constellation.bits_per_symbol() {
                label = (label << 1) | u32::from(chunk.get(i).copied().unwrap_or(false));
            }
            constellation.modulate(label)
        })
        .collect()
}

pub fn symbols_to_bits(symbols: &[Complex64], constellation: Constellation) -> Vec<bool> {
    let bps = constellation.bits_per_symbol();
    let mut bits = Vec::with_capacity(symbols.len() * bps);
    for &z in symbols {
        let label = constellation.demodulate(z);
        for i in (0..bps).rev() {
            bits.push((label >> i) & 1 == 1);
        }
    }
    bits
}
