//! Resource-grid OFDM with comb pilots.
//!
//! Pilots sit on every `pilot_spacing`-th subcarrier (starting at 0) in every
//! time symbol. Data fills the remaining elements time-symbol by time-symbol,
//! ascending subcarrier within each symbol.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::ComplexGrid;

/// Magnitude floor applied to channel estimates before division.
pub const EQUALIZER_FLOOR: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OfdmError {
    #[error("payload of {len} symbols exceeds frame capacity {capacity}")]
    Overflow { len: usize, capacity: usize },
    #[error("grid shape {got:?} does not match layout {expected:?}")]
    Shape {
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("invalid pilot layout: {0}")]
    Layout(String),
}

/// How the estimator fills subcarriers outside the outermost pilots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeMode {
    /// Copy the nearest pilot estimate.
    #[default]
    Hold,
    /// Extend the line through the two nearest pilots.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PilotLayout {
    pub n_f: usize,
    pub n_t: usize,
    pub pilot_spacing: usize,
    pub pilot_value: Complex64,
    pub edge_mode: EdgeMode,
}

impl Default for PilotLayout {
    fn default() -> Self {
        Self {
            n_f: 120,
            n_t: 14,
            pilot_spacing: 4,
            pilot_value: Complex64::new(1.0, 0.0),
            edge_mode: EdgeMode::Hold,
        }
    }
}

impl PilotLayout {
    pub fn validate(&self) -> Result<(), OfdmError> {
        if self.n_f == 0 || self.n_t == 0 {
            return Err(OfdmError::Layout("grid dimensions must be positive".into()));
        }
        if self.pilot_spacing < 2 || self.n_f % self.pilot_spacing != 0 {
            return Err(OfdmError::Layout(format!(
                "pilot spacing {} must be >= 2 and divide {} subcarriers",
                self.pilot_spacing, self.n_f
            )));
        }
        if (self.pilot_value.norm() - 1.0).abs() > 1e-12 {
            return Err(OfdmError::Layout("pilot value must have unit magnitude".into()));
        }
        Ok(())
    }

    #[inline]
    pub fn is_pilot(&self, k: usize) -> bool {
        k % self.pilot_spacing == 0
    }

    pub fn pilot_subcarriers(&self) -> Vec<usize> {
        (0..self.n_f).step_by(self.pilot_spacing).collect()
    }

    pub fn data_subcarriers(&self) -> Vec<usize> {
        (0..self.n_f).filter(|&k| !self.is_pilot(k)).collect()
    }

    pub fn pilots_per_symbol(&self) -> usize {
        self.n_f.div_ceil(self.pilot_spacing)
    }

    pub fn data_per_symbol(&self) -> usize {
        self.n_f - self.pilots_per_symbol()
    }

    /// Data resource elements per frame.
    pub fn capacity(&self) -> usize {
        self.data_per_symbol() * self.n_t
    }

    /// Noise variance of the interpolated LS estimate on a data subcarrier,
    /// relative to the noise on one pilot, averaged over data subcarriers.
    pub fn estimate_noise_gain(&self) -> f64 {
        let pilots = self.pilot_subcarriers();
        let data = self.data_subcarriers();
        if data.is_empty() {
            return 0.0;
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut unit = vec![zero; pilots.len()];
        let mut total = 0.0;
        for j in 0..pilots.len() {
            unit[j] = Complex64::new(1.0, 0.0);
            total += data
                .iter()
                .map(|&k| interpolate(&pilots, &unit, k, self.edge_mode).norm_sqr())
                .sum::<f64>();
            unit[j] = zero;
        }
        total / data.len() as f64
    }

    fn check_shape(&self, grid: &ComplexGrid) -> Result<(), OfdmError> {
        if grid.shape() != (self.n_f, self.n_t) {
            return Err(OfdmError::Shape {
                got: grid.shape(),
                expected: (self.n_f, self.n_t),
            });
        }
        Ok(())
    }

    /// Data resource elements in placement order.
    fn data_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_t).flat_map(move |t| {
            (0..self.n_f)
                .filter(move |&k| !self.is_pilot(k))
                .map(move |k| (k, t))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OfdmFrame {
    pub grid: ComplexGrid,
}

impl OfdmFrame {
    pub fn new(grid: ComplexGrid) -> Self {
        Self { grid }
    }
}

pub fn build_frame(data: &[Complex64], layout: &PilotLayout) -> Result<OfdmFrame, OfdmError> {
    let capacity = layout.capacity();
    if data.len() > capacity {
        return Err(OfdmError::Overflow {
            len: data.len(),
            capacity,
        });
    }
    let mut grid = ComplexGrid::zeros(layout.n_f, layout.n_t);
    for t in 0..layout.n_t {
        for k in layout.pilot_subcarriers() {
            grid.set(k, t, layout.pilot_value);
        }
    }
    for (&sym, (k, t)) in data.iter().zip(layout.data_positions()) {
        grid.set(k, t, sym);
    }
    Ok(OfdmFrame { grid })
}

pub fn extract_data(
    frame: &OfdmFrame,
    layout: &PilotLayout,
    count: usize,
) -> Result<Vec<Complex64>, OfdmError> {
    layout.check_shape(&frame.grid)?;
    let capacity = layout.capacity();
    if count > capacity {
        return Err(OfdmError::Overflow {
            len: count,
            capacity,
        });
    }
    Ok(layout
        .data_positions()
        .take(count)
        .map(|(k, t)| frame.grid.get(k, t))
        .collect())
}

/// Least-squares channel estimate at the pilots, linearly interpolated along
/// frequency within each time symbol.
pub fn ls_estimate(y: &OfdmFrame, layout: &PilotLayout) -> Result<ComplexGrid, OfdmError> {
    layout.check_shape(&y.grid)?;
    let pilots = layout.pilot_subcarriers();
    let mut h = ComplexGrid::zeros(layout.n_f, layout.n_t);
    let mut at_pilot = vec![Complex64::new(0.0, 0.0); pilots.len()];

    for t in 0..layout.n_t {
        for (slot, &k) in at_pilot.iter_mut().zip(&pilots) {
            *slot = y.grid.get(k, t) / layout.pilot_value;
        }
        for k in 0..layout.n_f {
            h.set(k, t, interpolate(&pilots, &at_pilot, k, layout.edge_mode));
        }
    }
    Ok(h)
}

fn interpolate(pilots: &[usize], values: &[Complex64], k: usize, edge: EdgeMode) -> Complex64 {
    let n = pilots.len();
    if n == 1 {
        return values[0];
    }
    // index of the last pilot at or below k
    let i = match pilots.binary_search(&k) {
        Ok(i) => return values[i],
        Err(0) => 0,
        Err(i) => i - 1,
    };
    if k < pilots[0] || i + 1 >= n {
        let (a, b) = if k < pilots[0] { (0, 1) } else { (n - 2, n - 1) };
        return match edge {
            EdgeMode::Hold => {
                if k < pilots[0] {
                    values[0]
                } else {
                    values[n - 1]
                }
            }
            EdgeMode::Linear => line(pilots[a], values[a], pilots[b], values[b], k),
        };
    }
    line(pilots[i], values[i], pilots[i + 1], values[i + 1], k)
}

fn line(k0: usize, v0: Complex64, k1: usize, v1: Complex64, k: usize) -> Complex64 {
    let w = (k as f64 - k0 as f64) / (k1 as f64 - k0 as f64);
    v0 + (v1 - v0) * w
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EqualizeReport {
    /// Number of estimate entries raised to the magnitude floor.
    pub floored: usize,
}

/// Zero-forcing equalization `Y / H_hat`, with `|H_hat|` floored at
/// [`EQUALIZER_FLOOR`].
pub fn equalize(
    y: &OfdmFrame,
    h_hat: &ComplexGrid,
) -> Result<(OfdmFrame, EqualizeReport), OfdmError> {
    if y.grid.shape() != h_hat.shape() {
        return Err(OfdmError::Shape {
            got: h_hat.shape(),
            expected: y.grid.shape(),
        });
    }
    let mut report = EqualizeReport::default();
    let mut out = y.grid.clone();
    for (o, &h) in out.as_mut_slice().iter_mut().zip(h_hat.as_slice()) {
        let mag = h.norm();
        let h = if mag < EQUALIZER_FLOOR || !mag.is_finite() {
            report.floored += 1;
            if mag > 0.0 && mag.is_finite() {
                h * (EQUALIZER_FLOOR / mag)
            } else {
                Complex64::new(EQUALIZER_FLOOR, 0.0)
            }
        } else {
            h
        };
        *o /= h;
    }
    Ok((OfdmFrame { grid: out }, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn payload(n: usize) -> Vec<Complex64> {
        (0..n).map(|i| c(i as f64, -(i as f64) * 0.5)).collect()
    }

    #[test]
    fn default_layout_arithmetic() {
        let l = PilotLayout::default();
        l.validate().unwrap();
        assert_eq!(l.pilots_per_symbol(), 30);
        assert_eq!(l.data_per_symbol(), 90);
        assert_eq!(l.capacity(), 1_260);
        assert_eq!(l.pilot_subcarriers().len() + l.data_subcarriers().len(), l.n_f);
    }

    #[test]
    fn full_and_empty_frames() {
        let l = PilotLayout::default();
        let f = build_frame(&payload(1_260), &l).unwrap();
        let pilots = (0..l.n_t)
            .flat_map(|t| (0..l.n_f).map(move |k| (k, t)))
            .filter(|&(k, t)| l.is_pilot(k) && f.grid.get(k, t) == l.pilot_value)
            .count();
        assert_eq!(pilots, 30 * 14);

        let empty = build_frame(&[], &l).unwrap();
        for t in 0..l.n_t {
            for k in l.data_subcarriers() {
                assert_eq!(empty.grid.get(k, t), c(0.0, 0.0));
            }
        }
        assert!(matches!(
            build_frame(&payload(1_261), &l),
            Err(OfdmError::Overflow { len: 1_261, capacity: 1_260 })
        ));
    }

    #[test]
    fn placement_order_is_time_major() {
        let l = PilotLayout::default();
        let f = build_frame(&payload(92), &l).unwrap();
        assert_eq!(f.grid.get(1, 0), c(0.0, 0.0));
        assert_eq!(f.grid.get(2, 0), c(1.0, -0.5));
        assert_eq!(f.grid.get(5, 0), c(3.0, -1.5));
        assert_eq!(f.grid.get(119, 0), c(89.0, -44.5));
        assert_eq!(f.grid.get(1, 1), c(90.0, -45.0));
    }

    #[test]
    fn extract_bounds() {
        let l = PilotLayout::default();
        let f = build_frame(&payload(10), &l).unwrap();
        assert!(extract_data(&f, &l, 0).unwrap().is_empty());
        assert!(extract_data(&f, &l, 1_261).is_err());
        assert_eq!(extract_data(&f, &l, 10).unwrap(), payload(10));
    }

    #[test]
    fn flat_channel_estimate() {
        let l = PilotLayout::default();
        let h = c(0.3, -1.2);
        let mut f = build_frame(&payload(500), &l).unwrap();
        f.grid.as_mut_slice().iter_mut().for_each(|z| *z *= h);
        let est = ls_estimate(&f, &l).unwrap();
        assert!(est.as_slice().iter().all(|e| (e - h).norm() < 1e-12));
    }

    #[test]
    fn affine_channel_estimate() {
        let truth = |k: usize| c(0.5 + 0.01 * k as f64, -0.2 + 0.003 * k as f64);
        for edge in [EdgeMode::Hold, EdgeMode::Linear] {
            let l = PilotLayout {
                edge_mode: edge,
                ..PilotLayout::default()
            };
            let mut f = build_frame(&payload(1_260), &l).unwrap();
            for t in 0..l.n_t {
                for k in 0..l.n_f {
                    f.grid.set(k, t, f.grid.get(k, t) * truth(k));
                }
            }
            let est = ls_estimate(&f, &l).unwrap();
            let last_pilot = *l.pilot_subcarriers().last().unwrap();
            for t in 0..l.n_t {
                for k in 0..l.n_f {
                    let err = (est.get(k, t) - truth(k)).norm();
                    if edge == EdgeMode::Linear || k <= last_pilot {
                        assert!(err < 1e-12, "k={k} edge={edge:?} err={err}");
                    } else {
                        assert_eq!(est.get(k, t), truth(last_pilot));
                    }
                }
            }
        }
    }

    #[test]
    fn equalize_perfect_and_floored() {
        let l = PilotLayout::default();
        let x = build_frame(&payload(1_260), &l).unwrap();
        let h = ComplexGrid::from_fn(l.n_f, l.n_t, |k, t| {
            c(1.0 + k as f64 * 0.01, 0.1 * t as f64)
        });
        let y = OfdmFrame::new(x.grid.hadamard(&h));
        let (xh, rep) = equalize(&y, &h).unwrap();
        assert_eq!(rep.floored, 0);
        for (a, b) in xh.grid.as_slice().iter().zip(x.grid.as_slice()) {
            assert!((a - b).norm() < 1e-9);
        }

        let mut h0 = h.clone();
        h0.set(3, 2, c(0.0, 0.0));
        h0.set(4, 2, c(1e-12, 0.0));
        let (xh, rep) = equalize(&y, &h0).unwrap();
        assert_eq!(rep.floored, 2);
        assert!(xh.grid.as_slice().iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let l = PilotLayout::default();
        let small = OfdmFrame::new(ComplexGrid::zeros(8, 2));
        assert!(ls_estimate(&small, &l).is_err());
        assert!(extract_data(&small, &l, 0).is_err());
        let big = build_frame(&[], &l).unwrap();
        assert!(equalize(&big, &ComplexGrid::zeros(8, 2)).is_err());
    }
}
