//! Reconstruction metrics and bandwidth accounting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::kbstore::{csim, psnr, Psnr};
use crate::semcodec::StreamId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("length mismatch: {0} vs {1}")]
    Length(usize, usize),
    #[error("reference sequence is empty")]
    EmptyReference,
}

/// Mean Euclidean distance between corresponding 2-D keypoints.
pub fn akd(kp_ref: &[[f64; 2]], kp_hyp: &[[f64; 2]]) -> Result<f64, MetricError> {
    if kp_ref.len() != kp_hyp.len() {
        return Err(MetricError::Length(kp_ref.len(), kp_hyp.len()));
    }
    if kp_ref.is_empty() {
        return Ok(0.0);
    }
    let sum: f64 = kp_ref
        .iter()
        .zip(kp_hyp)
        .map(|(p, q)| (p[0] - q[0]).hypot(p[1] - q[1]))
        .sum();
    Ok(sum / kp_ref.len() as f64)
}

/// Levenshtein distance over arbitrary token sequences, two-row DP.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Word error rate on token ids. May exceed 1 when the hypothesis has many
/// insertions.
pub fn wer<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> Result<f64, MetricError> {
    if reference.is_empty() {
        return Err(MetricError::EmptyReference);
    }
    Ok(edit_distance(reference, hypothesis) as f64 / reference.len() as f64)
}

pub fn feature_mse(reference: &[f64], hypothesis: &[f64]) -> Result<f64, MetricError> {
    if reference.len() != hypothesis.len() {
        return Err(MetricError::Length(reference.len(), hypothesis.len()));
    }
    if reference.is_empty() {
        return Ok(0.0);
    }
    Ok(reference
        .iter()
        .zip(hypothesis)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / reference.len() as f64)
}

/// Symbols spent by one segment.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentUsage {
    pub m: usize,
    pub t: usize,
    pub p: usize,
    pub d: usize,
    pub kb_charge: usize,
}

impl SegmentUsage {
    pub fn stream(&self, id: StreamId) -> usize {
        match id {
            StreamId::M => self.m,
            StreamId::T => self.t,
            StreamId::P => self.p,
            StreamId::D => self.d,
        }
    }

    pub fn semantic(&self) -> usize {
        self.m + self.t + self.p + self.d
    }

    pub fn total(&self) -> usize {
        self.semantic() + self.kb_charge
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BandwidthLedger {
    pub segments: usize,
    pub per_segment: Vec<SegmentUsage>,
    pub totals: SegmentUsage,
    pub kb_updates: usize,
    pub semantic_total: usize,
    pub grand_total: usize,
}

impl BandwidthLedger {
    pub fn avg_semantic(&self) -> f64 {
        self.avg(self.semantic_total)
    }

    pub fn avg_kb(&self) -> f64 {
        self.avg(self.totals.kb_charge)
    }

    pub fn avg_total(&self) -> f64 {
        self.avg(self.grand_total)
    }

    fn avg(&self, v: usize) -> f64 {
        if self.segments == 0 {
            0.0
        } else {
            v as f64 / self.segments as f64
        }
    }
}

pub fn account(usages: &[SegmentUsage]) -> BandwidthLedger {
    let mut totals = SegmentUsage::default();
    let mut kb_updates = 0;
    for u in usages {
        totals.m += u.m;
        totals.t += u.t;
        totals.p += u.p;
        totals.d += u.d;
        totals.kb_charge += u.kb_charge;
        kb_updates += usize::from(u.kb_charge > 0);
    }
    BandwidthLedger {
        segments: usages.len(),
        per_segment: usages.to_vec(),
        totals,
        kb_updates,
        semantic_total: totals.semantic(),
        grand_total: totals.total(),
    }
}

/// Average KB-update symbols per segment implied by an update count.
pub fn average_update_symbols(update_count: usize, segments: usize, image_cost: usize) -> f64 {
    if segments == 0 {
        return 0.0;
    }
    (update_count * image_cost) as f64 / segments as f64
}
