//! Shared knowledge base of user reference frames and the multi-level update
//! policy.
//!
//! * L0 reuses the most similar identity when its cosine similarity exceeds
//!   `alpha_csim`.
//! * L1 additionally requires a pixel PSNR above `alpha_psnr_db`, searched
//!   among the L0-eligible entries.
//! * L2 additionally requires every 3DMM component distance to be below its
//!   threshold, for the entry with the smallest weighted distance among those
//!   passing L0 and L1.
//! * L3 always adds.
//!
//! All comparisons are strict. The transmitter and receiver each hold a copy
//! and apply the same decisions, so both stay identical.

use std::cmp::Ordering;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EMBEDDING_DIM: usize = 64;
pub const FRAME_SIDE: usize = 32;
/// JSCC cost of one 256x256x3 reference image at compression 1/12.
pub const IMAGE_COST_SYMBOLS: usize = 256 * 256 * 3 / 12;

const KB_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum KbError {
    #[error("zero-norm embedding")]
    ZeroNorm,
    #[error("shape mismatch: {0} vs {1}")]
    Shape(usize, usize),
    #[error("invalid entry: {0}")]
    Entry(String),
    #[error("knowledge base file: {0}")]
    Io(#[from] std::io::Error),
    #[error("knowledge base record: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported knowledge base format version {0}")]
    Version(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayFrame {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayFrame {
    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub user_id: u32,
    pub embedding: Vec<f64>,
    pub pixels: GrayFrame,
    pub exp6: [f64; 6],
    pub rot: [f64; 3],
    pub trans: [f64; 3],
    pub segment_index: usize,
}

impl ReferenceEntry {
    pub fn validate(&self) -> Result<(), KbError> {
        let norm = self.embedding.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(KbError::Entry(format!("embedding norm {norm} is not 1")));
        }
        if self.pixels.pixels.len() != self.pixels.width * self.pixels.height {
            return Err(KbError::Entry("pixel buffer does not match its shape".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> [f64; 12] {
        let mut p = [0.0; 12];
        p[..6].copy_from_slice(&self.exp6);
        p[6..9].copy_from_slice(&self.rot);
        p[9..].copy_from_slice(&self.trans);
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UpdateThresholds {
    pub alpha_csim: f64,
    pub alpha_psnr_db: f64,
    pub alpha_exp: f64,
    pub alpha_rot: f64,
    pub alpha_trans: f64,
    pub lambda_exp: f64,
    pub lambda_rot: f64,
    pub lambda_trans: f64,
}

impl Default for UpdateThresholds {
    fn default() -> Self {
        Self {
            alpha_csim: 0.7,
            alpha_psnr_db: 13.0,
            alpha_exp: 8.0,
            alpha_rot: 0.3,
            alpha_trans: 0.3,
            lambda_exp: 0.1,
            lambda_rot: 1.0,
            lambda_trans: 1.0,
        }
    }
}

impl UpdateThresholds {
    pub fn validate(&self) -> Result<(), KbError> {
        let all = [
            self.alpha_csim,
            self.alpha_psnr_db,
            self.alpha_exp,
            self.alpha_rot,
            self.alpha_trans,
            self.lambda_exp,
            self.lambda_rot,
            self.lambda_trans,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(KbError::Entry("thresholds must be finite".into()));
        }
        if self.lambda_exp < 0.0 || self.lambda_rot < 0.0 || self.lambda_trans < 0.0 {
            return Err(KbError::Entry("distance weights must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UpdateLevel {
    L0,
    L1,
    L2,
    L3,
}

impl UpdateLevel {
    pub const ALL: [UpdateLevel; 4] = [UpdateLevel::L0, UpdateLevel::L1, UpdateLevel::L2, UpdateLevel::L3];
}

/// Peak signal-to-noise ratio; identical frames give [`Psnr::Identical`],
/// which orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Psnr {
    Db(f64),
    Identical,
}

impl Psnr {
    pub fn exceeds(self, threshold_db: f64) -> bool {
        match self {
            Psnr::Identical => true,
            Psnr::Db(v) => v > threshold_db,
        }
    }

    pub fn as_db(self) -> f64 {
        match self {
            Psnr::Identical => f64::INFINITY,
            Psnr::Db(v) => v,
        }
    }
}

impl PartialOrd for Psnr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.as_db().partial_cmp(&other.as_db())
    }
}

pub fn csim(a: &[f64], b: &[f64]) -> Result<f64, KbError> {
    if a.len() != b.len() {
        return Err(KbError::Shape(a.len(), b.len()));
    }
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(KbError::ZeroNorm);
    }
    Ok((dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0))
}

pub fn psnr(a: &GrayFrame, b: &GrayFrame) -> Result<Psnr, KbError> {
    if (a.width, a.height) != (b.width, b.height) || a.pixels.len() != b.pixels.len() {
        return Err(KbError::Shape(a.pixels.len(), b.pixels.len()));
    }
    let n = a.pixels.len().max(1) as f64;
    let sse: f64 = a
        .pixels
        .iter()
        .zip(&b.pixels)
        .map(|(&x, &y)| {
            let d = f64::from(x) - f64::from(y);
            d * d
        })
        .sum();
    if sse == 0.0 {
        return Ok(Psnr::Identical);
    }
    Ok(Psnr::Db(10.0 * (255.0 * 255.0 / (sse / n)).log10()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemanticDistance {
    pub d_exp: f64,
    pub d_rot: f64,
    pub d_trans: f64,
    pub weighted: f64,
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn semantic_distance(a: &ReferenceEntry, b: &ReferenceEntry, t: &UpdateThresholds) -> SemanticDistance {
    let d_exp = l2(&a.exp6, &b.exp6);
    let d_rot = l2(&a.rot, &b.rot);
    let d_trans = l2(&a.trans, &b.trans);
    SemanticDistance {
        d_exp,
        d_rot,
        d_trans,
        weighted: t.lambda_exp * d_exp + t.lambda_rot * d_rot + t.lambda_trans * d_trans,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpdateAction {
    Reuse(usize),
    Add,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct DecisionDiagnostics {
    pub best_csim: Option<f64>,
    pub best_psnr: Option<Psnr>,
    pub best_distance: Option<SemanticDistance>,
    /// Entries passing the identity check.
    pub eligible: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpdateDecision {
    pub action: UpdateAction,
    pub level: UpdateLevel,
    pub charged_symbols: usize,
    pub diagnostics: DecisionDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub entries: Vec<ReferenceEntry>,
    pub image_cost_symbols: usize,
}

impl Default for KnowledgeBase {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Serialize, Deserialize)]
struct KbHeader {
    version: u32,
    image_cost_symbols: usize,
    entries: usize,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::with_image_cost(IMAGE_COST_SYMBOLS)
    }

    pub fn with_image_cost(image_cost_symbols: usize) -> Self {
        Self {
            entries: Vec::new(),
            image_cost_symbols,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&ReferenceEntry> {
        self.entries.get(index)
    }

    /// Writes a header line followed by one JSON record per entry.
    pub fn write_records<W: Write>(&self, mut w: W) -> Result<(), KbError> {
        let header = KbHeader {
            version: KB_FORMAT_VERSION,
            image_cost_symbols: self.image_cost_symbols,
            entries: self.entries.len(),
        };
        serde_json::to_writer(&mut w, &header)?;
        w.write_all(b"\n")?;
        for e in &self.entries {
            serde_json::to_writer(&mut w, e)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_records<R: BufRead>(r: R) -> Result<Self, KbError> {
        let mut lines = r.lines();
        let header: KbHeader = match lines.next() {
            Some(line) => serde_json::from_str(&line?)?,
            None => return Err(KbError::Entry("missing header".into())),
        };
        if header.version != KB_FORMAT_VERSION {
            return Err(KbError::Version(header.version));
        }
        let mut entries = Vec::with_capacity(header.entries);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            entries.push(serde_json::from_str(&line)?);
        }
        if entries.len() != header.entries {
            return Err(KbError::Entry(format!(
                "header announces {} entries, found {}",
                header.entries,
                entries.len()
            )));
        }
        Ok(Self {
            entries,
            image_cost_symbols: header.image_cost_symbols,
        })
    }

    pub fn to_records_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_records(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("json is utf-8")
    }
}

fn add(level: UpdateLevel, kb: &KnowledgeBase, diagnostics: DecisionDiagnostics) -> UpdateDecision {
    UpdateDecision {
        action: UpdateAction::Add,
        level,
        charged_symbols: kb.image_cost_symbols,
        diagnostics,
    }
}

fn reuse(level: UpdateLevel, index: usize, diagnostics: DecisionDiagnostics) -> UpdateDecision {
    UpdateDecision {
        action: UpdateAction::Reuse(index),
        level,
        charged_symbols: 0,
        diagnostics,
    }
}

pub fn decide_update(
    kb: &KnowledgeBase,
    candidate: &ReferenceEntry,
    level: UpdateLevel,
    t: &UpdateThresholds,
) -> Result<UpdateDecision, KbError> {
    let mut diag = DecisionDiagnostics::default();
    if kb.is_empty() || level == UpdateLevel::L3 {
        return Ok(add(level, kb, diag));
    }

    let mut scored = Vec::with_capacity(kb.len());
    for (i, e) in kb.entries.iter().enumerate() {
        scored.push((i, csim(&e.embedding, &candidate.embedding)?));
    }
    diag.best_csim = scored.iter().map(|s| s.1).reduce(f64::max);
    let eligible: Vec<(usize, f64)> = scored.into_iter().filter(|s| s.1 > t.alpha_csim).collect();
    diag.eligible = eligible.len();
    if eligible.is_empty() {
        return Ok(add(level, kb, diag));
    }

    if level == UpdateLevel::L0 {
        // first maximum wins ties
        let best = eligible
            .iter()
            .fold(eligible[0], |b, &s| if s.1 > b.1 { s } else { b });
        return Ok(reuse(level, best.0, diag));
    }

    let mut with_psnr = Vec::with_capacity(eligible.len());
    for &(i, _) in &eligible {
        with_psnr.push((i, psnr(&kb.entries[i].pixels, &candidate.pixels)?));
    }
    let best_psnr = with_psnr
        .iter()
        .copied()
        .fold(with_psnr[0], |b, s| if s.1 > b.1 { s } else { b });
    diag.best_psnr = Some(best_psnr.1);

    if level == UpdateLevel::L1 {
        return Ok(if best_psnr.1.exceeds(t.alpha_psnr_db) {
            reuse(level, best_psnr.0, diag)
        } else {
            add(level, kb, diag)
        });
    }

    let passing: Vec<(usize, SemanticDistance)> = with_psnr
        .iter()
        .filter(|s| s.1.exceeds(t.alpha_psnr_db))
        .map(|&(i, _)| (i, semantic_distance(&kb.entries[i], candidate, t)))
        .collect();
    let Some(&first) = passing.first() else {
        return Ok(add(level, kb, diag));
    };
    let best = passing
        .iter()
        .fold(first, |b, &s| if s.1.weighted < b.1.weighted { s } else { b });
    diag.best_distance = Some(best.1);
    let d = best.1;
    Ok(
        if d.d_exp < t.alpha_exp && d.d_rot < t.alpha_rot && d.d_trans < t.alpha_trans {
            reuse(level, best.0, diag)
        } else {
            add(level, kb, diag)
        },
    )
}

/// Applies a decision, returning the symbols charged for it.
pub fn apply_decision(kb: &mut KnowledgeBase, candidate: &ReferenceEntry, decision: &UpdateDecision) -> usize {
    match decision.action {
        UpdateAction::Add => {
            kb.entries.push(candidate.clone());
            kb.image_cost_symbols
        }
        UpdateAction::Reuse(_) => 0,
    }
}

/// Index of the reference used after a decision has been applied.
pub fn reference_index(kb: &KnowledgeBase, decision: &UpdateDecision) -> usize {
    match decision.action {
        UpdateAction::Reuse(i) => i,
        UpdateAction::Add => kb.len() - 1,
    }
}
