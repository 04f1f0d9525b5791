use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{SemError, StreamId, StreamMeta, SymbolStream, TransmissionMethod, Workflow};
use crate::grid::ComplexGrid;
use crate::ofdm::{build_frame, extract_data, OfdmFrame, PilotLayout};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StreamCaps {
    pub m: usize,
    pub t: usize,
    pub p: usize,
    pub d: usize,
}

impl StreamCaps {
    pub fn get(&self, id: StreamId) -> usize {
        match id {
            StreamId::M => self.m,
            StreamId::T => self.t,
            StreamId::P => self.p,
            StreamId::D => self.d,
        }
    }

    pub fn total(&self) -> usize {
        self.m + self.t + self.p + self.d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkflowBudget {
    pub workflow: Workflow,
    pub caps: StreamCaps,
    /// OFDM frames allotted per segment.
    #[serde(default = "one")]
    pub frames: usize,
}

fn one() -> usize {
    1
}

impl WorkflowBudget {
    /// 300 symbols of 3DMM parameters plus 300 of text.
    pub fn v2a() -> Self {
        Self {
            workflow: Workflow::V2A,
            caps: StreamCaps {
                m: TransmissionMethod::V2AVideo.symbols(),
                t: TransmissionMethod::V2AAudio.symbols(),
                p: 0,
                d: 0,
            },
            frames: 1,
        }
    }

    /// No video symbols; 600 audio-side symbols split text 300, phonemes 150,
    /// durations 150.
    pub fn a2v() -> Self {
        let audio = TransmissionMethod::A2VAudio.symbols();
        let text = 300;
        let rest = audio - text;
        Self {
            workflow: Workflow::A2V,
            caps: StreamCaps {
                m: TransmissionMethod::A2VVideo.symbols(),
                t: text,
                p: rest / 2,
                d: rest - rest / 2,
            },
            frames: 1,
        }
    }

    pub fn preset(workflow: Workflow) -> Self {
        match workflow {
            Workflow::V2A => Self::v2a(),
            Workflow::A2V => Self::a2v(),
        }
    }

    pub fn total(&self) -> usize {
        self.caps.total()
    }

    pub fn video_symbols(&self) -> usize {
        self.caps.m
    }

    pub fn audio_symbols(&self) -> usize {
        self.caps.t + self.caps.p + self.caps.d
    }
}

/// Side information the receiver needs to split and decode the streams.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuxLayout {
    pub entries: Vec<MuxEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuxEntry {
    pub stream_id: StreamId,
    pub len: usize,
    pub meta: StreamMeta,
}

impl MuxLayout {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.len).sum()
    }

    pub fn symbols_for(&self, id: StreamId) -> usize {
        self.entries
            .iter()
            .filter(|e| e.stream_id == id)
            .map(|e| e.len)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multiplexed {
    pub frames: Vec<OfdmFrame>,
    pub layout: MuxLayout,
}

/// Concatenates streams in M, T, P, D order and packs them into frames.
pub fn multiplex(
    streams: &[SymbolStream],
    budget: &WorkflowBudget,
    layout: &PilotLayout,
) -> Result<Multiplexed, SemError> {
    let mut entries = Vec::new();
    let mut payload: Vec<Complex64> = Vec::new();
    for id in StreamId::ORDER {
        for s in streams.iter().filter(|s| s.stream_id == id) {
            let cap = budget.caps.get(id);
            if s.len() > cap {
                return Err(SemError::BudgetViolation {
                    stream: id,
                    len: s.len(),
                    cap,
                });
            }
            entries.push(MuxEntry {
                stream_id: id,
                len: s.len(),
                meta: s.meta.clone(),
            });
            payload.extend_from_slice(&s.symbols);
        }
    }
    let per_frame = layout.capacity();
    if payload.len() > per_frame * budget.frames {
        return Err(SemError::FrameOverflow {
            total: payload.len(),
            frames: budget.frames,
        });
    }
    let frames = if payload.is_empty() {
        vec![build_frame(&[], layout)?]
    } else {
        payload
            .chunks(per_frame)
            .map(|c| build_frame(c, layout))
            .collect::<Result<_, _>>()?
    };
    Ok(Multiplexed {
        frames,
        layout: MuxLayout { entries },
    })
}

/// Splits received (equalized) frames back into streams. When channel
/// estimates are given, each symbol carries `|H_hat|^2` as its combining
/// weight.
pub fn demultiplex(
    frames: &[OfdmFrame],
    csi: Option<&[ComplexGrid]>,
    mux: &MuxLayout,
    layout: &PilotLayout,
) -> Result<Vec<SymbolStream>, SemError> {
    let per_frame = layout.capacity();
    let total = mux.total();
    if total > per_frame * frames.len() {
        return Err(SemError::Truncated {
            stream: mux.entries.last().map_or(StreamId::M, |e| e.stream_id),
            expected: total,
            got: per_frame * frames.len(),
        });
    }
    let mut symbols = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut remaining = total;
    for (i, frame) in frames.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let n = remaining.min(per_frame);
        symbols.extend(extract_data(frame, layout, n)?);
        if let Some(csi) = csi {
            let h = OfdmFrame::new(csi[i].clone());
            weights.extend(extract_data(&h, layout, n)?.iter().map(|z| z.norm_sqr()));
        }
        remaining -= n;
    }
    let mut offset = 0;
    Ok(mux
        .entries
        .iter()
        .map(|e| {
            let range = offset..offset + e.len;
            offset += e.len;
            SymbolStream {
                stream_id: e.stream_id,
                symbols: symbols[range.clone()].to_vec(),
                meta: e.meta.clone(),
                weights: csi.map(|_| weights[range].to_vec()),
            }
        })
        .collect())
}
