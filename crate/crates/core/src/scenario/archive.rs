//! Binary corpus archive.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic        8 bytes  "SSCORP01"
//! seed         u64
//! params_len   u32, followed by that many bytes of JSON-encoded CorpusParams
//! n_users, n_segments, frames_per_segment, embed_dim,
//! width, height, n_keypoints                      7 x u32
//! users        n_users x embed_dim x f64
//! per segment:
//!   user_id u32, n_text u32, n_phonemes u32
//!   per frame: embedding f64[embed_dim], pixels u8[width*height],
//!              params f64[12] (exp6, rot, trans), keypoints f64[2*n_keypoints]
//!   text u32[n_text], phonemes u32[n_phonemes], durations f64[n_phonemes]
//! ```

use std::io::{Read, Write};

use super::{CorpusParams, FrameSample, ScenarioError, Segment, SessionCorpus};
use crate::kbstore::GrayFrame;
use crate::semcodec::AudioSemantics;

pub const ARCHIVE_MAGIC: &[u8; 8] = b"SSCORP01";

fn bad(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Archive(msg.into())
}

struct Writer<W: Write>(W);

impl<W: Write> Writer<W> {
    fn u32(&mut self, v: usize) -> Result<(), ScenarioError> {
        let v = u32::try_from(v).map_err(|_| bad("count does not fit in u32"))?;
        Ok(self.0.write_all(&v.to_le_bytes())?)
    }

    fn f64s(&mut self, vs: &[f64]) -> Result<(), ScenarioError> {
        for v in vs {
            self.0.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }
}

struct Reader<R: Read>(R);

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], ScenarioError> {
        let mut b = [0u8; N];
        self.0.read_exact(&mut b)?;
        Ok(b)
    }

    fn u32(&mut self) -> Result<usize, ScenarioError> {
        Ok(u32::from_le_bytes(self.bytes()?) as usize)
    }

    fn f64(&mut self) -> Result<f64, ScenarioError> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }

    fn f64s(&mut self, n: usize) -> Result<Vec<f64>, ScenarioError> {
        (0..n).map(|_| self.f64()).collect()
    }

    fn vec_u8(&mut self, n: usize) -> Result<Vec<u8>, ScenarioError> {
        let mut b = vec![0u8; n];
        self.0.read_exact(&mut b)?;
        Ok(b)
    }
}

pub fn write_archive<W: Write>(corpus: &SessionCorpus, w: W) -> Result<(), ScenarioError> {
    let mut w = Writer(w);
    let first = corpus
        .segments
        .first()
        .and_then(|s| s.frames.first())
        .ok_or_else(|| bad("corpus has no frames"))?;
    let embed_dim = first.embedding.len();
    let (width, height) = (first.pixels.width, first.pixels.height);
    let n_kp = first.keypoints.len();
    let fps = corpus.params.frames_per_segment;

    w.0.write_all(ARCHIVE_MAGIC)?;
    w.0.write_all(&corpus.seed.to_le_bytes())?;
    let params = serde_json::to_vec(&corpus.params).map_err(|e| bad(e.to_string()))?;
    w.u32(params.len())?;
    w.0.write_all(&params)?;
    for v in [corpus.users.len(), corpus.segments.len(), fps, embed_dim, width, height, n_kp] {
        w.u32(v)?;
    }
    for u in &corpus.users {
        if u.len() != embed_dim {
            return Err(bad("user embedding dimension mismatch"));
        }
        w.f64s(u)?;
    }
    for s in &corpus.segments {
        if s.frames.len() != fps {
            return Err(bad(format!("segment {} frame count mismatch", s.index)));
        }
        w.u32(s.user_id as usize)?;
        w.u32(s.audio.text_tokens.len())?;
        w.u32(s.audio.phoneme_tokens.len())?;
        for f in &s.frames {
            if f.embedding.len() != embed_dim
                || (f.pixels.width, f.pixels.height) != (width, height)
                || f.keypoints.len() != n_kp
            {
                return Err(bad(format!("segment {} frame shape mismatch", s.index)));
            }
            w.f64s(&f.embedding)?;
            w.0.write_all(&f.pixels.pixels)?;
            w.f64s(&f.params())?;
            for k in &f.keypoints {
                w.f64s(k)?;
            }
        }
        for &t in s.audio.text_tokens.iter().chain(&s.audio.phoneme_tokens) {
            w.0.write_all(&t.to_le_bytes())?;
        }
        w.f64s(&s.audio.durations_s)?;
    }
    Ok(())
}

pub fn read_archive<R: Read>(r: R) -> Result<SessionCorpus, ScenarioError> {
    let mut r = Reader(r);
    if &r.bytes::<8>()? != ARCHIVE_MAGIC {
        return Err(bad("bad magic"));
    }
    let seed = u64::from_le_bytes(r.bytes()?);
    let plen = r.u32()?;
    let params: CorpusParams =
        serde_json::from_slice(&r.vec_u8(plen)?).map_err(|e| bad(e.to_string()))?;
    let n_users = r.u32()?;
    let n_segments = r.u32()?;
    let fps = r.u32()?;
    let embed_dim = r.u32()?;
    let width = r.u32()?;
    let height = r.u32()?;
    let n_kp = r.u32()?;
    let users = (0..n_users)
        .map(|_| r.f64s(embed_dim))
        .collect::<Result<Vec<_>, _>>()?;
    let mut segments = Vec::with_capacity(n_segments);
    for index in 0..n_segments {
        let user_id = r.u32()? as u32;
        let n_text = r.u32()?;
        let n_ph = r.u32()?;
        let mut frames = Vec::with_capacity(fps);
        for _ in 0..fps {
            let embedding = r.f64s(embed_dim)?;
            let pixels = GrayFrame {
                width,
                height,
                pixels: r.vec_u8(width * height)?,
            };
            let p = r.f64s(12)?;
            let keypoints = (0..n_kp)
                .map(|_| Ok([r.f64()?, r.f64()?]))
                .collect::<Result<Vec<_>, ScenarioError>>()?;
            frames.push(FrameSample {
                embedding,
                pixels,
                exp6: p[..6].try_into().expect("six"),
                rot: p[6..9].try_into().expect("three"),
                trans: p[9..].try_into().expect("three"),
                keypoints,
            });
        }
        let mut tokens = |n: usize| -> Result<Vec<u32>, ScenarioError> {
            (0..n).map(|_| Ok(u32::from_le_bytes(r.bytes()?))).collect()
        };
        let text_tokens = tokens(n_text)?;
        let phoneme_tokens = tokens(n_ph)?;
        let durations_s = r.f64s(n_ph)?;
        segments.push(Segment {
            index,
            user_id,
            frames,
            audio: AudioSemantics {
                text_tokens,
                phoneme_tokens,
                durations_s,
            },
        });
    }
    let mut rest = [0u8; 1];
    if r.0.read(&mut rest)? != 0 {
        return Err(bad("trailing bytes"));
    }
    Ok(SessionCorpus {
        seed,
        params,
        users,
        segments,
    })
}
