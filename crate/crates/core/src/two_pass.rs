//! Two-pass decoding of a burst-interleaved frame.
//!
//! Pass one decodes every component codeword errors-only. When some
//! codewords succeed and others fail, the symbols the successful ones had to
//! correct mark where the burst landed. Pass two erases the failed
//! codewords' segments inside that region and decodes them again with the
//! errors-and-erasures decoder, which reaches bursts roughly twice as long
//! as a single pass can.

use crate::gf::Element;
use crate::interleave::{InterleaveError, InterleaverConfig};
use crate::rs::{CodecError, DecodeResult, RsCode};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Interleave(#[from] InterleaveError),
    #[error("interleaver built for n = {layout} but code has n = {code}")]
    LengthMismatch { code: usize, layout: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    SinglePass,
    TwoPass,
}

/// Inclusive segment range believed to contain the burst.
///
/// `evidence` and `weighted_sum` describe the corrected symbols inside it:
/// their count and the sum of their segment indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurstWindow {
    pub first: usize,
    pub last: usize,
    pub evidence: usize,
    weighted_sum: usize,
}

impl BurstWindow {
    pub fn contains(&self, segment: usize) -> bool {
        (self.first..=self.last).contains(&segment)
    }

    /// Distance of `segment` from the centroid of the corrections, scaled by
    /// `evidence` so it stays integral.
    fn scaled_distance(&self, segment: usize) -> usize {
        (segment * self.evidence).abs_diff(self.weighted_sum)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameOutcome {
    pub first_pass: Vec<DecodeResult>,
    /// Pass-two result where one was attempted, otherwise pass one.
    pub results: Vec<DecodeResult>,
    pub pass_used: Vec<u8>,
    pub window: Option<BurstWindow>,
}

impl FrameOutcome {
    pub fn is_success(&self) -> bool {
        self.results.iter().all(DecodeResult::is_success)
    }
}

/// Maps pass-one corrections onto the frame and returns the segment range
/// most likely hit by a single burst.
///
/// Segments are classified as failed-owned, corrected (owned by a successful
/// codeword that changed at least one symbol there) or clean. Maximal runs
/// without clean segments that contain at least one correction are the
/// candidates; the run with the most corrected symbols wins, the earliest on
/// ties. Returns `None` unless there is both a failure and a correction.
pub fn infer_burst_window(results: &[DecodeResult], layout: &InterleaverConfig) -> Option<BurstWindow> {
    if results.len() != layout.depth()
        || results.iter().all(DecodeResult::is_success)
        || !results.iter().any(DecodeResult::is_success)
    {
        return None;
    }

    let mut corrections = vec![0usize; layout.total_segments()];
    for (c, res) in results.iter().enumerate().filter(|(_, r)| r.is_success()) {
        for &sym in &res.error_positions {
            corrections[layout.segment_for(c, sym)] += 1;
        }
    }
    let is_clean = |s: usize| results[layout.segment_owner(s)].is_success() && corrections[s] == 0;

    let mut best: Option<BurstWindow> = None;
    let mut s = 0;
    while s < corrections.len() {
        if is_clean(s) {
            s += 1;
            continue;
        }
        let first = s;
        while s < corrections.len() && !is_clean(s) {
            s += 1;
        }
        let last = s - 1;
        let evidence: usize = corrections[first..=last].iter().sum();
        if evidence == 0 {
            continue;
        }
        let weighted_sum = (first..=last).map(|seg| seg * corrections[seg]).sum();
        if best.map_or(true, |b| evidence > b.evidence) {
            best = Some(BurstWindow {
                first,
                last,
                evidence,
                weighted_sum,
            });
        }
    }
    best
}

/// An `RS(n, k)` component code burst-interleaved to depth `L`.
#[derive(Debug, Clone)]
pub struct MsIrsCode {
    code: RsCode,
    layout: InterleaverConfig,
}

impl MsIrsCode {
    pub fn new(code: RsCode, layout: InterleaverConfig) -> Result<Self, FrameError> {
        if code.n() != layout.n() {
            return Err(FrameError::LengthMismatch {
                code: code.n(),
                layout: layout.n(),
            });
        }
        Ok(Self { code, layout })
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn layout(&self) -> &InterleaverConfig {
        &self.layout
    }

    /// Encodes `L` messages and interleaves them into one frame.
    pub fn encode_frame<M: AsRef<[Element]>>(&self, messages: &[M]) -> Result<Vec<Element>, FrameError> {
        if messages.len() != self.layout.depth() {
            return Err(InterleaveError::WrongCodewordCount {
                expected: self.layout.depth(),
                got: messages.len(),
            }
            .into());
        }
        let codewords = messages
            .iter()
            .map(|m| self.code.encode(m.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.layout.interleave(&codewords)?)
    }

    /// Deinterleaves and decodes each codeword errors-only.
    pub fn first_pass(&self, frame: &[Element]) -> Result<Vec<DecodeResult>, FrameError> {
        let codewords = self.layout.deinterleave(frame)?;
        codewords
            .iter()
            .map(|cw| self.code.decode(cw, &[]).map_err(FrameError::from))
            .collect()
    }

    pub fn decode(&self, frame: &[Element], kind: DecoderKind) -> Result<FrameOutcome, FrameError> {
        match kind {
            DecoderKind::SinglePass => {
                let first_pass = self.first_pass(frame)?;
                Ok(FrameOutcome {
                    results: first_pass.clone(),
                    pass_used: vec![1; first_pass.len()],
                    first_pass,
                    window: None,
                })
            }
            DecoderKind::TwoPass => self.decode_frame(frame),
        }
    }

    /// Full two-pass decode.
    pub fn decode_frame(&self, frame: &[Element]) -> Result<FrameOutcome, FrameError> {
        let first_pass = self.first_pass(frame)?;
        let mut outcome = FrameOutcome {
            results: first_pass.clone(),
            pass_used: vec![1; first_pass.len()],
            first_pass,
            window: None,
        };
        let Some(window) = infer_burst_window(&outcome.first_pass, &self.layout) else {
            return Ok(outcome);
        };
        outcome.window = Some(window);

        for c in 0..self.layout.depth() {
            if outcome.first_pass[c].is_success() {
                continue;
            }
            let erasures = self.erasures_for(c, &window);
            if erasures.is_empty() {
                continue;
            }
            // A failed pass-one result still carries the received word.
            let received = &outcome.first_pass[c].codeword;
            outcome.results[c] = self.code.decode(received, &erasures)?;
            outcome.pass_used[c] = 2;
        }
        Ok(outcome)
    }

    /// Symbols of codeword `c` to erase: its segments inside the window,
    /// trimmed from the end farther from the correction centroid until the
    /// erasure count fits the redundancy.
    fn erasures_for(&self, c: usize, window: &BurstWindow) -> Vec<usize> {
        let bl = self.layout.burst_len();
        let mut segments: Vec<usize> = (window.first..=window.last)
            .filter(|&s| self.layout.segment_owner(s) == c)
            .collect();
        while segments.len() * bl > self.code.redundancy() {
            let lo = window.scaled_distance(segments[0]);
            let hi = window.scaled_distance(*segments.last().unwrap());
            if hi >= lo {
                segments.pop();
            } else {
                segments.remove(0);
            }
        }
        segments
            .into_iter()
            .flat_map(|s| self.layout.segment_symbols(s))
            .collect()
    }
}
