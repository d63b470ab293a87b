//! Multiple-symbol (burst) interleaving of `L` component codewords.
//!
//! The frame is cut into segments of `BL` symbols dealt round-robin: segment
//! `s` belongs to codeword `s mod L` and holds that codeword's symbols
//! `(s / L) * BL .. (s / L + 1) * BL`. `BL = 1` is ordinary symbol
//! interleaving; `L = 1` is the identity.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterleaveError {
    #[error("interleave depth and burst length must be at least 1 (got L = {depth}, BL = {burst_len})")]
    ZeroParameter { depth: usize, burst_len: usize },
    #[error("codeword length {n} is not a multiple of burst length {burst_len}")]
    Ragged { n: usize, burst_len: usize },
    #[error("expected {expected} codewords, got {got}")]
    WrongCodewordCount { expected: usize, got: usize },
    #[error("codeword {index} has {got} symbols, expected {expected}")]
    WrongCodewordLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("frame has {got} symbols, expected {expected}")]
    WrongFrameLength { expected: usize, got: usize },
    #[error("position out of range")]
    OutOfRange,
}

/// Geometry of one interleaved frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterleaverConfig {
    depth: usize,
    burst_len: usize,
    n: usize,
}

impl InterleaverConfig {
    pub fn new(depth: usize, burst_len: usize, n: usize) -> Result<Self, InterleaveError> {
        if depth == 0 || burst_len == 0 {
            return Err(InterleaveError::ZeroParameter { depth, burst_len });
        }
        if n == 0 || n % burst_len != 0 {
            return Err(InterleaveError::Ragged { n, burst_len });
        }
        Ok(Self {
            depth,
            burst_len,
            n,
        })
    }

    /// Interleave depth `L`.
    #[inline]
    pub fn depth(&self) -> usize {
        self.depth
    }
    /// Symbols per dispatch `BL`.
    #[inline]
    pub fn burst_len(&self) -> usize {
        self.burst_len
    }
    /// Component codeword length.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn segments_per_codeword(&self) -> usize {
        self.n / self.burst_len
    }
    #[inline]
    pub fn total_segments(&self) -> usize {
        self.depth * self.segments_per_codeword()
    }
    #[inline]
    pub fn frame_len(&self) -> usize {
        self.depth * self.n
    }

    /// Codeword that owns segment `s`.
    #[inline]
    pub fn segment_owner(&self, segment: usize) -> usize {
        segment % self.depth
    }

    #[inline]
    pub fn segment_of(&self, position: usize) -> usize {
        position / self.burst_len
    }

    /// Segment holding symbol `symbol` of codeword `codeword`.
    #[inline]
    pub fn segment_for(&self, codeword: usize, symbol: usize) -> usize {
        (symbol / self.burst_len) * self.depth + codeword
    }

    /// Stream position of `(codeword, symbol)`.
    pub fn stream_position(&self, codeword: usize, symbol: usize) -> Result<usize, InterleaveError> {
        if codeword >= self.depth || symbol >= self.n {
            return Err(InterleaveError::OutOfRange);
        }
        Ok(self.segment_for(codeword, symbol) * self.burst_len + symbol % self.burst_len)
    }

    /// Inverse of [`stream_position`](Self::stream_position): `(codeword, symbol)`.
    pub fn codeword_position(&self, position: usize) -> Result<(usize, usize), InterleaveError> {
        if position >= self.frame_len() {
            return Err(InterleaveError::OutOfRange);
        }
        let segment = position / self.burst_len;
        let symbol = (segment / self.depth) * self.burst_len + position % self.burst_len;
        Ok((segment % self.depth, symbol))
    }

    /// Stream positions covered by segment `s`.
    pub fn segment_span(&self, segment: usize) -> std::ops::Range<usize> {
        segment * self.burst_len..(segment + 1) * self.burst_len
    }

    /// Codeword-local symbol indices covered by segment `s`.
    pub fn segment_symbols(&self, segment: usize) -> std::ops::Range<usize> {
        let start = (segment / self.depth) * self.burst_len;
        start..start + self.burst_len
    }

    pub fn interleave<T: Copy, C: AsRef<[T]>>(&self, codewords: &[C]) -> Result<Vec<T>, InterleaveError> {
        if codewords.len() != self.depth {
            return Err(InterleaveError::WrongCodewordCount {
                expected: self.depth,
                got: codewords.len(),
            });
        }
        for (index, cw) in codewords.iter().enumerate() {
            let got = cw.as_ref().len();
            if got != self.n {
                return Err(InterleaveError::WrongCodewordLength {
                    index,
                    expected: self.n,
                    got,
                });
            }
        }
        let mut stream = Vec::with_capacity(self.frame_len());
        for segment in 0..self.total_segments() {
            let cw = codewords[self.segment_owner(segment)].as_ref();
            stream.extend_from_slice(&cw[self.segment_symbols(segment)]);
        }
        Ok(stream)
    }

    pub fn deinterleave<T: Copy>(&self, stream: &[T]) -> Result<Vec<Vec<T>>, InterleaveError> {
        if stream.len() != self.frame_len() {
            return Err(InterleaveError::WrongFrameLength {
                expected: self.frame_len(),
                got: stream.len(),
            });
        }
        let mut codewords: Vec<Vec<T>> = (0..self.depth).map(|_| Vec::with_capacity(self.n)).collect();
        for (segment, chunk) in stream.chunks_exact(self.burst_len).enumerate() {
            codewords[self.segment_owner(segment)].extend_from_slice(chunk);
        }
        Ok(codewords)
    }
}
