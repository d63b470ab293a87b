//! Systematic shortened Reed-Solomon codes with an errors-and-erasures
//! decoder.
//!
//! Codeword layout is message first, parity last. Index `i` of an `n`-symbol
//! word is the coefficient of `x^(n-1-i)`, so position `i` has locator
//! `α^(n-1-i)`. Positions `n..2^m-1` of the mother code are implicit zeros.
//!
//! Decoding follows the usual pipeline: syndromes, an erasure locator that
//! seeds Berlekamp-Massey, Chien search restricted to the shortened support,
//! Forney magnitudes, and a final syndrome check. Any `e` errors and `f`
//! erasures with `2e + f <= n - k` are corrected, using every parity symbol
//! even when `n - k` is odd.

use crate::gf::{Element, Field, GfError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("invalid code dimensions n = {n}, k = {k} (need 0 < k < n <= {max})")]
    InvalidDimensions { n: usize, k: usize, max: usize },
    #[error("expected {expected} symbols, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("symbol {value:#x} at index {index} does not fit in {bits} bits")]
    SymbolOutOfRange {
        index: usize,
        value: Element,
        bits: u32,
    },
    #[error("erasure position {position} outside codeword of length {n}")]
    ErasureOutOfRange { position: usize, n: usize },
    #[error("{count} erasures exceed the redundancy {redundancy}")]
    TooManyErasures { count: usize, redundancy: usize },
}

/// Monic generator polynomial with roots `α^b, …, α^(b+r-1)`, coefficients
/// ordered constant term first.
pub fn generator_poly(field: &Field, r: usize, b: i64) -> Vec<Element> {
    let mut g = vec![1 as Element];
    for i in 0..r {
        let root = field.alpha_pow(b + i as i64);
        // g(x) * (x + root)
        let mut next = vec![0 as Element; g.len() + 1];
        for (j, &c) in g.iter().enumerate() {
            next[j + 1] ^= c;
            next[j] ^= field.mul(c, root);
        }
        g = next;
    }
    g
}

/// Evaluates a constant-first polynomial at `x`.
fn eval_low_first(field: &Field, poly: &[Element], x: Element) -> Element {
    poly.iter()
        .rev()
        .fold(0, |acc, &c| field.mul(acc, x) ^ c)
}

/// Drops leading zero coefficients, keeping at least the constant term.
fn trim(poly: &mut Vec<Element>) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Success,
    Failure,
}

/// Outcome of decoding one component codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Corrected word on success, the received word unchanged on failure.
    pub codeword: Vec<Element>,
    /// Sorted positions whose value was changed, including filled erasures
    /// that differed from what was received. Empty on failure.
    pub error_positions: Vec<usize>,
    /// Sorted, deduplicated erasure set that was supplied.
    pub erasures: Vec<usize>,
}

impl DecodeResult {
    #[inline]
    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }

    fn failure(received: &[Element], erasures: Vec<usize>) -> Self {
        Self {
            status: DecodeStatus::Failure,
            codeword: received.to_vec(),
            error_positions: Vec::new(),
            erasures,
        }
    }

    /// Corrected positions that were not erased.
    pub fn unflagged_corrections(&self) -> impl Iterator<Item = usize> + '_ {
        self.error_positions
            .iter()
            .copied()
            .filter(|p| self.erasures.binary_search(p).is_err())
    }
}

/// A systematic `RS(n, k)` code over GF(2^m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCode {
    field: Field,
    n: usize,
    k: usize,
    first_root: i64,
    generator: Vec<Element>,
}

impl RsCode {
    /// Code with consecutive roots starting at `α^0`.
    pub fn new(field: Field, n: usize, k: usize) -> Result<Self, CodecError> {
        Self::with_first_root(field, n, k, 0)
    }

    pub fn with_first_root(
        field: Field,
        n: usize,
        k: usize,
        first_root: i64,
    ) -> Result<Self, CodecError> {
        let max = field.order();
        if k == 0 || k >= n || n > max {
            return Err(CodecError::InvalidDimensions { n, k, max });
        }
        let generator = generator_poly(&field, n - k, first_root);
        Ok(Self {
            field,
            n,
            k,
            first_root,
            generator,
        })
    }

    /// `RS(n, k)` over GF(2^m) with the default primitive polynomial.
    pub fn with_params(n: usize, k: usize, m: u32) -> Result<Self, CodecError> {
        Self::new(Field::with_default_poly(m)?, n, k)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }
    #[inline]
    pub fn bits(&self) -> u32 {
        self.field.bits()
    }
    /// Number of parity symbols, `n - k`.
    #[inline]
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }
    /// Errors-only correction capability `⌊(n - k) / 2⌋`.
    #[inline]
    pub fn t(&self) -> usize {
        self.redundancy() / 2
    }
    #[inline]
    pub fn first_root(&self) -> i64 {
        self.first_root
    }
    /// Generator coefficients, constant term first.
    pub fn generator(&self) -> &[Element] {
        &self.generator
    }

    /// Locator `α^(n-1-pos)` of codeword position `pos`.
    #[inline]
    fn locator_exp(&self, pos: usize) -> i64 {
        (self.n - 1 - pos) as i64
    }

    fn check_symbols(&self, word: &[Element]) -> Result<(), CodecError> {
        match word.iter().position(|&s| !self.field.contains(s)) {
            Some(index) => Err(CodecError::SymbolOutOfRange {
                index,
                value: word[index],
                bits: self.bits(),
            }),
            None => Ok(()),
        }
    }

    pub fn encode(&self, message: &[Element]) -> Result<Vec<Element>, CodecError> {
        if message.len() != self.k {
            return Err(CodecError::WrongLength {
                expected: self.k,
                got: message.len(),
            });
        }
        self.check_symbols(message)?;

        let r = self.redundancy();
        let f = &self.field;
        // LFSR division by the monic generator; rem[j] is the x^j coefficient.
        let mut rem = vec![0 as Element; r];
        for &m in message {
            let feedback = m ^ rem[r - 1];
            for j in (1..r).rev() {
                rem[j] = rem[j - 1] ^ f.mul(feedback, self.generator[j]);
            }
            rem[0] = f.mul(feedback, self.generator[0]);
        }

        let mut codeword = Vec::with_capacity(self.n);
        codeword.extend_from_slice(message);
        codeword.extend(rem.iter().rev());
        Ok(codeword)
    }

    /// `S_j = c(α^(b+j))` for `j = 0..n-k`. No length checks.
    pub fn syndromes(&self, word: &[Element]) -> Vec<Element> {
        let f = &self.field;
        (0..self.redundancy())
            .map(|j| {
                let x = f.alpha_pow(self.first_root + j as i64);
                word.iter().fold(0, |acc, &c| f.mul(acc, x) ^ c)
            })
            .collect()
    }

    pub fn is_codeword(&self, word: &[Element]) -> bool {
        word.len() == self.n && self.syndromes(word).iter().all(|&s| s == 0)
    }

    /// Errors-and-erasures decoding of one received word.
    ///
    /// `Err` is reserved for malformed input. A word outside the decoding
    /// radius produces `Ok` with [`DecodeStatus::Failure`], unless it lands
    /// inside another codeword's radius and is miscorrected.
    pub fn decode(
        &self,
        received: &[Element],
        erasures: &[usize],
    ) -> Result<DecodeResult, CodecError> {
        if received.len() != self.n {
            return Err(CodecError::WrongLength {
                expected: self.n,
                got: received.len(),
            });
        }
        self.check_symbols(received)?;
        let mut erasures = erasures.to_vec();
        erasures.sort_unstable();
        erasures.dedup();
        if let Some(&position) = erasures.iter().find(|&&p| p >= self.n) {
            return Err(CodecError::ErasureOutOfRange {
                position,
                n: self.n,
            });
        }
        let r = self.redundancy();
        if erasures.len() > r {
            return Err(CodecError::TooManyErasures {
                count: erasures.len(),
                redundancy: r,
            });
        }

        let synd = self.syndromes(received);
        if synd.iter().all(|&s| s == 0) {
            return Ok(DecodeResult {
                status: DecodeStatus::Success,
                codeword: received.to_vec(),
                error_positions: Vec::new(),
                erasures,
            });
        }

        Ok(self
            .correct(received, &synd, &erasures)
            .unwrap_or_else(|| DecodeResult::failure(received, erasures)))
    }

    fn correct(
        &self,
        received: &[Element],
        synd: &[Element],
        erasures: &[usize],
    ) -> Option<DecodeResult> {
        let f = &self.field;
        let r = self.redundancy();
        let nf = erasures.len();

        // Erasure locator Γ(x) = Π (1 + X_i x).
        let mut gamma = vec![1 as Element];
        for &p in erasures {
            let x = f.alpha_pow(self.locator_exp(p));
            gamma.push(0);
            for j in (1..gamma.len()).rev() {
                gamma[j] ^= f.mul(gamma[j - 1], x);
            }
        }

        // Berlekamp-Massey seeded with Γ, so the result is the errata locator.
        let mut lambda = gamma.clone();
        let mut prev = gamma;
        let mut len = nf;
        for step in (nf + 1)..=r {
            let delta = lambda
                .iter()
                .enumerate()
                .take(step)
                .fold(0, |acc, (j, &c)| acc ^ f.mul(c, synd[step - 1 - j]));
            // prev <- x * prev
            prev.insert(0, 0);
            if delta == 0 {
                continue;
            }
            let mut next = lambda.clone();
            if next.len() < prev.len() {
                next.resize(prev.len(), 0);
            }
            for (j, &c) in prev.iter().enumerate() {
                next[j] ^= f.mul(delta, c);
            }
            if 2 * len < step + nf {
                let scale = f.inv(delta).ok()?;
                prev = lambda.iter().map(|&c| f.mul(c, scale)).collect();
                len = step + nf - len;
            }
            lambda = next;
        }
        trim(&mut lambda);
        let degree = lambda.len() - 1;
        if degree != len || 2 * len > r + nf {
            return None;
        }

        let roots: Vec<usize> = (0..self.n)
            .filter(|&p| {
                let x_inv = f.alpha_pow(-self.locator_exp(p));
                eval_low_first(f, &lambda, x_inv) == 0
            })
            .collect();
        if roots.len() != degree {
            return None;
        }

        // Ω(x) = S(x) Λ(x) mod x^r
        let mut omega = vec![0 as Element; r];
        for (i, &l) in lambda.iter().enumerate() {
            for (j, &s) in synd.iter().enumerate().take(r - i.min(r)) {
                omega[i + j] ^= f.mul(l, s);
            }
        }
        // Formal derivative keeps odd-degree terms only.
        let lambda_deriv: Vec<Element> = lambda
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| if j % 2 == 1 { c } else { 0 })
            .collect();

        let mut codeword = received.to_vec();
        let mut error_positions = Vec::with_capacity(roots.len());
        for &p in &roots {
            let e = self.locator_exp(p);
            let x_inv = f.alpha_pow(-e);
            let den = eval_low_first(f, &lambda_deriv, x_inv);
            if den == 0 {
                return None;
            }
            let num = f.mul(
                eval_low_first(f, &omega, x_inv),
                f.alpha_pow(e * (1 - self.first_root)),
            );
            let magnitude = f.div(num, den).ok()?;
            if magnitude != 0 {
                codeword[p] ^= magnitude;
                error_positions.push(p);
            }
        }

        if self.syndromes(&codeword).iter().any(|&s| s != 0) {
            return None;
        }
        Some(DecodeResult {
            status: DecodeStatus::Success,
            codeword,
            error_positions,
            erasures: erasures.to_vec(),
        })
    }
}
