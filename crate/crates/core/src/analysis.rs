//! Closed-form burst-correction and latency figures, plus an exhaustive
//! burst sweep that measures the burst capability of a concrete
//! configuration.

use crate::gf::Element;
use crate::two_pass::{DecoderKind, FrameError, MsIrsCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("parameters must be positive")]
    NonPositive,
    #[error("burst length BL = {burst_len} exceeds t = {t}; the closed form only covers BL <= t")]
    BurstLenAboveT { burst_len: u64, t: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Symbol interleaving, single-pass decoding.
    SsIrs,
    /// Multiple-symbol interleaving, two-pass decoding.
    MsIrs,
}

/// Worst-case burst correction capability in bits.
///
/// `SsIrs`: `(L*t - 1)*m + 1`. `MsIrs`: `(L - 1)*2*BL*m + 1`, valid for
/// `1 <= BL <= t`; `burst_len` is ignored for `SsIrs`.
pub fn becc_bits(scheme: Scheme, depth: u64, t: u64, burst_len: u64, m: u64) -> Result<u64, AnalysisError> {
    if depth == 0 || t == 0 || m == 0 {
        return Err(AnalysisError::NonPositive);
    }
    match scheme {
        Scheme::SsIrs => Ok((depth * t - 1) * m + 1),
        Scheme::MsIrs => {
            if burst_len == 0 {
                return Err(AnalysisError::NonPositive);
            }
            if burst_len > t {
                return Err(AnalysisError::BurstLenAboveT { burst_len, t });
            }
            Ok((depth - 1) * 2 * burst_len * m + 1)
        }
    }
}

/// FEC latency in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyBreakdown {
    pub buffering_ns: f64,
    pub receiving_ns: f64,
    pub decoding_budget_ns: f64,
    pub total_ns: f64,
}

/// Buffering is `L*(n-k)*(k/n)*m` bit times, receiving `L*k*m` bit times.
///
/// Both are computed as a single rational division, so results that are
/// whole nanoseconds come out exact.
pub fn latency(
    n: u64,
    k: u64,
    m: u64,
    depth: u64,
    data_rate_bps: u64,
    decoding_budget_ns: f64,
) -> Result<LatencyBreakdown, AnalysisError> {
    if n == 0 || k == 0 || k > n || m == 0 || depth == 0 || data_rate_bps == 0 || decoding_budget_ns < 0.0 {
        return Err(AnalysisError::NonPositive);
    }
    const NS_PER_S: u128 = 1_000_000_000;
    let (n, k, m, depth, rate) = (n as u128, k as u128, m as u128, depth as u128, data_rate_bps as u128);
    let buffering_ns = (depth * (n - k) * k * m * NS_PER_S) as f64 / (n * rate) as f64;
    let receiving_ns = (depth * k * m * NS_PER_S) as f64 / rate as f64;
    Ok(LatencyBreakdown {
        buffering_ns,
        receiving_ns,
        decoding_budget_ns,
        total_ns: buffering_ns + receiving_ns + decoding_budget_ns,
    })
}

/// Inverts `len` consecutive bits of a symbol stream, starting at bit
/// `start`. Bits are numbered most-significant first within each symbol.
pub fn invert_bits(frame: &mut [Element], m: u32, start: usize, len: usize) {
    let m = m as usize;
    for bit in start..start + len {
        frame[bit / m] ^= 1 << (m - 1 - bit % m);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurstFailure {
    pub len_bits: usize,
    pub start_bit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepReport {
    /// Longest burst length such that every length up to it was recovered
    /// at every start bit.
    pub threshold_bits: usize,
    /// First failing `(length, start)`, if any length up to the cap failed.
    pub first_failure: Option<BurstFailure>,
    pub frames_tested: usize,
}

/// Exhaustively corrupts one frame with every all-inverting burst of
/// `1..=max_bits` bits at every start bit that keeps it inside the frame,
/// stopping at the first length with a failure.
///
/// A frame counts as recovered only when the decoder succeeds and returns
/// the transmitted codewords.
pub fn burst_sweep(
    code: &MsIrsCode,
    kind: DecoderKind,
    max_bits: usize,
    seed: u64,
) -> Result<SweepReport, FrameError> {
    let m = code.code().bits();
    let q = code.code().field().size() as Element;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let messages: Vec<Vec<Element>> = (0..code.layout().depth())
        .map(|_| (0..code.code().k()).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    let clean = code.encode_frame(&messages)?;
    let truth = code.layout().deinterleave(&clean)?;
    let frame_bits = clean.len() * m as usize;

    let recovered = |start: usize, len: usize| -> Result<bool, FrameError> {
        let mut frame = clean.clone();
        invert_bits(&mut frame, m, start, len);
        let out = code.decode(&frame, kind)?;
        Ok(out.is_success() && out.results.iter().zip(&truth).all(|(r, t)| &r.codeword == t))
    };

    let mut frames_tested = 0;
    for len in 1..=max_bits.min(frame_bits) {
        let starts = frame_bits - len + 1;
        let failures: Vec<usize> = (0..starts)
            .into_par_iter()
            .map(|start| recovered(start, len).map(|ok| (!ok).then_some(start)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        frames_tested += starts;
        if let Some(&start_bit) = failures.first() {
            return Ok(SweepReport {
                threshold_bits: len - 1,
                first_failure: Some(BurstFailure {
                    len_bits: len,
                    start_bit,
                }),
                frames_tested,
            });
        }
    }
    Ok(SweepReport {
        threshold_bits: max_bits.min(frame_bits),
        first_failure: None,
        frames_tested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn becc_fixtures() {
        assert_eq!(becc_bits(Scheme::SsIrs, 3, 4, 1, 9), Ok(100));
        assert_eq!(becc_bits(Scheme::MsIrs, 3, 4, 4, 9), Ok(145));
        assert_eq!(becc_bits(Scheme::SsIrs, 1, 1, 1, 1), Ok(1));
        assert_eq!(
            becc_bits(Scheme::MsIrs, 3, 4, 5, 9),
            Err(AnalysisError::BurstLenAboveT { burst_len: 5, t: 4 })
        );
        assert_eq!(becc_bits(Scheme::MsIrs, 3, 4, 0, 9), Err(AnalysisError::NonPositive));
        assert_eq!(becc_bits(Scheme::SsIrs, 0, 4, 1, 9), Err(AnalysisError::NonPositive));
    }

    #[test]
    fn ms_irs_with_bl_equal_t_matches_2t_form() {
        for l in 1..20 {
            for t in 1..12 {
                for m in 1..13 {
                    assert_eq!(
                        becc_bits(Scheme::MsIrs, l, t, t, m).unwrap(),
                        (l - 1) * 2 * t * m + 1
                    );
                }
            }
        }
    }

    #[test]
    fn ratio_approaches_two() {
        for l in 10..40 {
            for t in 4..12 {
                for m in 3..13 {
                    let ms = becc_bits(Scheme::MsIrs, l, t, t, m).unwrap() as f64;
                    let ss = becc_bits(Scheme::SsIrs, l, t, 1, m).unwrap() as f64;
                    assert!(ms / ss > 1.8, "L={l} t={t} m={m}");
                    assert!(ms / ss < 2.0);
                }
            }
        }
    }

    #[test]
    fn latency_fixture() {
        let l = latency(108, 96, 9, 4, 1_000_000_000, 120.0).unwrap();
        assert_eq!(l.buffering_ns, 384.0);
        assert_eq!(l.receiving_ns, 3456.0);
        assert_eq!(l.decoding_budget_ns, 120.0);
        assert_eq!(l.total_ns, 3960.0);
        assert!(l.total_ns < 4000.0);

        let single = latency(108, 96, 9, 1, 1_000_000_000, 0.0).unwrap();
        assert_eq!(single.buffering_ns, 96.0);

        let fast = latency(108, 96, 9, 4, 2_000_000_000, 0.0).unwrap();
        assert_eq!(fast.buffering_ns, 192.0);
        assert_eq!(fast.receiving_ns, 1728.0);

        assert!(latency(108, 96, 9, 4, 0, 0.0).is_err());
    }

    #[test]
    fn invert_bits_msb_first() {
        let mut f = vec![0u16; 3];
        invert_bits(&mut f, 4, 3, 6);
        assert_eq!(f, vec![0b0001, 0b1111, 0b1000]);
    }
}
