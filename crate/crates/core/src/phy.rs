//! PAM3 line model: 3-bit to two-level-pair mapping, a real FIR channel,
//! AWGN plus periodic burst noise, and a zero-forcing decision feedback
//! equalizer.
//!
//! A "mapper symbol" is one 3-bit group, sent as an even and an odd line
//! sample. Burst timing is counted in mapper symbols.

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::gf::Element;

/// A PAM3 line level, one of -1, 0, +1.
pub type Level = i8;

/// Mean square of the transmitted alphabet: levels -1, 0, +1 appear 3:2:3
/// in each sample position of the mapping table.
pub const SIGNAL_POWER: f64 = 0.75;

/// Stand-in postcursor-only channel response (h[0] dominant).
pub const DEFAULT_TAPS: [f64; 5] = [1.0, 0.45, 0.25, 0.12, 0.05];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhyError {
    #[error("{0} is not a 3-bit group")]
    GroupOutOfRange(u8),
    #[error("channel taps must be nonempty with a dominant nonzero first tap")]
    BadTaps,
    #[error("burst duration {duration} exceeds period {period}")]
    BurstLongerThanPeriod { duration: u64, period: u64 },
    #[error("burst period must be positive")]
    ZeroPeriod,
    #[error("SNR/SBR must not be NaN")]
    NanLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pam3Pair {
    pub even: Level,
    pub odd: Level,
}

impl Pam3Pair {
    pub const fn new(even: Level, odd: Level) -> Self {
        Self { even, odd }
    }
}

const MAPPING: [Pam3Pair; 8] = [
    Pam3Pair::new(-1, -1),
    Pam3Pair::new(-1, 0),
    Pam3Pair::new(-1, 1),
    Pam3Pair::new(0, -1),
    Pam3Pair::new(0, 1),
    Pam3Pair::new(1, -1),
    Pam3Pair::new(1, 0),
    Pam3Pair::new(1, 1),
];

pub fn pam3_map(bits: u8) -> Result<Pam3Pair, PhyError> {
    MAPPING
        .get(bits as usize)
        .copied()
        .ok_or(PhyError::GroupOutOfRange(bits))
}

/// Inverse of [`pam3_map`]. The unused pair `{0, 0}` demaps to `000`.
pub fn pam3_demap(pair: Pam3Pair) -> u8 {
    match (pair.even, pair.odd) {
        (-1, -1) => 0b000,
        (-1, 0) => 0b001,
        (-1, 1) => 0b010,
        (0, -1) => 0b011,
        (0, 1) => 0b100,
        (1, -1) => 0b101,
        (1, 0) => 0b110,
        (1, 1) => 0b111,
        _ => 0b000,
    }
}

/// Splits `m`-bit symbols into 3-bit groups, most significant bits first.
/// The bit string is zero-padded to a multiple of three.
pub fn symbols_to_groups(symbols: &[Element], m: u32) -> Vec<u8> {
    let total = symbols.len() * m as usize;
    let mut groups = Vec::with_capacity(total.div_ceil(3));
    let mut acc = 0u8;
    let mut filled = 0;
    for &s in symbols {
        for b in (0..m).rev() {
            acc = (acc << 1) | ((s >> b) & 1) as u8;
            filled += 1;
            if filled == 3 {
                groups.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        groups.push(acc << (3 - filled));
    }
    groups
}

/// Reassembles `count` symbols of `m` bits from 3-bit groups.
pub fn groups_to_symbols(groups: &[u8], m: u32, count: usize) -> Vec<Element> {
    let mut bits = groups.iter().flat_map(|&g| (0..3).rev().map(move |b| (g >> b) & 1));
    (0..count)
        .map(|_| {
            (0..m).fold(0 as Element, |acc, _| {
                (acc << 1) | bits.next().unwrap_or(0) as Element
            })
        })
        .collect()
}

/// Maps 3-bit groups to line samples (even, odd, even, odd, ...).
pub fn modulate(groups: &[u8]) -> Result<Vec<f64>, PhyError> {
    let mut samples = Vec::with_capacity(2 * groups.len());
    for &g in groups {
        let p = pam3_map(g)?;
        samples.push(p.even as f64);
        samples.push(p.odd as f64);
    }
    Ok(samples)
}

/// Demaps sliced levels pairwise. A trailing unpaired level is ignored.
pub fn demodulate(levels: &[Level]) -> Vec<u8> {
    levels
        .chunks_exact(2)
        .map(|p| pam3_demap(Pam3Pair::new(p[0], p[1])))
        .collect()
}

/// Periodic burst: mapper symbol `j` is hit when
/// `(j - phase) mod period < duration`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurstSchedule {
    pub duration: u64,
    pub period: u64,
    pub phase: u64,
}

impl BurstSchedule {
    #[inline]
    pub fn is_hit(&self, symbol: u64) -> bool {
        let rel = (symbol as i128 - self.phase as i128).rem_euclid(self.period as i128);
        (rel as u64) < self.duration
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelConfig {
    pub taps: Vec<f64>,
    /// AWGN level; `f64::INFINITY` disables it.
    pub snr_db: f64,
    /// Burst noise level; `f64::INFINITY` disables it.
    pub sbr_db: f64,
    pub burst: BurstSchedule,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            taps: DEFAULT_TAPS.to_vec(),
            snr_db: 30.0,
            sbr_db: f64::INFINITY,
            burst: BurstSchedule {
                duration: 38,
                period: 5400,
                phase: 0,
            },
        }
    }
}

impl ChannelConfig {
    pub fn validate(&self) -> Result<(), PhyError> {
        let Some(&h0) = self.taps.first() else {
            return Err(PhyError::BadTaps);
        };
        if h0 == 0.0 || !h0.is_finite() || self.taps.iter().any(|h| !h.is_finite() || h.abs() > h0.abs()) {
            return Err(PhyError::BadTaps);
        }
        if self.burst.period == 0 {
            return Err(PhyError::ZeroPeriod);
        }
        if self.burst.duration > self.burst.period {
            return Err(PhyError::BurstLongerThanPeriod {
                duration: self.burst.duration,
                period: self.burst.period,
            });
        }
        if self.snr_db.is_nan() || self.sbr_db.is_nan() {
            return Err(PhyError::NanLevel);
        }
        Ok(())
    }

    /// AWGN variance per line sample.
    pub fn awgn_variance(&self) -> f64 {
        SIGNAL_POWER * 10f64.powf(-self.snr_db / 10.0)
    }

    /// Burst noise variance per line sample while the burst is on.
    pub fn burst_variance(&self) -> f64 {
        SIGNAL_POWER * 10f64.powf(-self.sbr_db / 10.0)
    }
}

/// `y[i] = Σ h[k] x[i-k]`, zero initial state, truncated to the input length.
pub fn channel_apply(samples: &[f64], taps: &[f64]) -> Vec<f64> {
    (0..samples.len())
        .map(|i| {
            taps.iter()
                .take(i + 1)
                .enumerate()
                .map(|(k, h)| h * samples[i - k])
                .sum()
        })
        .collect()
}

/// Adds AWGN to every sample and burst noise to both samples of each hit
/// mapper symbol. `first_symbol` is the global mapper-symbol index of
/// `samples[0..2]`, so the burst schedule runs across frames.
///
/// Two standard normals are drawn for every sample whether or not they are
/// used, so the random stream position does not depend on the noise levels.
pub fn noise_inject<R: Rng + ?Sized>(samples: &mut [f64], cfg: &ChannelConfig, first_symbol: u64, rng: &mut R) {
    let awgn = cfg.awgn_variance().sqrt();
    let burst = cfg.burst_variance().sqrt();
    for (i, x) in samples.iter_mut().enumerate() {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        *x += awgn * a;
        if cfg.burst.is_hit(first_symbol + (i / 2) as u64) {
            *x += burst * b;
        }
    }
}

/// Three-level slicer with thresholds at ±0.5; the thresholds themselves
/// slice to 0.
#[inline]
pub fn slice(v: f64) -> Level {
    if v > 0.5 {
        1
    } else if v < -0.5 {
        -1
    } else {
        0
    }
}

/// Zero-forcing DFE with the channel known at the receiver:
/// `z[i] = (y[i] - Σ_{k>=1} h[k] d[i-k]) / h[0]`, `d[i] = slice(z[i])`.
pub fn dfe_equalize(received: &[f64], taps: &[f64]) -> Vec<Level> {
    let h0 = taps[0];
    let mut decisions: Vec<Level> = Vec::with_capacity(received.len());
    for (i, &y) in received.iter().enumerate() {
        let isi: f64 = taps
            .iter()
            .enumerate()
            .skip(1)
            .take_while(|&(k, _)| k <= i)
            .map(|(k, h)| h * decisions[i - k] as f64)
            .sum();
        decisions.push(slice((y - isi) / h0));
    }
    decisions
}
