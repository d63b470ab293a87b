//! Experiment configuration: schemes, channel, SBR sweep and presets, plus
//! the flat `key = value` file format.
//!
//! ```text
//! # Case-1 style run with a custom sweep
//! preset = case1
//! sbr_min = 4
//! sbr_max = 14
//! frames = 500
//! scheme = n=144 k=129 m=9 L=3 BL=6 decoder=two_pass
//! ```
//!
//! Recognised keys: `preset`, `scheme` (repeatable; replaces the preset's
//! schemes), `taps` (comma separated), `snr_db`, `sbr_min`, `sbr_max`,
//! `sbr_step`, `burst_duration`, `burst_period`, `burst_phase`, `frames`,
//! `seed`. Levels accept `inf` to switch a noise source off.

use std::path::Path;

use thiserror::Error;

use crate::interleave::InterleaverConfig;
use crate::phy::{BurstSchedule, ChannelConfig, PhyError};
use crate::rs::RsCode;
use crate::two_pass::{DecoderKind, FrameError, MsIrsCode};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown preset {0:?} (expected case1 or case2)")]
    UnknownPreset(String),
    #[error("no schemes configured")]
    NoSchemes,
    #[error("frames per point must be at least 1")]
    NoFrames,
    #[error("invalid SBR sweep {min} ..= {max} step {step}")]
    BadSweep { min: f64, max: f64, step: f64 },
    #[error("scheme {label}: {source}")]
    Scheme { label: String, source: FrameError },
    #[error(transparent)]
    Channel(#[from] PhyError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// One coded transmission scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeConfig {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub m: u32,
    pub depth: usize,
    pub burst_len: usize,
    pub decoder: DecoderKind,
}

impl SchemeConfig {
    pub fn new(n: usize, k: usize, m: u32, depth: usize, burst_len: usize, decoder: DecoderKind) -> Self {
        let label = default_label(n, k, depth, burst_len, decoder);
        Self {
            label,
            n,
            k,
            m,
            depth,
            burst_len,
            decoder,
        }
    }

    /// A single long codeword, no interleaving.
    pub fn long(n: usize, k: usize, m: u32) -> Self {
        Self::new(n, k, m, 1, n, DecoderKind::SinglePass)
    }

    pub fn build(&self) -> Result<MsIrsCode, ConfigError> {
        let wrap = |source: FrameError| ConfigError::Scheme {
            label: self.label.clone(),
            source,
        };
        let code = RsCode::with_params(self.n, self.k, self.m).map_err(|e| wrap(e.into()))?;
        let layout = InterleaverConfig::new(self.depth, self.burst_len, self.n).map_err(|e| wrap(e.into()))?;
        MsIrsCode::new(code, layout).map_err(wrap)
    }

    /// Information bits carried by one frame.
    pub fn info_bits(&self) -> u64 {
        (self.depth * self.k) as u64 * self.m as u64
    }
}

fn default_label(n: usize, k: usize, depth: usize, burst_len: usize, decoder: DecoderKind) -> String {
    let pass = match decoder {
        DecoderKind::SinglePass => "single_pass",
        DecoderKind::TwoPass => "two_pass",
    };
    if depth == 1 {
        format!("rs{n}_{k}_L1_{pass}")
    } else {
        format!("rs{n}_{k}_L{depth}_BL{burst_len}_{pass}")
    }
}

/// Inclusive SBR grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbrSweep {
    pub min_db: f64,
    pub max_db: f64,
    pub step_db: f64,
}

impl SbrSweep {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.max_db - self.min_db) / self.step_db + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.min_db + i as f64 * self.step_db)
            .collect()
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let ok = self.min_db.is_finite()
            && self.max_db.is_finite()
            && self.step_db.is_finite()
            && self.step_db > 0.0
            && self.max_db >= self.min_db;
        if ok {
            Ok(())
        } else {
            Err(ConfigError::BadSweep {
                min: self.min_db,
                max: self.max_db,
                step: self.step_db,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub schemes: Vec<SchemeConfig>,
    /// `sbr_db` here is overwritten by each sweep point.
    pub channel: ChannelConfig,
    pub sweep: SbrSweep,
    pub frames_per_point: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_140_501;
pub const CI_FRAMES: usize = 200;

impl ExperimentConfig {
    /// Long RS(432,387) against RS(144,129) burst-interleaved `L = 3`,
    /// `BL = 6`, single- and two-pass; 38-symbol bursts every 5400 symbols.
    pub fn case1() -> Self {
        Self {
            schemes: vec![
                SchemeConfig::long(432, 387, 9),
                SchemeConfig::new(144, 129, 9, 3, 6, DecoderKind::SinglePass),
                SchemeConfig::new(144, 129, 9, 3, 6, DecoderKind::TwoPass),
            ],
            channel: ChannelConfig {
                burst: BurstSchedule {
                    duration: 38,
                    period: 5400,
                    phase: 0,
                },
                ..ChannelConfig::default()
            },
            sweep: SbrSweep {
                min_db: -10.0,
                max_db: 10.0,
                step_db: 1.0,
            },
            frames_per_point: CI_FRAMES,
            seed: DEFAULT_SEED,
        }
    }

    /// RS(147,132) `BL = 7` against RS(144,129) `BL = 6`, both `L = 3` and
    /// two-pass, with 114-symbol bursts.
    pub fn case2() -> Self {
        let mut cfg = Self::case1();
        cfg.schemes = vec![
            SchemeConfig::new(147, 132, 9, 3, 7, DecoderKind::TwoPass),
            SchemeConfig::new(144, 129, 9, 3, 6, DecoderKind::TwoPass),
        ];
        cfg.channel.burst.duration = 114;
        cfg
    }

    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        match name {
            "case1" => Ok(Self::case1()),
            "case2" => Ok(Self::case2()),
            other => Err(ConfigError::UnknownPreset(other.to_string())),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.schemes.is_empty() {
            return Err(ConfigError::NoSchemes);
        }
        if self.frames_per_point == 0 {
            return Err(ConfigError::NoFrames);
        }
        self.sweep.validate()?;
        self.channel.validate()?;
        for s in &self.schemes {
            s.build()?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses the flat `key = value` format. Without a `preset` key the
    /// case-1 channel and sweep are the base.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                message: format!("expected key = value, got {line:?}"),
            })?;
            entries.push((i + 1, key.trim().to_string(), value.trim().to_string()));
        }

        let mut cfg = match entries.iter().find(|(_, k, _)| k == "preset") {
            Some((_, _, v)) => Self::preset(v)?,
            None => Self::case1(),
        };
        let mut schemes = Vec::new();
        for (line, key, value) in &entries {
            let err = |message: String| ConfigError::Syntax { line: *line, message };
            match key.as_str() {
                "preset" => {}
                "scheme" => schemes.push(parse_scheme(value).map_err(err)?),
                "taps" => {
                    cfg.channel.taps = value
                        .split(',')
                        .map(|t| parse_num::<f64>(t.trim()))
                        .collect::<Result<_, _>>()
                        .map_err(err)?
                }
                "snr_db" => cfg.channel.snr_db = parse_num(value).map_err(err)?,
                "sbr_min" => cfg.sweep.min_db = parse_num(value).map_err(err)?,
                "sbr_max" => cfg.sweep.max_db = parse_num(value).map_err(err)?,
                "sbr_step" => cfg.sweep.step_db = parse_num(value).map_err(err)?,
                "burst_duration" => cfg.channel.burst.duration = parse_num(value).map_err(err)?,
                "burst_period" => cfg.channel.burst.period = parse_num(value).map_err(err)?,
                "burst_phase" => cfg.channel.burst.phase = parse_num(value).map_err(err)?,
                "frames" => cfg.frames_per_point = parse_num(value).map_err(err)?,
                "seed" => cfg.seed = parse_num(value).map_err(err)?,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        if !schemes.is_empty() {
            cfg.schemes = schemes;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("cannot parse {s:?}"))
}

/// `n=144 k=129 m=9 L=3 BL=6 decoder=two_pass [label=name]`
fn parse_scheme(value: &str) -> Result<SchemeConfig, String> {
    let (mut n, mut k, mut m, mut depth, mut burst_len) = (None, None, 9u32, 1usize, None);
    let mut decoder = DecoderKind::SinglePass;
    let mut label = None;
    for token in value.split_whitespace() {
        let (key, v) = token
            .split_once('=')
            .ok_or_else(|| format!("scheme field {token:?} is not key=value"))?;
        match key {
            "n" => n = Some(parse_num(v)?),
            "k" => k = Some(parse_num(v)?),
            "m" => m = parse_num(v)?,
            "L" => depth = parse_num(v)?,
            "BL" => burst_len = Some(parse_num(v)?),
            "decoder" => {
                decoder = match v {
                    "single_pass" | "single" => DecoderKind::SinglePass,
                    "two_pass" | "two" => DecoderKind::TwoPass,
                    _ => return Err(format!("unknown decoder {v:?}")),
                }
            }
            "label" => label = Some(v.to_string()),
            _ => return Err(format!("unknown scheme field {key:?}")),
        }
    }
    let n: usize = n.ok_or("scheme needs n")?;
    let k = k.ok_or("scheme needs k")?;
    let burst_len = burst_len.unwrap_or(if depth == 1 { n } else { 1 });
    let mut scheme = SchemeConfig::new(n, k, m, depth, burst_len, decoder);
    if let Some(label) = label {
        if label.contains(',') {
            return Err("scheme label may not contain commas".into());
        }
        scheme.label = label;
    }
    Ok(scheme)
}
