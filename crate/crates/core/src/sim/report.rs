//! CSV result rows.
//!
//! ```text
//! # seed=20140501 psig=0.75 taps=1,0.45,0.25,0.12,0.05
//! scheme,sbr_db,frames,info_bits,bit_errors,ber,block_errors,bler
//! rs432_387_L1_single_pass,0,200,696600,12345,0.0177218,48,0.24
//! ```
//!
//! Floating columns carry six significant digits.

use std::io::Write;

use thiserror::Error;

use crate::phy::SIGNAL_POWER;

pub const HEADER: [&str; 8] = [
    "scheme",
    "sbr_db",
    "frames",
    "info_bits",
    "bit_errors",
    "ber",
    "block_errors",
    "bler",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no result rows to write")]
    Empty,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed row {row}: {message}")]
    Malformed { row: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scheme: String,
    pub sbr_db: f64,
    pub frames: u64,
    pub info_bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub block_errors: u64,
    pub bler: f64,
}

impl ResultRow {
    pub fn new(scheme: &str, sbr_db: f64, frames: u64, info_bits: u64, bit_errors: u64, block_errors: u64) -> Self {
        Self {
            scheme: scheme.to_string(),
            sbr_db,
            frames,
            info_bits,
            bit_errors,
            ber: ratio(bit_errors, info_bits),
            block_errors,
            bler: ratio(block_errors, frames),
        }
    }

    /// 95% Wilson interval on the block error rate.
    pub fn bler_interval(&self) -> (f64, f64) {
        wilson_interval(self.block_errors, self.frames)
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Formats like C's `%g` with six significant digits.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        trim(&format!("{:.*}", (5 - exp) as usize, v))
    }
}

/// Writes the provenance comment, the header and one line per row.
pub fn emit_results<W: Write>(rows: &[ResultRow], seed: u64, taps: &[f64], mut out: W) -> Result<(), ReportError> {
    if rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let taps: Vec<String> = taps.iter().map(f64::to_string).collect();
    writeln!(out, "# seed={seed} psig={SIGNAL_POWER} taps={}", taps.join(","))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.scheme.clone(),
            format_sig6(r.sbr_db),
            r.frames.to_string(),
            r.info_bits.to_string(),
            r.bit_errors.to_string(),
            format_sig6(r.ber),
            r.block_errors.to_string(),
            format_sig6(r.bler),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows back; comment lines are skipped.
pub fn parse_results(text: &str) -> Result<Vec<ResultRow>, ReportError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let malformed = |message: String| ReportError::Malformed { row: i + 1, message };
        if rec.len() != HEADER.len() {
            return Err(malformed(format!("{} fields", rec.len())));
        }
        let f = |j: usize| -> Result<f64, ReportError> {
            rec[j].parse().map_err(|_| malformed(format!("bad {} {:?}", HEADER[j], &rec[j])))
        };
        let u = |j: usize| -> Result<u64, ReportError> {
            rec[j].parse().map_err(|_| malformed(format!("bad {} {:?}", HEADER[j], &rec[j])))
        };
        rows.push(ResultRow {
            scheme: rec[0].to_string(),
            sbr_db: f(1)?,
            frames: u(2)?,
            info_bits: u(3)?,
            bit_errors: u(4)?,
            ber: f(5)?,
            block_errors: u(6)?,
            bler: f(7)?,
        });
    }
    Ok(rows)
}
