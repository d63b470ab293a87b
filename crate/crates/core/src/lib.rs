//! Multiple-symbol interleaved Reed-Solomon (MS-IRS) codes.
//!
//! `L` shortened RS codewords are interleaved in segments of `BL` symbols
//! and decoded in two passes: codewords that decode on their own locate the
//! burst, and the rest are retried with the burst region erased. The crate
//! also carries a PAM3 / DFE link simulator with periodic burst noise for
//! BER and BLER sweeps.
//!
//! ```
//! use msirs::{InterleaverConfig, MsIrsCode, RsCode};
//!
//! let code = MsIrsCode::new(
//!     RsCode::with_params(12, 4, 4).unwrap(),
//!     InterleaverConfig::new(3, 3, 12).unwrap(),
//! )
//! .unwrap();
//! let messages = [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12]];
//! let mut frame = code.encode_frame(&messages).unwrap();
//! for s in &mut frame[2..15] {
//!     *s ^= 0xF;
//! }
//! assert!(!code.decode(&frame, msirs::DecoderKind::SinglePass).unwrap().is_success());
//! assert!(code.decode_frame(&frame).unwrap().is_success());
//! ```

pub mod analysis;
pub mod gf;
pub mod interleave;
pub mod phy;
pub mod rs;
pub mod sim;
pub mod two_pass;

pub use gf::{Element, Field, GfError};
pub use interleave::{InterleaveError, InterleaverConfig};
pub use rs::{generator_poly, CodecError, DecodeResult, DecodeStatus, RsCode};
pub use two_pass::{infer_burst_window, BurstWindow, DecoderKind, FrameError, FrameOutcome, MsIrsCode};
