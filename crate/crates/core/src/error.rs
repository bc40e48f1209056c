use std::io;

use thiserror::Error;

/// Errors raised while decoding binary PPM/PGM data.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PnmError {
    #[error("bad magic number: expected {expected}")]
    BadMagic { expected: &'static str },
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unsupported maxval {0} (only 255 is accepted)")]
    UnsupportedMaxval(u32),
    #[error("zero dimension ({width}x{height})")]
    ZeroDimension { width: usize, height: usize },
    #[error("truncated pixel data: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Pnm(#[from] PnmError),
    #[error("dimension mismatch: {left_w}x{left_h} vs {right_w}x{right_h}")]
    DimensionMismatch {
        left_w: usize,
        left_h: usize,
        right_w: usize,
        right_h: usize,
    },
    #[error("half side-by-side needs an even width, got {0}")]
    OddWidth(usize),
    #[error("invalid raster: {0}")]
    InvalidRaster(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("failed to build worker pool: {0}")]
    Executor(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dims(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left_w: a.0,
            left_h: a.1,
            right_w: b.0,
            right_h: b.1,
        })
    }
}
