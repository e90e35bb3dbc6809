// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("direction index {0} out of range 0..9")]
    DirectionOutOfRange(usize),

    #[error("coordinate ({x}, {y}, {dir}) outside a {nx}x{ny} grid")]
    CoordinateOutOfRange {
        x: usize,
        y: usize,
        dir: usize,
        nx: usize,
        ny: usize,
    },

    #[error("index {index} lies in the padding region [{n_f}, {padded_len})")]
    PaddingIndex {
        index: usize,
        n_f: usize,
        padded_len: usize,
    },

    #[error("index {index} exceeds padded length {padded_len}")]
    IndexOutOfRange { index: usize, padded_len: usize },

    #[error("grid dimensions must be positive (got {nx}x{ny})")]
    EmptyGrid { nx: usize, ny: usize },

    #[error("relaxation time {0} must exceed 0.5")]
    NonPhysicalTau(f64),

    #[error("inconsistent boundary spec: {0}")]
    InvalidBoundary(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("SVD did not converge for a {0}x{0} matrix")]
    SvdNotConverged(usize),

    #[error("normalized singular value {0} exceeds 1")]
    SingularValueAboveOne(f64),

    #[error("matrix is not orthogonal (max |W^T W - I| = {0:e})")]
    NotOrthogonal(f64),

    #[error("cannot encode an all-zero distribution vector")]
    ZeroVector,

    #[error("vector contains non-finite entries")]
    NonFinite,

    #[error("relative error undefined for a zero reference")]
    ZeroReference,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("shot count must be positive")]
    ZeroShots,

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
