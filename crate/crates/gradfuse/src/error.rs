use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every stage of the fusion pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt image data: {0}")]
    CorruptData(String),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("invalid dimensions: {0}x{1}")]
    InvalidDimensions(usize, usize),
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("sigma must be positive, got {0}")]
    InvalidSigma(f64),
    #[error("window too small: {0}x{1}")]
    WindowTooSmall(usize, usize),
    #[error("empty decision map list")]
    EmptyList,
    #[error("{0}x{1} image cannot be decomposed into {2} wavelet levels")]
    NotDecomposable(usize, usize, usize),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("image codec error: {0}")]
    Codec(String),
}
