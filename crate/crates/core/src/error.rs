use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed BMP file: {0}")]
    MalformedFile(String),

    #[error("unsupported BMP format: {0}")]
    UnsupportedFormat(String),

    #[error("image has a zero dimension")]
    ZeroDimension,

    #[error("image is {width}x{height}, edge detection needs at least 3x3")]
    ImageTooSmall { width: usize, height: usize },

    #[error("image is {width} pixels wide, the header row needs at least {required}")]
    ImageTooNarrow { width: usize, required: usize },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("payload needs {required} bytes but the carrier holds only {available}")]
    CapacityExceeded { available: usize, required: usize },

    #[error("payload of {0} bytes does not fit the 32-bit length field")]
    PayloadTooLarge(usize),

    #[error("header magic is {found:#06x}, expected 0x5347")]
    BadMagic { found: u16 },

    #[error("header version {0} is not supported")]
    UnsupportedVersion(u8),

    #[error("corrupt header: {0}")]
    CorruptHeader(String),

    #[error("header declares {declared} payload bytes but the carrier holds only {capacity}")]
    TruncatedPayload { declared: usize, capacity: usize },

    #[error("images differ in size: {a_width}x{a_height} vs {b_width}x{b_height}")]
    DimensionMismatch {
        a_width: usize,
        a_height: usize,
        b_width: usize,
        b_height: usize,
    },
}

impl Error {
    /// Stable variant name, used by the CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedFile(_) => "MalformedFile",
            Error::UnsupportedFormat(_) => "UnsupportedFormat",
            Error::ZeroDimension => "ZeroDimension",
            Error::ImageTooSmall { .. } => "ImageTooSmall",
            Error::ImageTooNarrow { .. } => "ImageTooNarrow",
            Error::ParamOutOfRange(_) => "ParamOutOfRange",
            Error::CapacityExceeded { .. } => "CapacityExceeded",
            Error::PayloadTooLarge(_) => "PayloadTooLarge",
            Error::BadMagic { .. } => "BadMagic",
            Error::UnsupportedVersion(_) => "UnsupportedVersion",
            Error::CorruptHeader(_) => "CorruptHeader",
            Error::TruncatedPayload { .. } => "TruncatedPayload",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
