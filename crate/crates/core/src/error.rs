use core::fmt;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Inverse of zero requested.
    ZeroInverse,
    /// A row or coefficient vector does not match the expected width.
    DimensionMismatch { expected: usize, got: usize },
    /// The system does not have full rank over its columns.
    RankDeficient { rank: usize, needed: usize },
    /// Coded packet requested with nothing in the coding window.
    EmptyWindow,
    /// Acknowledgement moved the window backwards or past the sent range.
    InvalidAck { ack_through: u64, left: u64, next_seq: u64 },
    /// Packet window starts beyond what the decoder has delivered.
    WindowAhead { left: u64, delivered_through: u64 },
    /// Packet references data the decoder has already released.
    WindowReleased { left: u64, retained_from: u64 },
    /// Byte buffer could not be parsed as a packet.
    Malformed(&'static str),
    /// Invalid parameter value.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::RankDeficient { rank, needed } => {
                write!(f, "rank deficient: rank {rank}, need {needed}")
            }
            Error::EmptyWindow => write!(f, "coding window is empty"),
            Error::InvalidAck { ack_through, left, next_seq } => {
                write!(f, "invalid ack {ack_through} for window starting at {left} (next seq {next_seq})")
            }
            Error::WindowAhead { left, delivered_through } => {
                write!(f, "window starts at {left} but only {delivered_through} packets delivered")
            }
            Error::WindowReleased { left, retained_from } => {
                write!(f, "window starts at {left} but payloads are only retained from {retained_from}")
            }
            Error::Malformed(what) => write!(f, "malformed packet: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
