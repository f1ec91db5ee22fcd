use thiserror::Error;

use crate::online::TranscriptStep;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{what} of size {size} exceeds configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("vertex {0} has no color assigned")]
    UncoloredVertex(usize),

    #[error("color {color} on vertex {vertex} outside palette 1..={palette}")]
    ColorOutOfPalette {
        vertex: usize,
        color: u32,
        palette: u32,
    },

    #[error("palette size {0} exceeds supported maximum 64")]
    PaletteTooLarge(u32),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("decomposition is not nice at step {step}: {detail}")]
    NotNice { step: usize, detail: String },

    #[error("online contract violation at step {step} (vertex {vertex}): {detail}")]
    ContractViolation {
        step: usize,
        vertex: usize,
        detail: String,
    },

    /// The bounded-palette algorithm ran out of qualifying colors. The
    /// counting guarantee rules this out on triangle-free input of width
    /// <= t, so reaching it means the hypothesis was violated or there is a
    /// bug; the full reveal history is attached for analysis.
    #[error(
        "no qualifying color at step {step} (vertex {vertex}, palette {palette}): \
         input is likely not triangle-free or exceeds width {t}; \
         {} steps of history attached", history.len()
    )]
    NoQualifyingColor {
        step: usize,
        vertex: usize,
        palette: u32,
        t: usize,
        history: Box<Vec<TranscriptStep>>,
    },

    #[error(
        "qualifying-color count {count} fell below the guaranteed bound {bound} \
         at step {step} (vertex {vertex}): bug or hypothesis violation; \
         {} steps of history attached", history.len()
    )]
    AvailabilityBound {
        step: usize,
        vertex: usize,
        count: usize,
        bound: usize,
        history: Box<Vec<TranscriptStep>>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
