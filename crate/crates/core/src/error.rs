use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance text is missing the {0} line")]
    MissingLine(&'static str),

    #[error("instance text has an empty {0} line")]
    EmptyLine(&'static str),

    #[error("unexpected content after the magnitude line")]
    TrailingContent,

    #[error("letter {letter:?} at position {position} is not allowed (only a-z excluding j and t)")]
    ForbiddenLetter { letter: char, position: usize },

    #[error("letter sequence must contain at least 2 letters, got {0}")]
    SequenceTooShort(usize),

    #[error("malformed integer token {0:?}")]
    BadInteger(String),

    #[error("magnitude c{index} = {value} must be at least 10")]
    MagnitudeTooSmall { index: usize, value: u64 },

    #[error("magnitude tuple is empty")]
    EmptyMagnitudes,

    #[error("witness length {found} does not match instance length {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("witness magnitude mismatch: {}", format_mismatches(.0))]
    MagnitudeMismatch(Vec<Mismatch>),

    #[error("mark requires |delta| >= 10, got {0}")]
    MarkTooSmall(i128),

    #[error("instance has n = {n} which exceeds the labeling cap {cap}")]
    LabelCapExceeded { n: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One witness entry whose absolute value disagrees with the instance magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    /// 1-based position in the tuple.
    pub index: usize,
    pub expected: u64,
    pub found: i128,
}

fn format_mismatches(list: &[Mismatch]) -> String {
    list.iter()
        .map(|m| format!("index {}: |{}| != {}", m.index, m.found, m.expected))
        .collect::<Vec<_>>()
        .join("; ")
}
