use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("letter {letter} outside alphabet 1..={d}")]
    LetterOutOfRange { letter: u32, d: u32 },
    #[error("{op}: operand has a nonzero empty-word component")]
    EmptyWordComponent { op: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input is not a Lie element: {0}")]
    NotLie(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("term-count guard exceeded: {needed} > {limit} ({what})")]
    TermLimit { what: &'static str, needed: usize, limit: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("csv input: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
