use crate::words::Symbol;

/// Errors produced by generators, scanners and array construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid word spec: {0}")]
    InvalidSpec(String),
    #[error("morphism is not prolongable at letter {0}")]
    NotProlongable(Symbol),
    #[error("invalid slope {p}/{q} (need 0 <= p <= q, q >= 1 and 0 <= rho < 1)")]
    InvalidSlope { p: u64, q: u64 },
    #[error("directive sequence exhausted before reaching length {0}")]
    DirectiveTooShort(usize),
    #[error("factor must be nonempty")]
    EmptyFactor,
    #[error("length {n} exceeds prefix length {len}")]
    LengthExceedsPrefix { n: usize, len: usize },
    #[error("subject occurs only {0} time(s); need at least 2")]
    TooFewOccurrences(usize),
    #[error("subject never occurs in prefixes up to length {0}")]
    SubjectAbsent(usize),
    #[error("word is not primitive: cyclic shifts are not pairwise distinct")]
    NotPrimitive,
    #[error("ones count {p} and length {q} are not coprime")]
    NotCoprime { p: usize, q: usize },
    #[error("abelian class is not realized by any row prefix of the array")]
    ClassAbsent,
    #[error("letter {0} does not occur in the prefix")]
    LetterAbsent(Symbol),
    #[error("symbol {value} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { value: Symbol, alphabet: u8 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
