use std::fmt;

use crate::Natural;

/// Everything that can go wrong in this crate.
///
/// Messages are stable: the CLI forwards them verbatim to its diagnostic
/// stream. None of them ever carry a secret value.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("undefined gcd: both arguments are zero")]
    UndefinedGcd,
    #[error("empty sequence")]
    EmptySequence,
    #[error("empty input")]
    EmptyInput,
    #[error("moduli not coprime: ({0},{1})")]
    ModuliNotCoprime(Natural, Natural),
    #[error("invalid residue pair: {0}")]
    InvalidResiduePair(String),
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("sequence too short: n must be ≥ 3, got {0}")]
    SequenceTooShort(usize),
    #[error("q1 must be positive")]
    ZeroTerm,
    #[error("terms must be positive: zero at position {0}")]
    ZeroAt(usize),
    #[error("not increasing: {0} is followed by {1}")]
    NotIncreasing(Natural, Natural),
    #[error("not coprime: ({0},{1})")]
    NotCoprime(Natural, Natural),
    #[error("iteration count must be positive")]
    ZeroIterations,
    #[error("k must satisfy 1 < k < n (k = {k}, n = {n})")]
    ThresholdOutOfRange { k: usize, n: usize },
    #[error("the n=3 checker needs exactly 3 terms, got {0}")]
    NotThreeTerms(usize),
    #[error("use n=3 checker: the general checker needs n >= 4, got {0}")]
    UseN3Checker(usize),
    #[error("P must be positive")]
    ZeroDifferenceProduct,
    #[error("Mignotte condition fails: {smallest} ≤ {largest} (k = {k})")]
    NotMignotte {
        k: usize,
        smallest: Natural,
        largest: Natural,
    },

    #[error("provenance mismatch: {0}")]
    ProvenanceMismatch(String),

    #[error("secret below threshold range (N={0})")]
    SecretBelowRange(Natural),
    #[error("secret above threshold range (M={0})")]
    SecretAboveRange(Natural),
    #[error("insufficient shares: have {have}, need {need}")]
    InsufficientShares { have: usize, need: usize },
    #[error("too many shares for enumeration: have {have}, at most {max} allowed")]
    TooManyShares { have: usize, max: usize },
    #[error("scheme mismatch")]
    SchemeMismatch,
    #[error("duplicate share index {0}")]
    DuplicateIndex(usize),
    #[error("share index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("inconsistent or tampered shares")]
    InconsistentShares,
    #[error("range too large to enumerate: M = {upper} exceeds cap {cap}")]
    RangeTooLarge { upper: Natural, cap: Natural },
    #[error("malformed share: {0}")]
    MalformedShare(String),

    #[error("range violation: {0}")]
    RangeViolation(String),
    #[error("csv output failed: {0}")]
    Csv(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn malformed(what: impl fmt::Display) -> Self {
        Error::MalformedShare(what.to_string())
    }
}
