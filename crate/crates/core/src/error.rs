use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: {0} is undefined on the empty object")]
    EmptyInput(&'static str),
    #[error("not a valid ascent sequence")]
    InvalidAscentSequence,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("matrix violates staircase invariants: {0}")]
    InvalidMatrix(&'static str),
    #[error("letters are not distinct")]
    DuplicateLetters,
    #[error("word is not a permutation of 1..=n")]
    InvalidPermutation,
    #[error("permutation lies outside the restricted class")]
    NotInRestrictedClass,
    #[error("gap directly left of the maximum is not an active site")]
    InactiveSite,
    #[error("letter {letter} exceeds the number of active sites {sites}")]
    LabelExceedsSites { letter: usize, sites: usize },
    #[error("arcs do not form a perfect matching of 1..=2n")]
    InvalidMatching,
    #[error("relation is not an irreflexive transitive order: {0}")]
    NotStrictOrder(&'static str),
    #[error("strict down-sets do not form an inclusion chain")]
    NotDownSetChain,
    #[error("invalid down-set assignment: {0}")]
    InvalidDownSets(&'static str),
    #[error("division by a series whose constant coefficient is zero")]
    DivisionByNonUnit,
    #[error("series is not univariate in t")]
    NotUnivariate,
    #[error("composition argument has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("exponent exceeds truncation order {order}")]
    ExponentOutOfBounds { order: usize },
    #[error("series must be free of the variable {0}")]
    VariablePresent(char),
}

pub type Result<T> = std::result::Result<T, Error>;
