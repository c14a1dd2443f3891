use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed word token `{token}`")]
    WordParse { token: String },
    #[error("bad knot spec: {0}")]
    KnotParse(String),
    #[error("invalid surface parameters g={g}, n={n}")]
    Surface { g: u32, n: u32 },
    #[error("{what} index {index} out of range")]
    IndexOutOfRange { what: &'static str, index: i64 },
    #[error("{0} requires n = 1")]
    RequiresOneFiberBlock(&'static str),
    #[error("{0} requires n >= 2")]
    RequiresChainBlock(&'static str),
    #[error("letter {letter} outside the alphabet of the twist rule for {curve}")]
    LetterOutOfAlphabet { letter: String, curve: String },
    #[error("no letter-level rule for the twist about {0}")]
    NoLetterRule(String),
    #[error("continued fraction hits division by zero")]
    DivisionByZero,
    #[error("{p}/{q} has even numerator: a two-bridge link, not a knot")]
    NotAKnot { p: i64, q: i64 },
    #[error("not fibered: {0}")]
    NotFibered(String),
    #[error("odd-length D-form")]
    OddLength,
    #[error("empty coefficient sequence")]
    EmptySequence,
    #[error("knot genus {knot} does not match fiber genus {surface}")]
    GenusMismatch { knot: u32, surface: u32 },
    #[error("position {position} out of range for a factorization of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("helper word `{word}` meets a{letter} {count} times")]
    HelperNotSingle { word: Word, letter: u32, count: usize },
    #[error("2-handle {id} is opaque")]
    OpaqueHandle { id: usize },
    #[error("no 2-handle with id {0}")]
    UnknownHandle(usize),
    #[error("1-handle a{0} is not live")]
    DeadOneHandle(u32),
    #[error("schedule step `{step}` failed on word `{word}`")]
    Schedule { step: String, word: Word },
    #[error("trace replay diverged at move {index}: {reason}")]
    Replay { index: usize, reason: String },
    #[error("assembly needs pieces without 1-handles, found {0}")]
    LiveOneHandles(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
