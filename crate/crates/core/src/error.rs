use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("invalid quadruple: {0}")]
    InvalidQuadruple(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parabolic subgroup W_J is infinite (J is all of S̃)")]
    InfiniteParabolic,
    #[error("element is not minimal in its left W_J coset")]
    NotLeftMinimal,
    #[error("element has Ω-component {found}, expected {expected}")]
    WrongOmegaComponent { expected: String, found: String },
    #[error("no power of wσ has trivial finite part within {0} steps")]
    NewtonCap(usize),
    #[error("stratum invariant violated ({clause}): {detail}")]
    StratumInvariant { clause: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
