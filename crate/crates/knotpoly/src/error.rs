use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// PD text could not be tokenized; `position` is the 1-based crossing
    /// ordinal in the input.
    #[error("parse error at crossing {position}: {msg}")]
    Parse { position: usize, msg: String },

    /// Structurally well-formed input that fails semantic validation
    /// (arc multiplicity, orientation consistency, empty diagrams, ...).
    #[error("invalid diagram: {0}")]
    Validation(String),

    /// Arithmetic between polynomials in different variables.
    #[error("mismatched polynomial variables")]
    VariableMismatch,

    /// Degree or coefficient query on the zero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// A Jones polynomial whose exponents do not lie on the single mod-4
    /// residue class demanded by its component count.  Signals a smoothing
    /// convention bug (or a non-planar PD code).
    #[error("congruence violation: {0}")]
    Congruence(String),

    /// A crossing both of whose smoothed strands lie on the same A-circle.
    #[error("A-state graph self-loop at crossing {crossing}")]
    SelfLoop { crossing: usize },

    /// Operation defined only for positive diagrams.
    #[error("not a positive diagram: {0}")]
    NotPositive(String),

    /// Operation defined only for Balanced diagrams.
    #[error("not a Balanced diagram: {0}")]
    NotBalanced(String),

    /// Operation defined only for Balanced or Burdened diagrams.
    #[error("not a Burdened diagram: {0}")]
    NotBurdened(String),

    /// CrossingId absent from the diagram.
    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),

    /// State sum refused: too many crossings for exhaustive enumeration.
    #[error("diagram has {crossings} crossings, above the cap of {cap}; raise --cap to enumerate 2^{crossings} states")]
    CapExceeded { crossings: usize, cap: usize },

    /// Graft positions that do not produce a valid Balanced diagram.
    #[error("invalid graft positions: {0}")]
    InvalidGraft(String),

    /// Matching pair that does not belong to the diagram.
    #[error("invalid matching pair: {0}")]
    InvalidPair(String),

    /// Census file problem, with the 1-based line number.
    #[error("census load error at line {line}: {msg}")]
    CensusLoad { line: usize, msg: String },

    /// A property suite observed a violated invariant.
    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Internal postcondition tripwire; indicates a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
