use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("slope 0/0 is forbidden")]
    ZeroSlope,

    #[error("shared puncture count {0} out of range 0..=2")]
    BadSharedPunctures(u8),

    #[error("slopes {a} and {b} with k={k}: |wz-xy| and k have different parity")]
    ParityViolation { a: String, b: String, k: u8 },

    #[error("slopes {a} and {b} are parallel arcs; intersection formula does not apply")]
    ParallelArcs { a: String, b: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {msg}")]
    ParseAt { line: usize, msg: String },

    #[error("invalid diagram: {0}")]
    Invalid(String),

    #[error("curves are not in minimal position: {0}")]
    NotMinimal(String),

    #[error("missing orientation on curve {0}")]
    MissingOrientation(String),

    #[error("not a wave: {0}")]
    NotAWave(String),

    #[error("invalid band: {0}")]
    InvalidBand(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
