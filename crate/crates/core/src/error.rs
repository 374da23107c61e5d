use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("rank too small: need n >= {needed}, got n = {n}")]
    RankTooSmall { needed: usize, n: usize },

    #[error("{what} size {size} exceeds the configured maximum {max}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("budget exceeded: {terms} elementary terms > budget {budget} (per-letter degrees {degrees:?})")]
    BudgetExceeded {
        degrees: Vec<(String, usize)>,
        terms: u128,
        budget: u128,
    },

    #[error("Koike expansion for mu={mu}, nu={nu} fails the dimension consistency gate under every sign convention")]
    KoikeGate { mu: String, nu: String },

    #[error("Witten zeta series diverges: s = {s} <= 2/n with n = {n}")]
    Divergent { s: u32, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no rational function of degree <= ({max_num}, {max_den}) fits {points} points with exact held-out agreement")]
    NoConsistentDegree {
        max_num: usize,
        max_den: usize,
        points: usize,
    },

    #[error("growth violation: numerator degree {deg_num} > denominator degree {deg_den} + 1")]
    GrowthViolation { deg_num: usize, deg_den: usize },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            _ => 1,
        }
    }
}
