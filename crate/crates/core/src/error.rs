use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Projected work exceeds the configured budget.
    #[error("work budget exceeded: projected {projected} > budget {budget} ({what})")]
    Budget {
        what: &'static str,
        projected: u64,
        budget: u64,
    },

    #[error("sequence too short: need at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },

    /// Two routes to the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),

    #[error("unknown registry key `{0}`")]
    UnknownKey(String),

    #[error("bisection does not bracket the target: {0}")]
    NotBracketed(String),
}

/// Upper bound on the number of elementary steps an enumeration may take.
///
/// Each enumerator projects its work before starting and refuses to run when
/// the projection is over budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget(pub u64);

impl WorkBudget {
    pub const DEFAULT: WorkBudget = WorkBudget(2_000_000_000_000);
    pub const UNLIMITED: WorkBudget = WorkBudget(u64::MAX);

    pub fn check(self, what: &'static str, projected: f64) -> Result<()> {
        if projected > self.0 as f64 {
            Err(Error::Budget {
                what,
                projected: projected.min(u64::MAX as f64) as u64,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}
