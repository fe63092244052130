use crate::error::{Error, Result};

/// Environment variable that overrides the default term-count guard.
pub const TERM_LIMIT_ENV: &str = "POINTEDQ_TERM_LIMIT";

const DEFAULT_TERM_LIMIT: usize = 100_000;
const DEFAULT_STEP_LIMIT: usize = 5_000_000;

/// Size guards checked at algorithm boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of terms in any intermediate expression.
    pub term_limit: usize,
    /// Maximum number of rewrite steps in one normal-form computation.
    pub step_limit: usize,
}

impl Default for Limits {
    /// Defaults, with the term limit taken from the environment when set.
    fn default() -> Self {
        let term_limit = std::env::var(TERM_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_TERM_LIMIT);
        Limits {
            term_limit,
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }
}

impl Limits {
    pub fn check_terms(&self, n: usize, what: &str) -> Result<()> {
        if n > self.term_limit {
            Err(Error::ResourceLimit(format!(
                "{} has {} terms, limit is {}",
                what, n, self.term_limit
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_steps(&self, n: usize, what: &str) -> Result<()> {
        if n > self.step_limit {
            Err(Error::ResourceLimit(format!(
                "{} took more than {} rewrite steps",
                what, self.step_limit
            )))
        } else {
            Ok(())
        }
    }
}
