//! Resource limits threaded through expansions, grid sums and enumerations.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Environment variable that overrides [`Budget::DEFAULT_MAX_TERMS`].
pub const MAX_TERMS_ENV: &str = "CTIDLAB_MAX_TERMS";

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Largest number of stored terms any intermediate Laurent polynomial may reach.
    pub max_terms: usize,
    /// Largest number of interpolation grid points (or enumerated tuples) visited.
    pub max_points: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: Self::DEFAULT_MAX_TERMS,
            max_points: Self::DEFAULT_MAX_POINTS,
            deadline: None,
        }
    }
}

impl Budget {
    pub const DEFAULT_MAX_TERMS: usize = 10_000_000;
    pub const DEFAULT_MAX_POINTS: u64 = 100_000_000;

    /// Default budget, with `max_terms` taken from `CTIDLAB_MAX_TERMS` when it parses.
    pub fn from_env() -> Self {
        let mut budget = Budget::default();
        if let Some(n) = std::env::var(MAX_TERMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            budget.max_terms = n;
        }
        budget
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_max_points(mut self, max_points: u64) -> Self {
        self.max_points = max_points;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    pub fn check_terms(&self, count: usize) -> Result<()> {
        if count > self.max_terms {
            return Err(Error::SizeLimit {
                what: "terms",
                count: count as u64,
                limit: self.max_terms as u64,
            });
        }
        Ok(())
    }

    pub fn check_points(&self, count: u64) -> Result<()> {
        if count > self.max_points {
            return Err(Error::SizeLimit {
                what: "grid points",
                count,
                limit: self.max_points,
            });
        }
        Ok(())
    }
}
