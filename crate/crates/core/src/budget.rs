use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 1 << 20;

/// Environment variable that overrides the default enumeration cap.
pub const BUDGET_ENV: &str = "SUPERCHAR_BUDGET";

/// Cap on the size of any set that gets enumerated element by element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: DEFAULT_CAP }
    }
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { cap }
    }

    /// Default cap, overridden by `SUPERCHAR_BUDGET` when it parses as a positive integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&c| c > 0)
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn check(&self, what: &str, size: u128) -> Result<()> {
        if size > self.cap as u128 {
            Err(Error::BudgetExceeded {
                what: what.to_string(),
                size,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` without overflow, saturating at `u128::MAX`.
pub fn checked_pow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
