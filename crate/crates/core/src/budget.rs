use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CODEWORDS: u128 = 1 << 26;
pub const DEFAULT_MAX_FIELD: u64 = 256;

/// Limits on exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest number of codewords any single enumeration may visit.
    pub max_codewords: u128,
    /// Largest field order the constructors may build.
    pub max_field: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_codewords: DEFAULT_MAX_CODEWORDS,
            max_field: DEFAULT_MAX_FIELD,
        }
    }
}

impl Budget {
    pub fn with_codewords(max_codewords: u128) -> Self {
        Budget {
            max_codewords,
            ..Budget::default()
        }
    }

    /// Size of a `q^k` enumeration, saturating.
    pub fn words(q: u32, k: usize) -> u128 {
        let mut total: u128 = 1;
        for _ in 0..k {
            total = total.saturating_mul(q as u128);
        }
        total
    }

    pub fn allows(&self, q: u32, k: usize) -> bool {
        Self::words(q, k) <= self.max_codewords
    }

    pub fn check(&self, q: u32, k: usize) -> Result<u128> {
        let required = Self::words(q, k);
        if required > self.max_codewords {
            Err(Error::BudgetExceeded {
                required,
                budget: self.max_codewords,
            })
        } else {
            Ok(required)
        }
    }
}
