//! Size guards for dense objects.

use crate::error::{Result, VbsError};

/// Default cap on the dimension of any dense state vector or matrix.
pub const DEFAULT_DIM_CAP: u128 = 1 << 16;
/// Environment variable that overrides [`DEFAULT_DIM_CAP`].
pub const DIM_CAP_ENV: &str = "VBSLAB_DIM_CAP";
/// Default cap on the number of boson monomials produced by an expansion.
pub const DEFAULT_MONOMIAL_CAP: u128 = 1 << 22;
/// Cap on block dimension for correlator reconstruction.
pub const CORRELATOR_BLOCK_CAP: u128 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub dim_cap: u128,
    pub monomial_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: DEFAULT_DIM_CAP,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with the dimension cap taken from `VBSLAB_DIM_CAP` when set.
    /// An unparsable value is an error rather than silently ignored.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(DIM_CAP_ENV) {
            limits.dim_cap = raw
                .trim()
                .parse()
                .map_err(|_| VbsError::Parse(format!("{DIM_CAP_ENV} must be a positive integer, got {raw:?}")))?;
        }
        Ok(limits)
    }

    pub fn with_dim_cap(self, dim_cap: u128) -> Self {
        Limits { dim_cap, ..self }
    }

    pub fn check_dim(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.dim_cap {
            return Err(VbsError::ResourceCap {
                what: what.to_string(),
                needed,
                cap: self.dim_cap,
            });
        }
        Ok(())
    }

    pub fn check_monomials(&self, needed: u128) -> Result<()> {
        if needed > self.monomial_cap {
            return Err(VbsError::ResourceCap {
                what: "boson monomial expansion".to_string(),
                needed,
                cap: self.monomial_cap,
            });
        }
        Ok(())
    }
}

/// Product of local dimensions, saturating instead of overflowing.
pub fn product_dim(dims: impl IntoIterator<Item = usize>) -> u128 {
    dims.into_iter().fold(1u128, |acc, d| acc.saturating_mul(d as u128))
}
