//! Size caps for exhaustive constructions.
//!
//! Every construction whose cost grows with the carrier checks one of these
//! limits first. The defaults keep every sweep in this crate comfortably on a
//! laptop. `PREMONOID_MAX_DEGREE` raises or lowers the degree cap used by the
//! breadth-first oracle (default 6; set it to 7 to search T_7).

use crate::error::{Error, Result};

/// Environment variable overriding [`SizeCaps::oracle_degree`].
pub const MAX_DEGREE_ENV: &str = "PREMONOID_MAX_DEGREE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCaps {
    /// Largest n for rule-backed T_n, S_n and singular submonoids.
    pub transformation_degree: usize,
    /// Largest carrier for any materialized Cayley table.
    pub table_carrier: usize,
    /// Largest base monoid for reduced power monoids.
    pub power_base: usize,
    /// Largest carrier for a materialized preorder (bit matrix).
    pub preorder_carrier: usize,
    /// Largest n for breadth-first search over T_n.
    pub oracle_degree: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps {
            transformation_degree: 8,
            table_carrier: 256,
            power_base: 6,
            preorder_carrier: 8192,
            oracle_degree: 6,
        }
    }
}

impl SizeCaps {
    /// Defaults, with the oracle degree taken from `PREMONOID_MAX_DEGREE`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Result<Self> {
        let mut caps = SizeCaps::default();
        if let Ok(raw) = std::env::var(MAX_DEGREE_ENV) {
            let value: usize = raw.trim().parse().map_err(|_| {
                Error::Parse(format!("{MAX_DEGREE_ENV} must be a positive integer, got {raw:?}"))
            })?;
            if value == 0 {
                return Err(Error::Parse(format!("{MAX_DEGREE_ENV} must be positive")));
            }
            caps.oracle_degree = value;
        }
        Ok(caps)
    }
}

pub(crate) fn check(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::SizeCapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
