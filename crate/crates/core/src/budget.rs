//! Enumeration ceilings for the exhaustive validators and the exact solver.
//!
//! Defaults can be overridden through environment variables:
//!
//! | variable                    | meaning                                            | default    |
//! |-----------------------------|----------------------------------------------------|------------|
//! | `KSUBMOD_MAX_TABLE`         | `(k+1)^n` for tables and single-point validators    | 1 000 000  |
//! | `KSUBMOD_MAX_PAIR_LATTICE`  | `(k+1)^n` for validators that enumerate pairs       | 100 000    |
//! | `KSUBMOD_MAX_MATROID_N`     | ground-set size for exhaustive matroid enumeration  | 20         |
//! | `KSUBMOD_MAX_LABELINGS`     | feasible labelings visited by the exact solver      | 10 000 000 |

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_table: u128,
    pub max_pair_lattice: u128,
    pub max_matroid_n: usize,
    pub max_labelings: u128,
}

pub const HARD_MATROID_N: usize = 20;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_table: 1_000_000,
            max_pair_lattice: 100_000,
            max_matroid_n: HARD_MATROID_N,
            max_labelings: 10_000_000,
        }
    }
}

impl Budget {
    /// Defaults with any `KSUBMOD_*` environment overrides applied. The matroid
    /// ceiling can be lowered but never raised past 20 elements.
    pub fn from_env() -> Budget {
        fn read(name: &str) -> Option<u128> {
            std::env::var(name).ok()?.trim().parse().ok()
        }
        let mut b = Budget::default();
        if let Some(v) = read("KSUBMOD_MAX_TABLE") {
            b.max_table = v;
        }
        if let Some(v) = read("KSUBMOD_MAX_PAIR_LATTICE") {
            b.max_pair_lattice = v;
        }
        if let Some(v) = read("KSUBMOD_MAX_MATROID_N") {
            b.max_matroid_n = (v as usize).min(HARD_MATROID_N);
        }
        if let Some(v) = read("KSUBMOD_MAX_LABELINGS") {
            b.max_labelings = v;
        }
        b
    }

    pub(crate) fn check(what: &'static str, needed: u128, limit: u128) -> Result<()> {
        if needed > limit {
            Err(Error::BudgetExceeded {
                what,
                needed,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// `(k+1)^n`, saturating at `u128::MAX`.
pub fn lattice_size(n: usize, k: usize) -> u128 {
    let base = (k + 1) as u128;
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(base);
    }
    acc
}
