use serde::Serialize;

use crate::error::{Error, Result};

/// The integers `-B..=B`, used to check statements about `(Z, +)` on a
/// finite slice.
///
/// Values are `i64`. Every arithmetic step goes through the checked helpers
/// in this module, so leaving the representation range is an
/// [`Error::Overflow`] rather than a silent wraparound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntegerWindow {
    bound: i64,
}

impl IntegerWindow {
    pub fn new(bound: i64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::usage(format!("window bound must be ≥ 1 (got {bound})")));
        }
        if bound == i64::MAX {
            // -B..=B must stay representable and the size must fit in u64
            return Err(Error::usage("window bound must be below i64::MAX"));
        }
        Ok(IntegerWindow { bound })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn contains(&self, n: i64) -> bool {
        (-self.bound..=self.bound).contains(&n)
    }

    /// Number of integers in the window, `2B + 1`.
    pub fn len(&self) -> u64 {
        2 * self.bound as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `-B, -B+1, ..., B`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        -self.bound..=self.bound
    }

    /// Clamps `r` into the window, i.e. `-min(r, B)..=min(r, B)`.
    pub fn inner(&self, r: i64) -> IntegerWindow {
        IntegerWindow {
            bound: r.clamp(1, self.bound),
        }
    }
}

pub fn checked_add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y)
        .ok_or_else(|| Error::overflow(format!("{x} + {y}")))
}

pub fn checked_mul(x: i64, y: i64) -> Result<i64> {
    x.checked_mul(y)
        .ok_or_else(|| Error::overflow(format!("{x} * {y}")))
}

pub fn checked_neg(x: i64) -> Result<i64> {
    x.checked_neg().ok_or_else(|| Error::overflow(format!("-({x})")))
}
