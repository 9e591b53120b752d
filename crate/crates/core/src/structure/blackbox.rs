use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{checked_add, IntegerWindow};
use crate::error::{Error, Result};

/// Seed used when a check samples random triples and the caller does not
/// supply one.
pub const DEFAULT_SEED: u64 = 0x5ca1_ed00;

/// Radius of the block of small triples that is always checked exhaustively.
const SMALL_RADIUS: i64 = 3;

/// A multiplication on integers, evaluated with checked arithmetic.
pub trait IntMul: Sync {
    fn apply(&self, n: i64, m: i64) -> Result<i64>;
}

impl<F> IntMul for F
where
    F: Fn(i64, i64) -> Result<i64> + Sync,
{
    fn apply(&self, n: i64, m: i64) -> Result<i64> {
        self(n, m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `n o (m + k)` against `n o m + n o k`.
    Left,
    /// `(m + k) o n` against `m o n + k o n`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributivityViolation {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub side: Side,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributivityReport {
    pub holds: bool,
    pub triples_checked: u64,
    pub counterexample: Option<DistributivityViolation>,
}

/// Checks both distributive laws on every triple with entries in
/// `-3..=3` (clipped to the window) and on `samples` random triples drawn
/// from the window. Stops at the first violation.
pub fn check_distributivity_blackbox<M: IntMul + ?Sized>(
    mul: &M,
    window: IntegerWindow,
    samples: u64,
) -> Result<DistributivityReport> {
    check_distributivity_blackbox_seeded(mul, window, samples, DEFAULT_SEED)
}

pub fn check_distributivity_blackbox_seeded<M: IntMul + ?Sized>(
    mul: &M,
    window: IntegerWindow,
    samples: u64,
    seed: u64,
) -> Result<DistributivityReport> {
    let small = window.inner(SMALL_RADIUS);
    let exhaustive = small.iter().flat_map(move |n| {
        small
            .iter()
            .flat_map(move |m| small.iter().map(move |k| (n, m, k)))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = window.bound();
    let random = (0..samples).map(move |_| {
        (
            rng.gen_range(-b..=b),
            rng.gen_range(-b..=b),
            rng.gen_range(-b..=b),
        )
    });

    let mut checked = 0;
    for (n, m, k) in exhaustive.chain(random) {
        checked += 1;
        let found = distributivity_at(mul, n, m, k).map_err(|e| {
            Error::overflow(format!(
                "{} while checking distributivity at (n, m, k) = ({n}, {m}, {k})",
                inner_message(&e)
            ))
        })?;
        if let Some(violation) = found {
            return Ok(DistributivityReport {
                holds: false,
                triples_checked: checked,
                counterexample: Some(violation),
            });
        }
    }
    Ok(DistributivityReport {
        holds: true,
        triples_checked: checked,
        counterexample: None,
    })
}

fn distributivity_at<M: IntMul + ?Sized>(
    mul: &M,
    n: i64,
    m: i64,
    k: i64,
) -> Result<Option<DistributivityViolation>> {
    let sum = checked_add(m, k)?;
    let lhs = mul.apply(n, sum)?;
    let rhs = checked_add(mul.apply(n, m)?, mul.apply(n, k)?)?;
    if lhs != rhs {
        return Ok(Some(DistributivityViolation { n, m, k, side: Side::Left, lhs, rhs }));
    }
    let lhs = mul.apply(sum, n)?;
    let rhs = checked_add(mul.apply(m, n)?, mul.apply(k, n)?)?;
    if lhs != rhs {
        return Ok(Some(DistributivityViolation { n, m, k, side: Side::Right, lhs, rhs }));
    }
    Ok(None)
}

fn inner_message(e: &Error) -> String {
    match e {
        Error::Overflow(msg) => msg.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::checked_mul;

    fn window(b: i64) -> IntegerWindow {
        IntegerWindow::new(b).unwrap()
    }

    #[test]
    fn usual_product_is_distributive() {
        let report = check_distributivity_blackbox(&checked_mul, window(1000), 500).unwrap();
        assert!(report.holds);
        assert_eq!(report.triples_checked, 343 + 500);
    }

    #[test]
    fn shifted_product_is_not() {
        let shifted = |n: i64, m: i64| checked_add(checked_mul(n, m)?, 1);
        // 1 o (1 + 1) = 3 but 1 o 1 + 1 o 1 = 4
        assert_eq!(
            distributivity_at(&shifted, 1, 1, 1).unwrap(),
            Some(DistributivityViolation { n: 1, m: 1, k: 1, side: Side::Left, lhs: 3, rhs: 4 })
        );
        let report = check_distributivity_blackbox(&shifted, window(10), 100).unwrap();
        assert!(!report.holds);
        let v = report.counterexample.unwrap();
        assert_ne!(v.lhs, v.rhs);
        assert_eq!(v.lhs + 1, v.rhs);
    }

    #[test]
    fn negated_product_is_distributive() {
        let alternate = |n: i64, m: i64| crate::abelian::checked_neg(checked_mul(n, m)?);
        assert!(check_distributivity_blackbox(&alternate, window(1000), 1000).unwrap().holds);
    }

    #[test]
    fn right_only_violation_is_found() {
        // linear in the second argument, not in the first
        let skew = |n: i64, m: i64| checked_mul(checked_mul(n, n)?, m);
        let report = check_distributivity_blackbox(&skew, window(5), 0).unwrap();
        assert_eq!(report.counterexample.unwrap().side, Side::Right);
    }

    #[test]
    fn tiny_window_clips_the_small_block() {
        let report = check_distributivity_blackbox(&checked_mul, window(1), 0).unwrap();
        assert_eq!(report.triples_checked, 27);
    }

    #[test]
    fn overflow_names_the_triple() {
        let big = |n: i64, m: i64| checked_mul(checked_mul(n, m)?, i64::MAX / 2);
        let err = check_distributivity_blackbox(&big, window(10), 0).unwrap_err();
        match err {
            Error::Overflow(msg) => assert!(msg.contains("(n, m, k) = (-3, -3, -3)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
