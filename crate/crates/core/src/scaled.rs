//! The scaled multiplications `n * m = a.n.m`.
//!
//! Over `Z` every distributive multiplication has this shape with
//! `a = 1 o 1`; it is unital exactly when `a = 1` (the usual ring) or
//! `a = -1` (the alternate ring, `n * m = -n.m`). Over a finite base ring the
//! same construction `(x, y) -> a.x.y` needs a central `a`, and the unital
//! scales are exactly `+-1` whenever `a.u = 1` has no solutions besides
//! `a = u = 1` and `a = u = -1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{checked_add, GroupElement, GroupSpec, IntegerWindow, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};
use crate::structure::{
    check_distributivity_blackbox, DistributivityViolation, IntMul, RingStructure,
    StructureConstants,
};

/// Random triples used by [`verify_scaled_form`] on top of the small block.
pub const DISTRIBUTIVITY_SAMPLES: u64 = 1_000;

/// `n * m = a.n.m` on `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ScaledMult {
    a: i64,
}

impl ScaledMult {
    pub fn new(a: i64) -> Self {
        ScaledMult { a }
    }

    pub fn scale(&self) -> i64 {
        self.a
    }
}

impl IntMul for ScaledMult {
    fn apply(&self, n: i64, m: i64) -> Result<i64> {
        // exact in i128 first so a zero factor never trips an intermediate overflow
        (self.a as i128)
            .checked_mul(n as i128)
            .and_then(|an| an.checked_mul(m as i128))
            .and_then(|p| i64::try_from(p).ok())
            .ok_or_else(|| Error::overflow(format!("{} * {n} * {m}", self.a)))
    }
}

pub fn make_scaled(a: i64) -> ScaledMult {
    ScaledMult::new(a)
}

/// `n * m = -n.m`.
pub fn alternate() -> ScaledMult {
    ScaledMult::new(-1)
}

/// Closed-form unit of the scaled ring on `Z`: `a` itself when `a = +-1`.
pub fn unit_of_scaled(a: i64) -> Option<i64> {
    matches!(a, 1 | -1).then_some(a)
}

/// Brute-force search for a two-sided identity of `mul` inside `window`,
/// checked against every element of the window.
pub fn windowed_unit_search<M: IntMul + ?Sized>(mul: &M, window: IntegerWindow) -> Result<Option<i64>> {
    let mut found = None;
    'candidates: for u in window.iter() {
        for n in window.iter() {
            if mul.apply(u, n)? != n || mul.apply(n, u)? != n {
                continue 'candidates;
            }
        }
        if let Some(first) = found {
            return Err(Error::Invariant(format!("two identities {first} and {u} in the window")));
        }
        found = Some(u);
    }
    Ok(found)
}

/// `a = 1 o 1`.
pub fn extract_scale<M: IntMul + ?Sized>(mul: &M) -> Result<i64> {
    mul.apply(1, 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleMismatch {
    pub n: i64,
    pub m: i64,
    pub actual: i64,
    pub expected: i64,
}

/// Outcome of [`verify_scaled_form`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScaledForm {
    /// Not distributive, so not a ring multiplication at all.
    Rejected { violation: DistributivityViolation },
    /// Distributive; `mismatch` is the first pair where `mul` differs from `a.n.m`.
    Checked { scale: i64, mismatch: Option<ScaleMismatch> },
}

impl ScaledForm {
    pub fn holds(&self) -> bool {
        matches!(self, ScaledForm::Checked { mismatch: None, .. })
    }

    pub fn scale(&self) -> Option<i64> {
        match self {
            ScaledForm::Checked { scale, .. } => Some(*scale),
            ScaledForm::Rejected { .. } => None,
        }
    }
}

/// Checks that `mul` is distributive on `window` and then that it agrees
/// with `a.n.m`, `a = mul(1, 1)`, on every pair of the window, negative and
/// zero arguments included.
pub fn verify_scaled_form<M: IntMul + ?Sized>(mul: &M, window: IntegerWindow) -> Result<ScaledForm> {
    let report = check_distributivity_blackbox(mul, window, DISTRIBUTIVITY_SAMPLES)?;
    if let Some(violation) = report.counterexample {
        return Ok(ScaledForm::Rejected { violation });
    }
    let scale = extract_scale(mul)?;
    let expected_mul = make_scaled(scale);
    for n in window.iter() {
        for m in window.iter() {
            let actual = mul.apply(n, m)?;
            let expected = expected_mul.apply(n, m)?;
            if actual != expected {
                return Ok(ScaledForm::Checked {
                    scale,
                    mismatch: Some(ScaleMismatch { n, m, actual, expected }),
                });
            }
        }
    }
    Ok(ScaledForm::Checked { scale, mismatch: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Associativity,
    LeftDistributivity,
    RightDistributivity,
    Commutativity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: Identity,
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub lhs: i64,
    pub rhs: i64,
}

/// Result of [`ring_identity_suite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentitySuiteReport {
    pub scale: i64,
    pub samples: u64,
    pub passed: bool,
    pub first_failure: Option<IdentityFailure>,
}

/// Checks associativity, both distributive laws and commutativity of
/// `n * m = a.n.m` on `samples` random triples from `window`.
///
/// Any overflow aborts the run with an error naming the triple.
pub fn ring_identity_suite(
    mul: &ScaledMult,
    window: IntegerWindow,
    samples: u64,
    seed: u64,
) -> Result<IdentitySuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = window.bound();
    for _ in 0..samples {
        let (n, m, k) = (
            rng.gen_range(-b..=b),
            rng.gen_range(-b..=b),
            rng.gen_range(-b..=b),
        );
        let failure = identities_at(mul, n, m, k).map_err(|e| match e {
            Error::Overflow(msg) => Error::overflow(format!(
                "{msg} at (a, n, m, k) = ({}, {n}, {m}, {k})",
                mul.scale()
            )),
            other => other,
        })?;
        if failure.is_some() {
            return Ok(IdentitySuiteReport {
                scale: mul.scale(),
                samples,
                passed: false,
                first_failure: failure,
            });
        }
    }
    Ok(IdentitySuiteReport {
        scale: mul.scale(),
        samples,
        passed: true,
        first_failure: None,
    })
}

fn identities_at(mul: &ScaledMult, n: i64, m: i64, k: i64) -> Result<Option<IdentityFailure>> {
    let fail = |identity, lhs, rhs| Some(IdentityFailure { identity, n, m, k, lhs, rhs });
    let lhs = mul.apply(n, mul.apply(m, k)?)?;
    let rhs = mul.apply(mul.apply(n, m)?, k)?;
    if lhs != rhs {
        return Ok(fail(Identity::Associativity, lhs, rhs));
    }
    let sum = checked_add(m, k)?;
    let lhs = mul.apply(n, sum)?;
    let rhs = checked_add(mul.apply(n, m)?, mul.apply(n, k)?)?;
    if lhs != rhs {
        return Ok(fail(Identity::LeftDistributivity, lhs, rhs));
    }
    let lhs = mul.apply(sum, n)?;
    let rhs = checked_add(mul.apply(m, n)?, mul.apply(k, n)?)?;
    if lhs != rhs {
        return Ok(fail(Identity::RightDistributivity, lhs, rhs));
    }
    let (lhs, rhs) = (mul.apply(n, m)?, mul.apply(m, n)?);
    if lhs != rhs {
        return Ok(fail(Identity::Commutativity, lhs, rhs));
    }
    Ok(None)
}

/// A finite associative ring used as the ambient ring of the scaled
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRing {
    ring: RingStructure,
}

impl BaseRing {
    pub fn new(ring: RingStructure) -> Result<Self> {
        if !ring.is_associative() {
            return Err(Error::Precondition(format!(
                "base ring multiplication on {} is not associative",
                ring.group()
            )));
        }
        Ok(BaseRing { ring })
    }

    /// `Z/n` with its usual multiplication.
    pub fn integers_mod(n: u64) -> Result<Self> {
        let group = GroupSpec::cyclic(n)?;
        let mult = StructureConstants::scaled_cyclic(&group, 1)?;
        Self::new(RingStructure::analyze(mult, DEFAULT_ELEMENT_CAP)?)
    }

    pub fn ring(&self) -> &RingStructure {
        &self.ring
    }

    pub fn group(&self) -> &GroupSpec {
        self.ring.group()
    }

    pub fn one(&self) -> Option<&GroupElement> {
        self.ring.unit()
    }

    /// The additive inverse of the unit.
    pub fn minus_one(&self) -> Option<GroupElement> {
        self.one().map(GroupElement::neg)
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.ring.mul(x, y)
    }

    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        Ok(self.group().all_elements(DEFAULT_ELEMENT_CAP)?.collect())
    }

    fn require_unital(&self) -> Result<(GroupElement, GroupElement)> {
        match self.one() {
            Some(one) => Ok((one.clone(), one.neg())),
            None => Err(Error::Precondition(format!(
                "ring on {} has no unit element",
                self.group()
            ))),
        }
    }

    fn require_commutative(&self) -> Result<()> {
        if self.ring.is_commutative() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "ring on {} is not commutative",
                self.group()
            )))
        }
    }
}

/// The multiplication `(x, y) -> a.x.y` on the additive group of `ring`.
///
/// `a` must be central. The result is checked to be associative.
pub fn scale_ring(ring: &BaseRing, a: &GroupElement) -> Result<StructureConstants> {
    if a.group() != ring.group() {
        return Err(Error::usage(format!(
            "scale {a:?} is not an element of {}",
            ring.group()
        )));
    }
    let gens = ring.group().generators();
    for e in &gens {
        if ring.mul(a, e)? != ring.mul(e, a)? {
            return Err(Error::Precondition(format!(
                "scale {a} is not central: it does not commute with {e}"
            )));
        }
    }
    let mut table = Vec::with_capacity(gens.len() * gens.len());
    for ei in &gens {
        let a_ei = ring.mul(a, ei)?;
        for ej in &gens {
            table.push(ring.mul(&a_ei, ej)?);
        }
    }
    let scaled = StructureConstants::from_flat(ring.group(), table)?;
    if !scaled.check_associativity() {
        return Err(Error::Invariant(format!(
            "scaling by central {a} produced a non-associative multiplication"
        )));
    }
    Ok(scaled)
}

/// A solution of `a.u = 1` other than `a = u = 1` and `a = u = -1`.
pub fn pm1_violation(ring: &BaseRing) -> Result<Option<(GroupElement, GroupElement)>> {
    let (one, minus_one) = ring.require_unital()?;
    let elements = ring.elements()?;
    for a in &elements {
        for u in &elements {
            if ring.mul(a, u)? != one {
                continue;
            }
            let allowed = (*a == one && *u == one) || (*a == minus_one && *u == minus_one);
            if !allowed {
                return Ok(Some((a.clone(), u.clone())));
            }
        }
    }
    Ok(None)
}

/// Whether `a.u = 1` forces `a = u = 1` or `a = u = -1`.
pub fn has_pm1_unit_property(ring: &BaseRing) -> Result<bool> {
    Ok(pm1_violation(ring)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledUnitality {
    pub scale: GroupElement,
    pub is_plus_minus_one: bool,
    pub unit: Option<GroupElement>,
}

/// Unitality of `(R, +, *)` for every scale `a` in `R`, in element order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitalitySweep {
    pub entries: Vec<ScaledUnitality>,
}

impl UnitalitySweep {
    pub fn unital_scales(&self) -> Vec<&GroupElement> {
        self.entries
            .iter()
            .filter(|e| e.unit.is_some())
            .map(|e| &e.scale)
            .collect()
    }

    /// Unital exactly for `a = +-1`.
    pub fn unital_iff_pm1(&self) -> bool {
        self.entries.iter().all(|e| e.unit.is_some() == e.is_plus_minus_one)
    }
}

/// Builds the scaled ring for every `a` and searches it for a unit, with no
/// hypothesis on the units of `ring` beyond it being unital and commutative.
pub fn unitality_sweep(ring: &BaseRing) -> Result<UnitalitySweep> {
    let (one, minus_one) = ring.require_unital()?;
    ring.require_commutative()?;
    let entries = ring
        .elements()?
        .into_par_iter()
        .map(|a| {
            let unit = scale_ring(ring, &a)?.find_unit(DEFAULT_ELEMENT_CAP)?;
            Ok(ScaledUnitality {
                is_plus_minus_one: a == one || a == minus_one,
                scale: a,
                unit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitalitySweep { entries })
}

/// For a unital commutative ring whose only solutions of `a.u = 1` are
/// `a = u = +-1`, checks that the scaled ring is unital iff `a = +-1`.
///
/// The returned sweep has [`UnitalitySweep::unital_iff_pm1`] set; a `false`
/// there would be a counterexample to the statement.
pub fn check_unital_iff_pm1(ring: &BaseRing) -> Result<UnitalitySweep> {
    ring.require_unital()?;
    ring.require_commutative()?;
    if let Some((a, u)) = pm1_violation(ring)? {
        return Err(Error::Precondition(format!(
            "{a} . {u} = 1 in {} with {a} not equal to +-1",
            ring.group()
        )));
    }
    unitality_sweep(ring)
}
