use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default bound on the group order for exhaustive element iteration.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

/// The group `Z/n_1 x ... x Z/n_k`.
///
/// Groups are compared by their factor lists, so `Z/2 x Z/3` and `Z/6` are
/// different specs even though they are isomorphic. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Arc<[u64]>,
    order: u64,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::usage("group needs at least one cyclic factor"));
        }
        if let Some(bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::usage(format!("modulus must be ≥ 2 (got {bad})")));
        }
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::Capacity {
                what: "group order",
                size: moduli.iter().map(|&n| n as u128).fold(1u128, u128::saturating_mul),
                limit: u64::MAX as u128,
            })?;
        Ok(GroupSpec {
            moduli: moduli.into(),
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    /// The `i`-th standard generator `e_i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        assert!(i < self.rank(), "generator index {i} out of range");
        let mut g = self.zero();
        g.coords[i] = 1;
        g
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Builds an element from already reduced coordinates.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::usage(format!(
                "element has {} coordinates, group {self} has {} factors",
                coords.len(),
                self.rank()
            )));
        }
        for (&c, &n) in coords.iter().zip(self.moduli.iter()) {
            if c >= n {
                return Err(Error::usage(format!("coordinate {c} is not reduced modulo {n}")));
            }
        }
        Ok(GroupElement {
            group: self.clone(),
            coords: coords.to_vec(),
        })
    }

    /// Builds an element from arbitrary integers, reducing each modulo its factor.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::usage(format!(
                "element has {} coordinates, group {self} has {} factors",
                coords.len(),
                self.rank()
            )));
        }
        let coords = coords
            .iter()
            .zip(self.moduli.iter())
            .map(|(&c, &n)| reduce(c as i128, n))
            .collect();
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    /// Iterates over all elements in lexicographic coordinate order.
    pub fn all_elements(&self, cap: u64) -> Result<Elements> {
        if self.order > cap {
            return Err(Error::Capacity {
                what: "group order",
                size: self.order as u128,
                limit: cap as u128,
            });
        }
        Ok(Elements {
            group: self.clone(),
            next: Some(vec![0; self.rank()]),
        })
    }

    /// Position of `g` in the lexicographic order of [`GroupSpec::all_elements`].
    pub fn index_of(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(self.moduli.iter())
            .fold(0u64, |acc, (&c, &n)| acc * n + c)
    }

    /// Inverse of [`GroupSpec::index_of`].
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        assert!(index < self.order, "element index {index} out of range");
        let mut coords = vec![0; self.rank()];
        for (slot, &n) in coords.iter_mut().zip(self.moduli.iter()).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    /// Number of elements `g` with `d.g = 0`.
    pub fn count_killed_by(&self, d: u64) -> u64 {
        self.moduli.iter().map(|&n| n.gcd(&d)).product()
    }

    /// All elements `g` with `d.g = 0`, in lexicographic order.
    ///
    /// In `Z/n` these are the multiples of `n / gcd(n, d)`.
    pub fn killed_by(&self, d: u64) -> Vec<GroupElement> {
        let steps: Vec<(u64, u64)> = self
            .moduli
            .iter()
            .map(|&n| {
                let g = n.gcd(&d);
                (n / g, g)
            })
            .collect();
        let mut out = Vec::with_capacity(self.count_killed_by(d) as usize);
        let mut digits = vec![0u64; self.rank()];
        loop {
            let coords = digits
                .iter()
                .zip(steps.iter())
                .map(|(&t, &(step, _))| t * step)
                .collect();
            out.push(GroupElement {
                group: self.clone(),
                coords,
            });
            // odometer over digit ranges [0, gcd)
            let mut pos = self.rank();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < steps[pos].1 {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z/{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses a comma-separated modulus list such as `"4"` or `"2,2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let moduli = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<u64>()
                    .map_err(|_| Error::usage(format!("invalid modulus {part:?} in group spec {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(moduli)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.moduli.serialize(serializer)
    }
}

/// An element of a [`GroupSpec`], stored as one reduced residue per factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: GroupSpec,
    coords: Vec<u64>,
}

impl PartialOrd for GroupSpec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupSpec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.moduli.cmp(&other.moduli)
    }
}

impl GroupElement {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_group(&self, other: &GroupElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::usage(format!(
                "elements belong to different groups ({} and {})",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &GroupElement) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .zip(self.group.moduli.iter())
            .map(|((&x, &y), &n)| add_mod(x, y, n))
            .collect();
        GroupElement {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> GroupElement {
        self.scalar_mul(-1)
    }

    /// The `c`-fold sum of `self`; negative `c` sums the inverse.
    pub fn scalar_mul(&self, c: i64) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.group.moduli.iter())
            .map(|(&x, &n)| mul_mod(reduce(c as i128, n), x, n))
            .collect();
        GroupElement {
            group: self.group.clone(),
            coords,
        }
    }

    /// Least `d >= 1` with `d.g = 0`: the lcm over factors of `n_i / gcd(g_i, n_i)`.
    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .zip(self.group.moduli.iter())
            .map(|(&c, &n)| n / c.gcd(&n))
            .fold(1u64, |acc, d| acc.lcm(&d))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [c] = self.coords.as_slice() {
            return write!(f, "{c}");
        }
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.group)
    }
}

/// Serialized as the coordinate array.
impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// Iterator returned by [`GroupSpec::all_elements`].
pub struct Elements {
    group: GroupSpec,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        self.next = loop {
            if pos == 0 {
                break None;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.group.moduli[pos] {
                break Some(succ);
            }
            succ[pos] = 0;
        };
        Some(GroupElement {
            group: self.group.clone(),
            coords: current,
        })
    }
}

pub(crate) fn reduce(c: i128, n: u64) -> u64 {
    c.rem_euclid(n as i128) as u64
}

pub(crate) fn add_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 + y as u128) % n as u128) as u64
}

pub(crate) fn mul_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 * y as u128) % n as u128) as u64
}
