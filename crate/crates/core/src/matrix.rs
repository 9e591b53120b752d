//! Square matrices over `Z/m` with two ring multiplications on the same
//! additive group: the row-by-column product and the entrywise (Hadamard)
//! product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    n: usize,
    modulus: u64,
    /// Row-major, reduced.
    entries: Vec<u64>,
}

/// Which multiplication to use on `M_n(Z/m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixProduct {
    Standard,
    Hadamard,
}

fn validate_shape(n: usize, modulus: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::usage("matrix dimension must be ≥ 1"));
    }
    if modulus < 2 {
        return Err(Error::usage(format!("modulus must be ≥ 2 (got {modulus})")));
    }
    Ok(())
}

impl MatrixElement {
    /// Builds a matrix from rows of arbitrary integers, reduced modulo `modulus`.
    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        validate_shape(n, modulus)?;
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::usage("matrix must be square"));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| (x as i128).rem_euclid(modulus as i128) as u64)
            .collect();
        Ok(MatrixElement { n, modulus, entries })
    }

    pub fn zero(n: usize, modulus: u64) -> Result<Self> {
        validate_shape(n, modulus)?;
        Ok(MatrixElement {
            n,
            modulus,
            entries: vec![0; n * n],
        })
    }

    /// The matrix unit `E_{row,col}`.
    pub fn basis(n: usize, modulus: u64, row: usize, col: usize) -> Result<Self> {
        let mut m = Self::zero(n, modulus)?;
        if row >= n || col >= n {
            return Err(Error::usage(format!("({row}, {col}) is outside a {n}x{n} matrix")));
        }
        m.entries[row * n + col] = 1;
        Ok(m)
    }

    pub fn random<R: Rng>(n: usize, modulus: u64, rng: &mut R) -> Result<Self> {
        validate_shape(n, modulus)?;
        let entries = (0..n * n).map(|_| rng.gen_range(0..modulus)).collect();
        Ok(MatrixElement { n, modulus, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn compatible(&self, other: &MatrixElement) -> Result<()> {
        if self.n != other.n || self.modulus != other.modulus {
            return Err(Error::usage(format!(
                "cannot combine a {0}x{0} matrix mod {1} with a {2}x{2} matrix mod {3}",
                self.n, self.modulus, other.n, other.modulus
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &MatrixElement, f: impl Fn(u128, u128) -> u128) -> Result<Self> {
        self.compatible(other)?;
        let m = self.modulus as u128;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| (f(x as u128, y as u128) % m) as u64)
            .collect();
        Ok(MatrixElement {
            n: self.n,
            modulus: self.modulus,
            entries,
        })
    }

    pub fn add(&self, other: &MatrixElement) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn mul_standard(&self, other: &MatrixElement) -> Result<Self> {
        self.compatible(other)?;
        let (n, m) = (self.n, self.modulus as u128);
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u128;
                for l in 0..n {
                    acc = (acc + self.entries[i * n + l] as u128 * other.entries[l * n + j] as u128) % m;
                }
                entries[i * n + j] = acc as u64;
            }
        }
        Ok(MatrixElement {
            n,
            modulus: self.modulus,
            entries,
        })
    }

    pub fn mul_hadamard(&self, other: &MatrixElement) -> Result<Self> {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn mul(&self, product: MatrixProduct, other: &MatrixElement) -> Result<Self> {
        match product {
            MatrixProduct::Standard => self.mul_standard(other),
            MatrixProduct::Hadamard => self.mul_hadamard(other),
        }
    }
}

impl std::fmt::Debug for MatrixElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} mod {}", self.rows(), self.modulus)
    }
}

/// Serialized as an array of row arrays.
impl Serialize for MatrixElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

pub fn mat_add(a: &MatrixElement, b: &MatrixElement) -> Result<MatrixElement> {
    a.add(b)
}

pub fn mat_mul_standard(a: &MatrixElement, b: &MatrixElement) -> Result<MatrixElement> {
    a.mul_standard(b)
}

pub fn mat_mul_hadamard(a: &MatrixElement, b: &MatrixElement) -> Result<MatrixElement> {
    a.mul_hadamard(b)
}

/// Identity matrix for the standard product, all-ones matrix for the
/// Hadamard product. At `n = 1` they coincide.
pub fn unit_matrix(product: MatrixProduct, n: usize, modulus: u64) -> Result<MatrixElement> {
    let mut u = MatrixElement::zero(n, modulus)?;
    for i in 0..n {
        for j in 0..n {
            if product == MatrixProduct::Hadamard || i == j {
                u.entries[i * n + j] = 1;
            }
        }
    }
    Ok(u)
}

/// `E_12 . E_21 = E_11` while `E_21 . E_12 = E_22`. `None` for `n = 1`.
pub fn noncommutativity_witness(n: usize, modulus: u64) -> Result<Option<(MatrixElement, MatrixElement)>> {
    validate_shape(n, modulus)?;
    if n < 2 {
        return Ok(None);
    }
    Ok(Some((
        MatrixElement::basis(n, modulus, 0, 1)?,
        MatrixElement::basis(n, modulus, 1, 0)?,
    )))
}

/// Every matrix in `M_n(Z/m)`, row-major lexicographic. Refuses more than `cap`.
pub fn all_matrices(n: usize, modulus: u64, cap: u64) -> Result<Vec<MatrixElement>> {
    validate_shape(n, modulus)?;
    let count = (modulus as u128).checked_pow((n * n) as u32);
    match count {
        Some(c) if c <= cap as u128 => {}
        other => {
            return Err(Error::Capacity {
                what: "matrix count",
                size: other.unwrap_or(u128::MAX),
                limit: cap as u128,
            })
        }
    }
    let total = count.unwrap_or(0) as u64;
    let cells = n * n;
    Ok((0..total)
        .map(|mut idx| {
            let mut entries = vec![0u64; cells];
            for slot in entries.iter_mut().rev() {
                *slot = idx % modulus;
                idx /= modulus;
            }
            MatrixElement { n, modulus, entries }
        })
        .collect())
}

/// Every two-sided identity of `product`, by exhaustive scan.
pub fn exhaustive_units(product: MatrixProduct, n: usize, modulus: u64, cap: u64) -> Result<Vec<MatrixElement>> {
    let all = all_matrices(n, modulus, cap)?;
    let mut units = Vec::new();
    'candidates: for u in &all {
        for x in &all {
            if u.mul(product, x)? != *x || x.mul(product, u)? != *x {
                continue 'candidates;
            }
        }
        units.push(u.clone());
    }
    Ok(units)
}

/// Ring axioms for one product, checked on random triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomSummary {
    pub product: MatrixProduct,
    pub samples: u64,
    pub associative: bool,
    pub left_distributive: bool,
    pub right_distributive: bool,
    pub commutative: bool,
    pub unit_verified: bool,
}

impl AxiomSummary {
    /// Associative, distributive on both sides, and the unit acts as identity.
    pub fn is_ring(&self) -> bool {
        self.associative && self.left_distributive && self.right_distributive && self.unit_verified
    }
}

pub fn sampled_axioms(product: MatrixProduct, n: usize, modulus: u64, samples: u64, seed: u64) -> Result<AxiomSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = unit_matrix(product, n, modulus)?;
    let mut s = AxiomSummary {
        product,
        samples,
        associative: true,
        left_distributive: true,
        right_distributive: true,
        commutative: true,
        unit_verified: true,
    };
    for _ in 0..samples {
        let a = MatrixElement::random(n, modulus, &mut rng)?;
        let b = MatrixElement::random(n, modulus, &mut rng)?;
        let c = MatrixElement::random(n, modulus, &mut rng)?;
        let ab = a.mul(product, &b)?;
        s.associative &= ab.mul(product, &c)? == a.mul(product, &b.mul(product, &c)?)?;
        s.left_distributive &= a.mul(product, &b.add(&c)?)? == ab.add(&a.mul(product, &c)?)?;
        s.right_distributive &= b.add(&c)?.mul(product, &a)? == b.mul(product, &a)?.add(&c.mul(product, &a)?)?;
        s.commutative &= ab == b.mul(product, &a)?;
        s.unit_verified &= a.mul(product, &unit)? == a && unit.mul(product, &a)? == a;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(modulus: u64, rows: &[&[i64]]) -> MatrixElement {
        MatrixElement::from_rows(modulus, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn add_examples() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let b = m(5, &[&[4, 3], &[2, 1]]);
        assert_eq!(mat_add(&a, &b).unwrap(), MatrixElement::zero(2, 5).unwrap());
        assert_eq!(mat_add(&a, &MatrixElement::zero(2, 5).unwrap()).unwrap(), a);
        assert_eq!(mat_add(&m(2, &[&[1]]), &m(2, &[&[1]])).unwrap(), m(2, &[&[0]]));
    }

    #[test]
    fn mismatched_operands_are_usage_errors() {
        let a = MatrixElement::zero(2, 5).unwrap();
        for b in [MatrixElement::zero(3, 5).unwrap(), MatrixElement::zero(2, 7).unwrap()] {
            assert!(matches!(mat_add(&a, &b), Err(Error::Usage(_))));
            assert!(matches!(mat_mul_standard(&a, &b), Err(Error::Usage(_))));
            assert!(matches!(mat_mul_hadamard(&a, &b), Err(Error::Usage(_))));
        }
        assert!(MatrixElement::from_rows(5, &[vec![1, 2], vec![3]]).is_err());
        assert!(MatrixElement::from_rows(5, &[]).is_err());
    }

    #[test]
    fn standard_product_examples() {
        let a = m(7, &[&[3, 1], &[6, 2]]);
        let id = unit_matrix(MatrixProduct::Standard, 2, 7).unwrap();
        assert_eq!(mat_mul_standard(&a, &id).unwrap(), a);
        let e12 = m(7, &[&[0, 1], &[0, 0]]);
        let e21 = m(7, &[&[0, 0], &[1, 0]]);
        assert_eq!(mat_mul_standard(&e12, &e21).unwrap(), m(7, &[&[1, 0], &[0, 0]]));
        assert_eq!(mat_mul_standard(&e21, &e12).unwrap(), m(7, &[&[0, 0], &[0, 1]]));
        let zero = MatrixElement::zero(2, 7).unwrap();
        assert_eq!(mat_mul_standard(&a, &zero).unwrap(), zero);
        assert_eq!(noncommutativity_witness(2, 7).unwrap(), Some((e12, e21)));
        assert_eq!(noncommutativity_witness(1, 7).unwrap(), None);
    }

    #[test]
    fn hadamard_product_examples() {
        let a = m(100, &[&[1, 2], &[3, 4]]);
        let b = m(100, &[&[5, 6], &[7, 8]]);
        assert_eq!(mat_mul_hadamard(&a, &b).unwrap(), m(100, &[&[5, 12], &[21, 32]]));
        let ones = unit_matrix(MatrixProduct::Hadamard, 2, 100).unwrap();
        assert_eq!(mat_mul_hadamard(&a, &ones).unwrap(), a);
        assert_eq!(mat_mul_hadamard(&a, &b).unwrap(), mat_mul_hadamard(&b, &a).unwrap());
    }

    #[test]
    fn unit_matrix_examples() {
        assert_eq!(unit_matrix(MatrixProduct::Standard, 2, 5).unwrap().rows(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(unit_matrix(MatrixProduct::Hadamard, 2, 5).unwrap().rows(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(
            unit_matrix(MatrixProduct::Standard, 1, 5).unwrap(),
            unit_matrix(MatrixProduct::Hadamard, 1, 5).unwrap()
        );
        assert!(unit_matrix(MatrixProduct::Standard, 0, 5).is_err());
        assert!(unit_matrix(MatrixProduct::Standard, 2, 1).is_err());
    }

    #[test]
    fn enumeration_of_tiny_matrix_ring() {
        let all = all_matrices(2, 2, 16).unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(all[5].rows(), vec![vec![0, 1], vec![0, 1]]);
        assert!(matches!(all_matrices(2, 3, 16), Err(Error::Capacity { size: 81, .. })));
    }
}
