use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{GroupElement, GroupSpec};
use crate::error::{Error, Result};

/// A bilinear multiplication on a finite abelian group, given by the
/// generator products `C[i][j] = e_i o e_j`.
///
/// Construction enforces that the order of `C[i][j]` divides
/// `gcd(n_i, n_j)`; otherwise the bilinear extension would depend on the
/// chosen coordinate representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureConstants {
    group: GroupSpec,
    /// Row-major `k x k`.
    table: Vec<GroupElement>,
}

impl StructureConstants {
    pub fn new(group: &GroupSpec, rows: Vec<Vec<GroupElement>>) -> Result<Self> {
        let k = group.rank();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::usage(format!(
                "structure constant table for {group} must be {k}x{k}"
            )));
        }
        Self::from_flat(group, rows.into_iter().flatten().collect())
    }

    /// Row-major constructor.
    pub fn from_flat(group: &GroupSpec, table: Vec<GroupElement>) -> Result<Self> {
        let k = group.rank();
        if table.len() != k * k {
            return Err(Error::usage(format!(
                "structure constant table for {group} needs {} entries, got {}",
                k * k,
                table.len()
            )));
        }
        let moduli = group.moduli();
        for (idx, c) in table.iter().enumerate() {
            if c.group() != group {
                return Err(Error::usage(format!(
                    "structure constant {c:?} is not an element of {group}"
                )));
            }
            let (i, j) = (idx / k, idx % k);
            let d = moduli[i].gcd(&moduli[j]);
            if d % c.order() != 0 {
                return Err(Error::usage(format!(
                    "e_{i} o e_{j} = {c} has order {} which does not divide gcd({}, {}) = {d}",
                    c.order(),
                    moduli[i],
                    moduli[j]
                )));
            }
        }
        Ok(StructureConstants {
            group: group.clone(),
            table,
        })
    }

    /// Caller guarantees the well-definedness constraint.
    pub(crate) fn from_flat_unchecked(group: &GroupSpec, table: Vec<GroupElement>) -> Self {
        debug_assert_eq!(table.len(), group.rank() * group.rank());
        StructureConstants {
            group: group.clone(),
            table,
        }
    }

    /// The multiplication `n o m = a.n.m` on a cyclic group.
    pub fn scaled_cyclic(group: &GroupSpec, a: i64) -> Result<Self> {
        if !group.is_cyclic() {
            return Err(Error::usage(format!("{group} is not cyclic")));
        }
        Self::from_flat(group, vec![group.element_reduced(&[a])?])
    }

    pub fn zero(group: &GroupSpec) -> Self {
        let k = group.rank();
        Self::from_flat_unchecked(group, vec![group.zero(); k * k])
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupElement {
        &self.table[i * self.group.rank() + j]
    }

    /// Row-major generator products.
    pub fn entries(&self) -> &[GroupElement] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<GroupElement>> {
        self.table
            .chunks(self.group.rank())
            .map(|r| r.to_vec())
            .collect()
    }

    /// The bilinear extension `sum_{i,j} g_i h_j C[i][j]`.
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        for x in [g, h] {
            if x.group() != &self.group {
                return Err(Error::usage(format!(
                    "{x:?} is not an element of {}",
                    self.group
                )));
            }
        }
        Ok(self.eval_unchecked(g, h))
    }

    pub(crate) fn eval_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let k = self.group.rank();
        let moduli = self.group.moduli();
        let mut acc = vec![0u64; k];
        for (i, &gi) in g.coords().iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &hj) in h.coords().iter().enumerate() {
                if hj == 0 {
                    continue;
                }
                let c = &self.table[i * k + j];
                for ((slot, &cl), &n) in acc.iter_mut().zip(c.coords()).zip(moduli) {
                    // the integer g_i h_j acts on Z/n_l through its residue
                    let n = n as u128;
                    let coeff = (gi as u128 % n) * (hj as u128 % n) % n;
                    *slot = ((*slot as u128 + coeff * cl as u128) % n) as u64;
                }
            }
        }
        self.group
            .element(&acc)
            .expect("accumulator stays reduced")
    }

    /// Associativity on generator triples, which is equivalent to
    /// associativity everywhere because both triple products are trilinear.
    pub fn check_associativity(&self) -> bool {
        let gens = self.group.generators();
        for a in &gens {
            for b in &gens {
                let ab = self.eval_unchecked(a, b);
                for c in &gens {
                    let left = self.eval_unchecked(&ab, c);
                    let right = self.eval_unchecked(a, &self.eval_unchecked(b, c));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Symmetry of the constant table.
    pub fn check_commutativity(&self) -> bool {
        let k = self.group.rank();
        (0..k).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// The two-sided identity, if any.
    ///
    /// Candidates are screened against the generators only (enough by
    /// bilinearity) and a hit is then verified against every element.
    /// Fails with [`Error::Capacity`] when the group order exceeds `cap`.
    pub fn find_unit(&self, cap: u64) -> Result<Option<GroupElement>> {
        let gens = self.group.generators();
        let mut found: Option<GroupElement> = None;
        for u in self.group.all_elements(cap)? {
            let acts_as_identity = gens
                .iter()
                .all(|e| self.eval_unchecked(&u, e) == *e && self.eval_unchecked(e, &u) == *e);
            if !acts_as_identity {
                continue;
            }
            if let Some(first) = &found {
                return Err(Error::Invariant(format!(
                    "two identities {first} and {u} for the same multiplication"
                )));
            }
            found = Some(u);
        }
        if let Some(u) = &found {
            for g in self.group.all_elements(cap)? {
                if self.eval_unchecked(u, &g) != g || self.eval_unchecked(&g, u) != g {
                    return Err(Error::Invariant(format!(
                        "{u} passes the generator screen but fails at {g}"
                    )));
                }
            }
        }
        Ok(found)
    }

    /// The full `|G| x |G|` multiplication table, row-major, with elements
    /// named by their lexicographic index.
    pub fn full_table(&self, cap: u64) -> Result<Vec<u64>> {
        let elements: Vec<_> = self.group.all_elements(cap)?.collect();
        let mut out = Vec::with_capacity(elements.len() * elements.len());
        for g in &elements {
            for h in &elements {
                out.push(self.group.index_of(&self.eval_unchecked(g, h)));
            }
        }
        Ok(out)
    }

    /// The full table as rows of coordinate vectors, for reporting.
    pub fn table_rows(&self, cap: u64) -> Result<Vec<Vec<GroupElement>>> {
        let elements: Vec<_> = self.group.all_elements(cap)?.collect();
        Ok(elements
            .iter()
            .map(|g| elements.iter().map(|h| self.eval_unchecked(g, h)).collect())
            .collect())
    }
}

impl std::fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StructureConstants({} ", self.group)?;
        f.debug_list().entries(self.rows()).finish()?;
        f.write_str(")")
    }
}

/// Rows of generator products, e.g. `[[(1,0),(0,1)],[(0,1),(1,1)]]`.
impl std::fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Serialize for StructureConstants {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// A multiplication together with its recomputed axiom flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingStructure {
    mult: StructureConstants,
    associative: bool,
    commutative: bool,
    unit: Option<GroupElement>,
}

impl RingStructure {
    pub fn analyze(mult: StructureConstants, cap: u64) -> Result<Self> {
        let associative = mult.check_associativity();
        let commutative = mult.check_commutativity();
        let unit = mult.find_unit(cap)?;
        Ok(RingStructure {
            mult,
            associative,
            commutative,
            unit,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        self.mult.group()
    }

    pub fn mult(&self) -> &StructureConstants {
        &self.mult
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn unit(&self) -> Option<&GroupElement> {
        self.unit.as_ref()
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.mult.eval(g, h)
    }
}
