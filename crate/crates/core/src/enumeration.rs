//! Exhaustive search for every ring multiplication on a finite abelian group.
//!
//! A candidate is a table of structure constants `C[i][j]` with each entry
//! killed by `gcd(n_i, n_j)`; these are exactly the bilinear (distributive)
//! multiplications. The search walks all of them in lexicographic order of
//! the flattened table and keeps the associative ones. Work is split across
//! workers by the value of the first constant `C[0][0]`.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{GroupElement, GroupSpec};
use crate::error::{Error, Result};
use crate::structure::{RingStructure, StructureConstants};

pub const DEFAULT_ORDER_CAP: u64 = 10_000;
pub const DEFAULT_FULL_TABLE_CAP: u64 = 3;
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Unital witnesses carry their full multiplication table only up to this order.
const WITNESS_TABLE_MAX_ORDER: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest group order accepted by the structure-constant search.
    pub order_cap: u64,
    /// Largest carrier size accepted by [`full_table_oracle`].
    pub full_table_cap: u64,
    /// Largest number of candidate tables, counted before filtering.
    pub budget: u64,
    pub workers: usize,
    /// Merge partitions in order of the first constant. When off, partitions
    /// are appended in completion order.
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            order_cap: DEFAULT_ORDER_CAP,
            full_table_cap: DEFAULT_FULL_TABLE_CAP,
            budget: DEFAULT_BUDGET,
            workers: 1,
            deterministic: true,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order_cap == 0 || self.full_table_cap == 0 || self.budget == 0 || self.workers == 0 {
            return Err(Error::usage("search caps, budget and worker count must be positive"));
        }
        Ok(())
    }
}

/// Admissible values for each constant, row-major: the elements killed by
/// `gcd(n_i, n_j)`, in lexicographic order.
fn admissible_constants(group: &GroupSpec) -> Vec<Vec<GroupElement>> {
    let moduli = group.moduli();
    let k = group.rank();
    (0..k * k)
        .map(|idx| group.killed_by(moduli[idx / k].gcd(&moduli[idx % k])))
        .collect()
}

/// Number of bilinear multiplications on `group`: the product over cells
/// of the number of admissible constants.
pub fn search_space_size(group: &GroupSpec) -> u128 {
    let moduli = group.moduli();
    let k = group.rank();
    (0..k * k)
        .map(|idx| group.count_killed_by(moduli[idx / k].gcd(&moduli[idx % k])) as u128)
        .fold(1u128, u128::saturating_mul)
}

fn check_caps(group: &GroupSpec, cfg: &SearchConfig) -> Result<u128> {
    cfg.validate()?;
    if group.order() > cfg.order_cap {
        return Err(Error::Capacity {
            what: "group order",
            size: group.order() as u128,
            limit: cfg.order_cap as u128,
        });
    }
    let space = search_space_size(group);
    if space > cfg.budget as u128 {
        return Err(Error::Capacity {
            what: "search space (candidate multiplications)",
            size: space,
            limit: cfg.budget as u128,
        });
    }
    Ok(space)
}

/// Every associative bilinear multiplication on `group`, each once, with
/// its flags computed.
///
/// Output order is lexicographic in the flattened constant table when
/// `cfg.deterministic` is set, independent of the worker count.
pub fn enumerate_multiplications(group: &GroupSpec, cfg: &SearchConfig) -> Result<Vec<RingStructure>> {
    check_caps(group, cfg)?;
    let choices = admissible_constants(group);
    let partitions = choices[0].len();
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<(usize, Result<Vec<RingStructure>>)>> = Mutex::new(Vec::with_capacity(partitions));

    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.min(partitions) {
            scope.spawn(|| loop {
                let p = next.fetch_add(1, Ordering::Relaxed);
                if p >= partitions {
                    break;
                }
                let found = search_partition(group, &choices, p, cfg.order_cap);
                done.lock().expect("worker panicked").push((p, found));
            });
        }
    });

    let mut done = done.into_inner().expect("worker panicked");
    if cfg.deterministic {
        done.sort_by_key(|(p, _)| *p);
    }
    let mut out = Vec::new();
    for (_, found) in done {
        out.extend(found?);
    }
    Ok(out)
}

/// All candidates with `C[0][0] = choices[0][first]`, in lexicographic order.
fn search_partition(
    group: &GroupSpec,
    choices: &[Vec<GroupElement>],
    first: usize,
    cap: u64,
) -> Result<Vec<RingStructure>> {
    let cells = choices.len();
    let mut digits = vec![0usize; cells];
    digits[0] = first;
    let mut found = Vec::new();
    loop {
        let table = digits
            .iter()
            .zip(choices)
            .map(|(&d, options)| options[d].clone())
            .collect();
        let candidate = StructureConstants::from_flat_unchecked(group, table);
        if candidate.check_associativity() {
            found.push(RingStructure::analyze(candidate, cap)?);
        }
        // odometer over cells 1.., the first cell stays fixed
        let mut pos = cells;
        loop {
            pos -= 1;
            if pos == 0 {
                return Ok(found);
            }
            digits[pos] += 1;
            if digits[pos] < choices[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// A unital multiplication reported as evidence that the addition does not
/// determine the multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitalWitness {
    pub constants: StructureConstants,
    pub unit: GroupElement,
    /// Full multiplication table, rows indexed by elements in lexicographic
    /// order. Omitted for large groups.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<GroupElement>>>,
}

/// Census of all ring multiplications on a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub group: GroupSpec,
    pub order: u64,
    /// Bilinear multiplications examined, before the associativity filter.
    pub bilinear_candidates: u64,
    pub total: u64,
    pub commutative_count: u64,
    pub unital_count: u64,
    /// Cyclic groups only: residues `a` for which `a.n.m` is unital.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unital_scales: Option<Vec<u64>>,
    /// Cyclic groups only: every multiplication equals `a.n.m` with `a = 1 o 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaled_form_all: Option<bool>,
    /// The first two unital multiplications in search order.
    pub unital_witnesses: Vec<UnitalWitness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn rigidity_report(group: &GroupSpec, cfg: &SearchConfig) -> Result<RigidityReport> {
    let started = Instant::now();
    let space = check_caps(group, cfg)?;
    let structures = enumerate_multiplications(group, cfg)?;

    let mut witnesses = Vec::new();
    for r in structures.iter().filter(|r| r.unit().is_some()).take(2) {
        let table = if group.order() <= WITNESS_TABLE_MAX_ORDER {
            Some(r.mult().table_rows(cfg.order_cap)?)
        } else {
            None
        };
        witnesses.push(UnitalWitness {
            constants: r.mult().clone(),
            unit: r.unit().cloned().expect("filtered on unit"),
            table,
        });
    }

    let (unital_scales, scaled_form_all) = if group.is_cyclic() {
        let classes = classify_structures(group, &structures)?;
        let scales = classes.iter().filter(|c| c.unital).map(|c| c.scale).collect();
        (Some(scales), Some(classes.iter().all(|c| c.scaled_form)))
    } else {
        (None, None)
    };

    Ok(RigidityReport {
        group: group.clone(),
        order: group.order(),
        bilinear_candidates: space as u64,
        total: structures.len() as u64,
        commutative_count: structures.iter().filter(|r| r.is_commutative()).count() as u64,
        unital_count: structures.iter().filter(|r| r.unit().is_some()).count() as u64,
        unital_scales,
        scaled_form_all,
        unital_witnesses: witnesses,
        elapsed: started.elapsed(),
    })
}

/// One multiplication on `Z/N`, identified by its scale `a = 1 o 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicClassification {
    pub scale: u64,
    /// `a = N - 1`, i.e. `a = -1`.
    pub is_minus_one: bool,
    /// `n o m = a.n.m` for all `n, m`. Always true; a false would be fatal.
    pub scaled_form: bool,
    pub unital: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<u64>,
}

/// Enumerates `Z/N` and checks every multiplication against `a.n.m`
/// exhaustively. A mismatch is reported as [`Error::Invariant`].
pub fn classify_cyclic(modulus: u64, cfg: &SearchConfig) -> Result<Vec<CyclicClassification>> {
    let group = GroupSpec::cyclic(modulus)?;
    let structures = enumerate_multiplications(&group, cfg)?;
    classify_structures(&group, &structures)
}

fn classify_structures(group: &GroupSpec, structures: &[RingStructure]) -> Result<Vec<CyclicClassification>> {
    let n = group.moduli()[0];
    let one = group.generator(0);
    let elements: Vec<_> = (0..n).map(|r| group.element_at(r)).collect();
    structures
        .iter()
        .map(|r| {
            let scale = r.mul(&one, &one)?.coords()[0];
            for x in &elements {
                for y in &elements {
                    let expected =
                        (scale as u128 * x.coords()[0] as u128 % n as u128) * y.coords()[0] as u128 % n as u128;
                    let actual = r.mul(x, y)?.coords()[0];
                    if actual as u128 != expected {
                        return Err(Error::Invariant(format!(
                            "multiplication with 1 o 1 = {scale} on Z/{n} gives {x} o {y} = {actual}, not {expected}"
                        )));
                    }
                }
            }
            Ok(CyclicClassification {
                scale,
                is_minus_one: scale == n - 1,
                scaled_form: true,
                unital: r.unit().is_some(),
                unit: r.unit().map(|u| u.coords()[0]),
            })
        })
        .collect()
}

/// A binary operation on `{0, ..., N-1}` as a row-major `N x N` table.
pub type FullTable = Vec<u64>;

/// Every operation table on `{0, ..., N-1}` that distributes over addition
/// mod `N` on both sides and is associative, found by scanning all
/// `N^(N^2)` tables. Independent of the structure-constant search.
pub fn full_table_oracle(modulus: u64, cap: u64) -> Result<BTreeSet<FullTable>> {
    if modulus > cap {
        return Err(Error::Capacity {
            what: "full-table carrier size",
            size: modulus as u128,
            limit: cap as u128,
        });
    }
    if modulus < 2 {
        return Err(Error::usage(format!("modulus must be ≥ 2 (got {modulus})")));
    }
    let n = modulus as usize;
    let cells = n * n;
    let add = |x: usize, y: usize| (x + y) % n;
    let mut table = vec![0u64; cells];
    let mut survivors = BTreeSet::new();
    loop {
        let op = |x: usize, y: usize| table[x * n + y] as usize;
        let mut ok = true;
        'check: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if op(x, add(y, z)) != add(op(x, y), op(x, z))
                        || op(add(y, z), x) != add(op(y, x), op(z, x))
                        || op(op(x, y), z) != op(x, op(y, z))
                    {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok {
            survivors.insert(table.clone());
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return Ok(survivors);
            }
            pos -= 1;
            table[pos] += 1;
            if table[pos] < modulus {
                break;
            }
            table[pos] = 0;
        }
    }
}

/// Full tables of the given structures, for comparison with [`full_table_oracle`].
pub fn expand_tables(structures: &[RingStructure], cap: u64) -> Result<BTreeSet<FullTable>> {
    structures.iter().map(|r| r.mult().full_table(cap)).collect()
}
