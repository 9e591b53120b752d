use rigidity_core::enumeration::{
    classify_cyclic, enumerate_multiplications, expand_tables, full_table_oracle, rigidity_report,
    CyclicClassification, SearchConfig,
};
use rigidity_core::matrix::{
    noncommutativity_witness, sampled_axioms, unit_matrix, AxiomSummary, MatrixElement, MatrixProduct,
};
use rigidity_core::scaled::{
    make_scaled, pm1_violation, ring_identity_suite, unit_of_scaled, unitality_sweep,
    windowed_unit_search, BaseRing, IdentitySuiteReport, ScaledUnitality,
};
use rigidity_core::structure::DEFAULT_SEED;
use rigidity_core::{Error, GroupElement, GroupSpec, IntegerWindow, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, CommandResult, SearchArgs, Success};

/// Largest modulus accepted by `lemma23`; the sweep is quadratic in it.
const UNITALITY_MAX_MODULUS: u64 = 10_000;
/// Largest matrix dimension accepted by `matrix-demo`.
const MATRIX_MAX_DIM: usize = 32;

pub fn execute(command: &Command) -> CommandResult {
    match command {
        Command::Enumerate { group, search } => {
            CommandResult::finish("enumerate", json!({ "group": group }), enumerate(group, search))
        }
        Command::VerifyScaled { a, bound, samples } => CommandResult::finish(
            "verify-scaled",
            json!({ "a": a, "bound": bound, "samples": samples }),
            verify_scaled(*a, *bound, *samples),
        ),
        Command::Classify { modulus, search } => {
            CommandResult::finish("classify", json!({ "modulus": modulus }), classify(*modulus, search))
        }
        Command::MatrixDemo { n, modulus, samples } => CommandResult::finish(
            "matrix-demo",
            json!({ "n": n, "mod": modulus, "samples": samples }),
            matrix_demo(*n, *modulus, *samples),
        ),
        Command::Units { modulus } => {
            CommandResult::finish("lemma23", json!({ "modulus": modulus }), units(*modulus))
        }
    }
}

fn search_config(search: &SearchArgs) -> SearchConfig {
    SearchConfig::default()
        .with_workers(search.workers)
        .with_budget(search.budget)
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("payload serializes")
}

fn enumerate(group: &str, search: &SearchArgs) -> Result<Success> {
    let group: GroupSpec = group.parse()?;
    let report = rigidity_report(&group, &search_config(search))?;
    let mut text = vec![
        format!("group: {}", report.group),
        format!("bilinear candidates: {}", report.bilinear_candidates),
        format!("ring multiplications: {}", report.total),
        format!("commutative: {}", report.commutative_count),
        format!("unital: {}", report.unital_count),
    ];
    if let Some(scales) = &report.unital_scales {
        text.push(format!("unital scales: {scales:?}"));
    }
    if let Some(all) = report.scaled_form_all {
        text.push(format!("all of the form a.n.m: {all}"));
    }
    for (i, w) in report.unital_witnesses.iter().enumerate() {
        text.push(format!("unital witness {}: constants {}, unit {}", i + 1, w.constants, w.unit));
    }
    Ok(Success {
        payload: to_value(&report),
        text,
    })
}

#[derive(Serialize)]
struct VerifyScaledPayload {
    scale: i64,
    bound: i64,
    identities: IdentitySuiteReport,
    unit_closed_form: Option<i64>,
    unit_search: Option<i64>,
    unit: Option<i64>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn verify_scaled(a: i64, bound: i64, samples: u64) -> Result<Success> {
    let window = IntegerWindow::new(bound)?;
    let mul = make_scaled(a);
    let identities = ring_identity_suite(&mul, window, samples, DEFAULT_SEED)?;
    let closed = unit_of_scaled(a);
    let searched = windowed_unit_search(&mul, window)?;
    if closed != searched {
        return Err(Error::Invariant(format!(
            "closed-form unit {closed:?} disagrees with window search {searched:?} for a = {a}"
        )));
    }
    let note = match a {
        1 => Some("usual ring"),
        -1 => Some("alternate ring"),
        0 => Some("zero multiplication"),
        _ => None,
    };
    let payload = VerifyScaledPayload {
        scale: a,
        bound,
        passed: identities.passed,
        identities,
        unit_closed_form: closed,
        unit_search: searched,
        unit: searched,
        note,
    };
    let mut text = vec![
        format!("n * m = {a}.n.m on [-{bound}, {bound}]"),
        format!(
            "associativity, distributivity, commutativity on {samples} triples: {}",
            if payload.passed { "pass" } else { "FAIL" }
        ),
        match searched {
            Some(u) => format!("unit: {u}"),
            None => "unit: absent".to_string(),
        },
    ];
    if let Some(n) = note {
        text.push(format!("note: {n}"));
    }
    if let Some(f) = &payload.identities.first_failure {
        text.push(format!("first failure: {f:?}"));
    }
    Ok(Success {
        payload: to_value(&payload),
        text,
    })
}

#[derive(Serialize)]
struct ClassifyPayload {
    modulus: u64,
    total: u64,
    scales: Vec<CyclicClassification>,
    unital_scales: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'static str>,
}

fn classify(modulus: u64, search: &SearchArgs) -> Result<Success> {
    let cfg = search_config(search);
    let scales = classify_cyclic(modulus, &cfg)?;
    let oracle = if modulus <= cfg.full_table_cap {
        let group = GroupSpec::cyclic(modulus)?;
        let expanded = expand_tables(&enumerate_multiplications(&group, &cfg)?, cfg.order_cap)?;
        let survivors = full_table_oracle(modulus, cfg.full_table_cap)?;
        Some(if expanded == survivors { "agree" } else { "disagree" })
    } else {
        None
    };
    let unital_scales: Vec<u64> = scales.iter().filter(|c| c.unital).map(|c| c.scale).collect();
    let mut text = vec![format!("Z/{modulus}: {} multiplications, all of the form a.n.m", scales.len())];
    for c in &scales {
        text.push(format!(
            "  a = {}{}: {}",
            c.scale,
            if c.is_minus_one { " (-1)" } else { "" },
            match c.unit {
                Some(u) => format!("unital, unit {u}"),
                None => "not unital".to_string(),
            }
        ));
    }
    text.push(format!("unital scales: {unital_scales:?}"));
    if let Some(o) = oracle {
        text.push(format!("oracle: {o}"));
    }
    let payload = ClassifyPayload {
        modulus,
        total: scales.len() as u64,
        scales,
        unital_scales,
        oracle,
    };
    if payload.oracle == Some("disagree") {
        return Err(Error::Invariant(format!(
            "full-table oracle disagrees with the structure-constant search on Z/{modulus}"
        )));
    }
    Ok(Success {
        payload: to_value(&payload),
        text,
    })
}

#[derive(Serialize)]
struct Units {
    standard: MatrixElement,
    hadamard: MatrixElement,
}

#[derive(Serialize)]
struct Witness {
    a: MatrixElement,
    b: MatrixElement,
    ab: MatrixElement,
    ba: MatrixElement,
}

#[derive(Serialize)]
struct MatrixDemoPayload {
    n: usize,
    modulus: u64,
    units: Units,
    units_differ: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    axioms: Vec<AxiomSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn matrix_demo(n: usize, modulus: u64, samples: u64) -> Result<Success> {
    if n > MATRIX_MAX_DIM {
        return Err(Error::Usage(format!("matrix dimension must be ≤ {MATRIX_MAX_DIM} (got {n})")));
    }
    let units = Units {
        standard: unit_matrix(MatrixProduct::Standard, n, modulus)?,
        hadamard: unit_matrix(MatrixProduct::Hadamard, n, modulus)?,
    };
    let witness = match noncommutativity_witness(n, modulus)? {
        Some((a, b)) => Some(Witness {
            ab: a.mul_standard(&b)?,
            ba: b.mul_standard(&a)?,
            a,
            b,
        }),
        None => None,
    };
    let axioms = vec![
        sampled_axioms(MatrixProduct::Standard, n, modulus, samples, DEFAULT_SEED)?,
        sampled_axioms(MatrixProduct::Hadamard, n, modulus, samples, DEFAULT_SEED)?,
    ];
    let payload = MatrixDemoPayload {
        n,
        modulus,
        units_differ: units.standard != units.hadamard,
        units,
        witness,
        axioms,
        note: (n == 1).then_some("modes coincide at n=1"),
    };
    let mut text = vec![
        format!("M_{n}(Z/{modulus})"),
        format!("standard unit: {:?}", payload.units.standard.rows()),
        format!("hadamard unit: {:?}", payload.units.hadamard.rows()),
    ];
    if let Some(w) = &payload.witness {
        text.push(format!(
            "noncommutativity witness: {:?} . {:?} = {:?} but reversed = {:?}",
            w.a.rows(),
            w.b.rows(),
            w.ab.rows(),
            w.ba.rows()
        ));
    }
    for s in &payload.axioms {
        text.push(format!(
            "{:?} on {} samples: associative {}, distributive {}, commutative {}, unit {}",
            s.product,
            s.samples,
            s.associative,
            s.left_distributive && s.right_distributive,
            s.commutative,
            s.unit_verified
        ));
    }
    if let Some(note) = payload.note {
        text.push(format!("note: {note}"));
    }
    Ok(Success {
        payload: to_value(&payload),
        text,
    })
}

#[derive(Serialize)]
struct UnitalityEntry {
    scale: u64,
    is_plus_minus_one: bool,
    unital: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit: Option<u64>,
}

#[derive(Serialize)]
struct UnitalityPayload {
    modulus: u64,
    pm1_property: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[u64; 2]>,
    /// "check" when the hypothesis holds, "diagnostic" otherwise.
    mode: &'static str,
    entries: Vec<UnitalityEntry>,
    unital_scales: Vec<u64>,
    unital_iff_pm1: bool,
}

fn residue(g: &GroupElement) -> u64 {
    g.coords()[0]
}

fn units(modulus: u64) -> Result<Success> {
    let group = GroupSpec::cyclic(modulus)?;
    if group.order() > UNITALITY_MAX_MODULUS {
        return Err(Error::Capacity {
            what: "modulus",
            size: modulus as u128,
            limit: UNITALITY_MAX_MODULUS as u128,
        });
    }
    let ring = BaseRing::integers_mod(modulus)?;
    let violation = pm1_violation(&ring)?;
    let sweep = if violation.is_none() {
        rigidity_core::scaled::check_unital_iff_pm1(&ring)?
    } else {
        unitality_sweep(&ring)?
    };
    let entries: Vec<UnitalityEntry> = sweep
        .entries
        .iter()
        .map(|e: &ScaledUnitality| UnitalityEntry {
            scale: residue(&e.scale),
            is_plus_minus_one: e.is_plus_minus_one,
            unital: e.unit.is_some(),
            unit: e.unit.as_ref().map(residue),
        })
        .collect();
    let payload = UnitalityPayload {
        modulus,
        pm1_property: violation.is_none(),
        witness: violation.as_ref().map(|(a, u)| [residue(a), residue(u)]),
        mode: if violation.is_none() { "check" } else { "diagnostic" },
        unital_scales: sweep.unital_scales().into_iter().map(residue).collect(),
        unital_iff_pm1: sweep.unital_iff_pm1(),
        entries,
    };
    if payload.pm1_property && !payload.unital_iff_pm1 {
        return Err(Error::Invariant(format!(
            "Z/{modulus} satisfies the +-1 unit property but unital scales are {:?}",
            payload.unital_scales
        )));
    }
    let mut text = vec![match &payload.witness {
        None => format!("Z/{modulus}: a.u = 1 only for a = u = +-1"),
        Some([a, u]) => format!("Z/{modulus}: property fails, witness {a}.{u} = 1"),
    }];
    text.push(format!("mode: {}", payload.mode));
    text.push(format!("unital scales: {:?}", payload.unital_scales));
    text.push(format!("unital exactly at +-1: {}", payload.unital_iff_pm1));
    Ok(Success {
        payload: to_value(&payload),
        text,
    })
}
