//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails or exceeds its time limit.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity_core::enumeration::{
    classify_cyclic, enumerate_multiplications, expand_tables, full_table_oracle, SearchConfig,
};
use rigidity_core::matrix::{
    exhaustive_units, mat_mul_standard, noncommutativity_witness, sampled_axioms, unit_matrix,
    MatrixElement, MatrixProduct,
};
use rigidity_core::scaled::{
    check_unital_iff_pm1, has_pm1_unit_property, make_scaled, unitality_sweep,
    windowed_unit_search, BaseRing,
};
use rigidity_core::structure::IntMul;
use rigidity_core::{GroupSpec, IntegerWindow};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// 10^4 random (a, n, m, k) with |a| <= 100 and |n|, |m|, |k| <= 10^4:
/// both triple products equal a.a.n.m.k and both sides of the distributive
/// law equal a.n.m + a.n.k, exactly.
fn scaled_ring_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    for _ in 0..10_000 {
        let a: i64 = rng.gen_range(-100..=100);
        let (n, m, k): (i64, i64, i64) = (
            rng.gen_range(-10_000..=10_000),
            rng.gen_range(-10_000..=10_000),
            rng.gen_range(-10_000..=10_000),
        );
        let s = make_scaled(a);
        let ap = |x, y| s.apply(x, y).map_err(|e| e.to_string());
        let left = ap(n, ap(m, k)?)?;
        let right = ap(ap(n, m)?, k)?;
        let closed = a as i128 * a as i128 * n as i128 * m as i128 * k as i128;
        ensure(left == right && left as i128 == closed, || {
            format!("associativity fails at a={a} n={n} m={m} k={k}")
        })?;
        let dist_l = ap(n, m + k)?;
        let sum = ap(n, m)? + ap(n, k)?;
        ensure(dist_l == sum, || format!("distributivity fails at a={a} n={n} m={m} k={k}"))?;
        ensure(ap(m + k, n)? == ap(m, n)? + ap(k, n)?, || {
            format!("right distributivity fails at a={a} n={n} m={m} k={k}")
        })?;
    }
    Ok("10000 quadruples exact".into())
}

/// For every a in [-100, 100], a unit scan on [-1000, 1000] finds a unit iff
/// a = +-1, and then the unit is a.
fn unitality_of_scaled_integers() -> Check {
    let window = IntegerWindow::new(1000).map_err(|e| e.to_string())?;
    let mut unital = Vec::new();
    for a in -100..=100 {
        let found = windowed_unit_search(&make_scaled(a), window).map_err(|e| e.to_string())?;
        match found {
            Some(u) => {
                ensure(u == a, || format!("a={a} has unit {u}"))?;
                unital.push(a);
            }
            None => ensure(a != 1 && a != -1, || format!("a={a} has no unit"))?,
        }
    }
    ensure(unital == vec![-1, 1], || format!("unital scales {unital:?}"))?;
    Ok("unital exactly at a = -1, 1 with u = a".into())
}

/// Every N in 2..=16: exactly N multiplications on Z/N, each equal to
/// a.n.m with a = 1 o 1 on all N^2 products.
fn finite_classification() -> Check {
    let cfg = SearchConfig::default();
    for n in 2..=16u64 {
        let g = GroupSpec::cyclic(n).map_err(|e| e.to_string())?;
        let found = enumerate_multiplications(&g, &cfg).map_err(|e| e.to_string())?;
        ensure(found.len() as u64 == n, || format!("Z/{n}: {} multiplications", found.len()))?;
        let one = g.generator(0);
        for r in &found {
            let a = r.mul(&one, &one).map_err(|e| e.to_string())?.coords()[0];
            for x in 0..n {
                for y in 0..n {
                    let got = r
                        .mul(&g.element_at(x), &g.element_at(y))
                        .map_err(|e| e.to_string())?
                        .coords()[0];
                    ensure(got == a * x * y % n, || format!("Z/{n}, a={a}: {x} o {y} = {got}"))?;
                }
            }
        }
        let classes = classify_cyclic(n, &cfg).map_err(|e| e.to_string())?;
        ensure(classes.len() as u64 == n && classes.iter().all(|c| c.scaled_form), || {
            format!("Z/{n}: classify_cyclic disagrees")
        })?;
    }
    Ok("N = 2..16, N multiplications each, all scaled".into())
}

/// Full-table oracle survivors for N = 2 (16 tables) and N = 3 (19683
/// tables) equal the expanded structure-constant enumeration as sets.
fn oracle_equivalence() -> Check {
    let cfg = SearchConfig::default();
    let mut sizes = Vec::new();
    for n in [2u64, 3] {
        let oracle = full_table_oracle(n, cfg.full_table_cap).map_err(|e| e.to_string())?;
        let g = GroupSpec::cyclic(n).map_err(|e| e.to_string())?;
        let found = enumerate_multiplications(&g, &cfg).map_err(|e| e.to_string())?;
        let expanded: BTreeSet<_> = expand_tables(&found, cfg.order_cap).map_err(|e| e.to_string())?;
        ensure(oracle == expanded, || format!("Z/{n}: oracle {oracle:?} vs search {expanded:?}"))?;
        sizes.push(oracle.len());
    }
    Ok(format!("survivor sets equal, sizes {sizes:?}"))
}

/// N in 2..=16: unital count from brute-force unit search equals the number
/// of residues coprime to N.
fn unitality_census() -> Check {
    let cfg = SearchConfig::default();
    for n in 2..=16u64 {
        let g = GroupSpec::cyclic(n).map_err(|e| e.to_string())?;
        let found = enumerate_multiplications(&g, &cfg).map_err(|e| e.to_string())?;
        let mut unital = 0u64;
        for r in &found {
            if r.mult().find_unit(cfg.order_cap).map_err(|e| e.to_string())?.is_some() {
                unital += 1;
            }
        }
        let coprime = (0..n).filter(|&a| gcd(a, n) == 1).count() as u64;
        ensure(unital == coprime, || format!("Z/{n}: {unital} unital, {coprime} coprime"))?;
        if n == 12 {
            ensure(unital == 4, || format!("Z/12: {unital} unital"))?;
        }
    }
    Ok("unital count = coprime count for N = 2..16".into())
}

/// M_2(Z/7): both products pass 10^3 sampled axiom triples, the stored
/// witness shows the standard product is noncommutative, the Hadamard
/// product is commutative on every sample, and each unit is unique on M_2(Z/2).
fn matrix_non_rigidity() -> Check {
    let err = |e: rigidity_core::Error| e.to_string();
    let standard = sampled_axioms(MatrixProduct::Standard, 2, 7, 1_000, 1).map_err(err)?;
    let hadamard = sampled_axioms(MatrixProduct::Hadamard, 2, 7, 1_000, 2).map_err(err)?;
    ensure(standard.is_ring(), || format!("standard: {standard:?}"))?;
    ensure(hadamard.is_ring() && hadamard.commutative, || format!("hadamard: {hadamard:?}"))?;
    let (a, b) = noncommutativity_witness(2, 7).map_err(err)?.ok_or("no witness")?;
    let e = |rows: &[Vec<i64>]| MatrixElement::from_rows(7, rows).unwrap();
    ensure(a == e(&[vec![0, 1], vec![0, 0]]) && b == e(&[vec![0, 0], vec![1, 0]]), || "witness changed".into())?;
    let ab = mat_mul_standard(&a, &b).map_err(err)?;
    let ba = mat_mul_standard(&b, &a).map_err(err)?;
    ensure(ab == e(&[vec![1, 0], vec![0, 0]]) && ba == e(&[vec![0, 0], vec![0, 1]]), || {
        format!("witness products {ab:?} {ba:?}")
    })?;
    ensure(
        unit_matrix(MatrixProduct::Standard, 2, 7).map_err(err)?.rows() == vec![vec![1, 0], vec![0, 1]],
        || "standard unit".into(),
    )?;
    ensure(
        unit_matrix(MatrixProduct::Hadamard, 2, 7).map_err(err)?.rows() == vec![vec![1, 1], vec![1, 1]],
        || "hadamard unit".into(),
    )?;
    for product in [MatrixProduct::Standard, MatrixProduct::Hadamard] {
        let units = exhaustive_units(product, 2, 2, 16).map_err(err)?;
        ensure(units == vec![unit_matrix(product, 2, 2).map_err(err)?], || {
            format!("{product:?} units on M_2(Z/2): {units:?}")
        })?;
    }
    Ok("both rings, distinct units, witness holds".into())
}

/// Z/3, Z/4, Z/6 have the +-1 unit property and unital scales exactly +-1;
/// Z/5, Z/8, Z/12 lack it and the sweep finds unital scales beyond +-1.
fn pm1_hypothesis() -> Check {
    let err = |e: rigidity_core::Error| e.to_string();
    for n in [3u64, 4, 6] {
        let ring = BaseRing::integers_mod(n).map_err(err)?;
        ensure(has_pm1_unit_property(&ring).map_err(err)?, || format!("Z/{n} lacks the property"))?;
        let sweep = check_unital_iff_pm1(&ring).map_err(err)?;
        let unital: Vec<u64> = sweep.unital_scales().iter().map(|a| a.coords()[0]).collect();
        ensure(unital == vec![1, n - 1], || format!("Z/{n}: unital {unital:?}"))?;
    }
    for n in [5u64, 8, 12] {
        let ring = BaseRing::integers_mod(n).map_err(err)?;
        ensure(!has_pm1_unit_property(&ring).map_err(err)?, || format!("Z/{n} has the property"))?;
        ensure(check_unital_iff_pm1(&ring).is_err(), || format!("Z/{n}: precondition not enforced"))?;
        let sweep = unitality_sweep(&ring).map_err(err)?;
        let extra: Vec<u64> = sweep
            .entries
            .iter()
            .filter(|e| e.unit.is_some() && !e.is_plus_minus_one)
            .map(|e| e.scale.coords()[0])
            .collect();
        ensure(!extra.is_empty(), || format!("Z/{n}: no unital scale beyond +-1"))?;
        if n == 5 {
            ensure(extra.contains(&2), || format!("Z/5: extra unital scales {extra:?}"))?;
        }
    }
    Ok("hypothesis holds on 3,4,6 and is necessary on 5,8,12".into())
}

/// `enumerate --group 2,2` prints identical JSON with 1 and 4 workers.
fn parallel_determinism() -> Check {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_rigidity"))
            .args(["enumerate", "--group", "2,2", "--workers", workers])
            .env_remove("RIGIDITY_BUDGET")
            .output()
            .map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let four = run("4")?;
    ensure(one.status.success() && four.status.success(), || "command failed".into())?;
    ensure(one.stdout == four.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", one.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("1 scaled ring identities", scaled_ring_identities, Duration::from_secs(1)),
        ("2 unital iff a = +-1 on Z", unitality_of_scaled_integers, Duration::from_secs(5)),
        ("3 finite classification on Z/N", finite_classification, Duration::from_secs(5)),
        ("4 full-table oracle equivalence", oracle_equivalence, Duration::from_secs(10)),
        ("5 unitality census", unitality_census, Duration::from_secs(5)),
        ("6 matrix non-rigidity witness", matrix_non_rigidity, Duration::from_secs(2)),
        ("7 +-1 unit hypothesis", pm1_hypothesis, Duration::from_secs(2)),
        ("8 determinism across workers", parallel_determinism, Duration::from_secs(2)),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let (verdict, detail) = match &outcome {
            Ok(detail) if elapsed <= limit => ("PASS", detail.clone()),
            Ok(detail) => ("FAIL", format!("{detail}; took {elapsed:?}, limit {limit:?}")),
            Err(why) => ("FAIL", why.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("[{verdict}] criterion {name} ({} ms): {detail}", elapsed.as_millis());
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
