//! Acceptance suite: every exit criterion, checked exactly, one line per criterion.
//!
//! Run with `cargo test -p circnil --test acceptance -- --nocapture` to see the report.

use std::process::Command;
use std::time::Instant;

use circnil::circring::{geom_sum, shift_power, CirculantElem};
use circnil::cli::{build_scan, ScanCell};
use circnil::congruence::{self, ENUMERATION_BUDGET};
use circnil::nilpotence::{
    annihilation_check, decide_zm, decide_zm_via_primes, decide_zp, index_expansion,
    index_formula, witness_nonvanishing,
};
use circnil::numutil::gcd;
use circnil::oracle::{frobenius_check, geometric_identity_check, min_nilpotent_index, zm_exact_index};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

fn report(id: &str, name: &str, failures: &[String], started: Instant) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {id} {name} ({:.2?}){}",
        started.elapsed(),
        if failures.is_empty() {
            String::new()
        } else {
            format!(": {} failures, first: {}", failures.len(), failures[0])
        }
    );
    assert!(failures.is_empty(), "{id} failed: {failures:?}");
}

#[test]
fn ac1_theorem1_exactness_grid() {
    let started = Instant::now();
    let cells: Vec<(u64, u64, u64)> = [2u64, 3, 5, 7]
        .iter()
        .flat_map(|&p| (1..=48u64).flat_map(move |n| (1..=48u64).map(move |m| (p, n, m))))
        .collect();
    assert_eq!(cells.len(), 9216);
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(p, n, m)| {
            let v = decide_zp(n, m, p).unwrap();
            let t = geom_sum(n as usize, m, p).unwrap();
            let oracle = min_nilpotent_index(&t, n);
            let ok = oracle.is_some() == v.nilpotent
                && oracle == v.index
                && v.index.is_none_or(|k| k <= n);
            (!ok).then(|| format!("p={p} n={n} m={m}: formula {:?}, oracle {oracle:?}", v.index))
        })
        .collect();
    report("AC1", "Theorem 1 verdict and index on 4x48x48 grid", &failures, started);
}

#[test]
fn ac2_corollary1_grid() {
    let started = Instant::now();
    let cells: Vec<(u64, u64)> = (2..=36u64)
        .flat_map(|m| (1..=36u64).map(move |n| (n, m)))
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(n, m)| {
            let direct = decide_zm(n, m).unwrap();
            let via = decide_zm_via_primes(n, m).unwrap();
            let oracle = zm_exact_index(n, m).unwrap();
            let ok = direct.nilpotent == via.nilpotent
                && oracle.is_some() == direct.nilpotent
                && oracle.is_none_or(|k| k <= n);
            (!ok).then(|| {
                format!(
                    "n={n} m={m}: direct {} via {} oracle {oracle:?}",
                    direct.nilpotent, via.nilpotent
                )
            })
        })
        .collect();
    report("AC2", "Corollary 1 three-way agreement, index <= n", &failures, started);
}

#[test]
fn ac3_lemma1_triple_agreement() {
    let started = Instant::now();
    let mut instances = Vec::new();
    for d in [2u64, 3, 5] {
        for m_star in 1..=12u64 {
            if gcd(d, m_star) != 1 {
                continue;
            }
            for n_star in (1..=m_star).filter(|k| m_star % k == 0 && gcd(d, *k) == 1) {
                for q in 1..=3u32 {
                    let inst = congruence::validate(d, m_star, n_star, q).unwrap();
                    if inst.tuple_count().unwrap() <= ENUMERATION_BUDGET as u128 {
                        instances.push(inst);
                    }
                }
            }
        }
    }
    assert!(instances.len() > 100);
    let failures: Vec<String> = instances
        .par_iter()
        .flat_map_iter(|inst| {
            let closed = congruence::count_closed_form(inst).unwrap();
            let hist = congruence::enumerate_all_targets(inst, ENUMERATION_BUDGET).unwrap();
            let mut bad = Vec::new();
            if hist.iter().sum::<u64>() as u128 != inst.tuple_count().unwrap() {
                bad.push(format!("{inst:?}: total mass"));
            }
            for c in 0..inst.n() {
                let t = inst.with_target(c as i64);
                let rec = congruence::count_recursive(&t).unwrap();
                let en = hist[c as usize];
                if !(closed == rec && rec == en) {
                    bad.push(format!("{inst:?} c={c}: closed {closed} rec {rec} enum {en}"));
                }
            }
            // spot-check the single-target enumeration against the one-pass histogram
            for c in [0, inst.n() - 1] {
                let t = inst.with_target(c as i64);
                if congruence::count_enumerate(&t).unwrap() != hist[c as usize] {
                    bad.push(format!("{inst:?} c={c}: single-target enumeration"));
                }
            }
            bad
        })
        .collect();
    report("AC3", "Lemma 1 closed form = recursion = enumeration", &failures, started);
}

#[test]
fn ac4_proof_identities() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for b in 1..=4u32 {
            for a in b..=12 {
                let e = index_expansion(a, b, p).unwrap();
                let f = index_formula(a, b, p).unwrap();
                if e.value != f {
                    failures.push(format!("expansion p={p} a={a} b={b}: {} vs {f}", e.value));
                }
            }
        }
    }
    let cells: Vec<(u64, u64, u64)> = [2u64, 3, 5, 7]
        .iter()
        .flat_map(|&p| (1..=48u64).flat_map(move |n| (1..=48u64).map(move |m| (p, n, m))))
        .collect();
    let witness_failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(p, n, m)| {
            let v = decide_zp(n, m, p).unwrap();
            if !v.nilpotent || v.a < v.b {
                return None;
            }
            let w = witness_nonvanishing(n, m, p).unwrap();
            let t = geom_sum(n as usize, m, p).unwrap();
            let ok = w.matches
                && !w.power.is_zero()
                && annihilation_check(n, m, p).unwrap()
                && w.power.mul(&t).unwrap().is_zero();
            (!ok).then(|| format!("witness p={p} n={n} m={m}"))
        })
        .collect();
    let checked = cells
        .iter()
        .filter(|&&(p, n, m)| {
            let v = decide_zp(n, m, p).unwrap();
            v.nilpotent && v.a >= v.b
        })
        .count();
    println!("      AC4 witness cells checked: {checked}");
    assert!(checked > 0);
    failures.extend(witness_failures);
    report("AC4", "index expansion, witness, annihilation", &failures, started);
}

#[test]
fn ac5_frobenius_and_geometric_identity() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let n = rng.gen_range(1..=16usize);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let k = rng.gen_range(1..=2u32);
        let mut elem = || CirculantElem::from_coeffs(p, (0..n).map(|_| rng.gen_range(0..p)).collect()).unwrap();
        let a = elem();
        let b = elem();
        if !frobenius_check(&a, &b, k).unwrap() {
            failures.push(format!("frobenius trial {trial}: n={n} p={p} k={k}"));
        }
    }
    for trial in 0..1000 {
        let n = rng.gen_range(1..=24u64);
        let m = rng.gen_range(1..=24u64);
        let q = rng.gen_range(2..=12u64);
        if !geometric_identity_check(n, m, q).unwrap() {
            failures.push(format!("geometric trial {trial}: n={n} m={m} q={q}"));
        }
    }
    // ring axioms on random triples
    for trial in 0..300 {
        let n = rng.gen_range(1..=32usize);
        let q = rng.gen_range(2..=16u64);
        let mut elem = || CirculantElem::from_coeffs(q, (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap();
        let (a, b, c) = (elem(), elem(), elem());
        let one = CirculantElem::identity(n, q).unwrap();
        let zero = CirculantElem::zero(n, q).unwrap();
        let ok = a.mul(&b).unwrap() == b.mul(&a).unwrap()
            && a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap()
            && a.mul(&b.add(&c).unwrap()).unwrap()
                == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            && a.mul(&one).unwrap() == a
            && a.add(&zero).unwrap() == a
            && a.mul(&zero).unwrap().is_zero()
            && shift_power(n, q, n as u64).unwrap() == one;
        if !ok {
            failures.push(format!("ring axioms trial {trial}: n={n} q={q}"));
        }
    }
    report("AC5", "Frobenius, geometric identity, ring axioms", &failures, started);
}

#[test]
fn ac6_cli_contract() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let code = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_circnil"))
            .args(args)
            .output()
            .expect("spawn circnil")
            .status
            .code()
            .unwrap_or(-1)
    };

    // in-process scan of the reference grid
    let r = build_scan(Some(2), 16, 16, true, None).unwrap();
    if r.cells.len() != 256 || !r.summary.disagreements.is_empty() || r.summary.agreements != 256 {
        failures.push(format!("scan p=2 16x16: {:?}", r.summary));
    }
    if !r.cells.iter().all(|c| matches!(c, ScanCell::Zp(_))) {
        failures.push("scan cell kind".into());
    }
    let expect = [
        (vec!["scan", "--p", "2", "--n-max", "16", "--m-max", "16", "--verify"], 0),
        (vec!["decide", "--n", "8", "--m", "2", "--p", "4"], 3),
        (vec!["scan", "--p", "3", "--n-max", "0"], 2),
        (vec!["lemma1", "--d", "2", "--m-star", "4", "--n-star", "1", "--q", "1"], 3),
        (vec!["identities", "--n", "4", "--m", "6", "--p", "3"], 3),
    ];
    for (args, want) in expect {
        let got = code(&args);
        if got != want {
            failures.push(format!("{args:?}: exit {got}, want {want}"));
        }
    }
    // golden files are pinned in tests/cli.rs
    report("AC6", "CLI exit-code contract and reference scan", &failures, started);
}
