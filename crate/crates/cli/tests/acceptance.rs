//! Acceptance suite: one test per claimed guarantee, each over the full
//! parameter sweep (5 deterministic edge cases + 1000 seeded random
//! draws). Every test prints a `criterion N: PASS` line on success.
//!
//! Run with `cargo test -p jrsp-cli --test acceptance` (add
//! `-- --nocapture` to see the lines).

use std::process::Command;
use std::time::{Duration, Instant};

use once_cell::sync::Lazy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jrsp_core::{
    basis_unitarity_suite, channel_state, check_correction_table, d_state, edge_case_params,
    enumerate_branches, intermediate_target, random_params, run_protocol, step1_alice, step2_bob,
    step3_correct, MeasurePolicy, Pauli, RunPolicy, TargetParams, VerificationReport,
};

/// Fidelity acceptance tolerance (global phase ignored).
const FID_TOL: f64 = 1e-10;
/// Tolerance for quantities that are exact up to float rounding.
const EXACT_TOL: f64 = 1e-12;

const SWEEP_SEED: u64 = 7;
const SWEEP_TRIALS: usize = 1000;

static SWEEP_PARAMS: Lazy<Vec<TargetParams>> = Lazy::new(|| {
    let mut all = edge_case_params();
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    all.extend((0..SWEEP_TRIALS).map(|_| random_params(&mut rng)));
    all
});

static REPORTS: Lazy<(Vec<VerificationReport>, Duration)> = Lazy::new(|| {
    let start = Instant::now();
    let reports = SWEEP_PARAMS
        .iter()
        .map(|p| enumerate_branches(p, FID_TOL).expect("branch enumeration"))
        .collect();
    (reports, start.elapsed())
});

#[test]
fn criterion_1_unit_success_probability() {
    let (reports, elapsed) = &*REPORTS;
    assert_eq!(reports.len(), 1005);
    for report in reports {
        assert!(
            (report.p_suc - 1.0).abs() <= EXACT_TOL,
            "p_suc = {} for {:?}",
            report.p_suc,
            report.params
        );
        for b in &report.branches {
            assert!(
                b.fidelity >= 1.0 - FID_TOL,
                "branch ({},{}) fidelity {} for {:?}",
                b.m,
                b.n,
                b.fidelity,
                report.params
            );
        }
    }
    println!(
        "criterion 1 (unit success probability, 1005 parameter sets, 16 branches each): PASS in {elapsed:.2?}"
    );
}

#[test]
fn criterion_2_outcome_uniformity() {
    for p in SWEEP_PARAMS.iter() {
        for m in 0..4u8 {
            for n in 0..4u8 {
                let t = run_protocol(p, RunPolicy::Forced(m, n)).unwrap();
                assert!(
                    (t.p_m - 0.25).abs() <= EXACT_TOL,
                    "p_m = {} at ({m},{n}) for {p:?}",
                    t.p_m
                );
                assert!(
                    (t.p_n_given_m - 0.25).abs() <= EXACT_TOL,
                    "p_n|m = {} at ({m},{n}) for {p:?}",
                    t.p_n_given_m
                );
            }
        }
    }
    println!("criterion 2 (outcome probabilities uniform at 1/4): PASS");
}

#[test]
fn criterion_3_channel_decomposition() {
    let (reports, _) = &*REPORTS;
    for report in reports {
        assert!(
            report.channel_residual < EXACT_TOL,
            "channel residual {} for {:?}",
            report.channel_residual,
            report.params
        );
    }
    println!("criterion 3 (channel decomposition residual < 1e-12): PASS");
}

#[test]
fn criterion_4_residual_state_decomposition() {
    let (reports, _) = &*REPORTS;
    for report in reports {
        for (m, &r) in report.l_residuals.iter().enumerate() {
            assert!(r < EXACT_TOL, "L_{m} residual {r} for {:?}", report.params);
        }
    }
    println!("criterion 4 (residual-state decomposition residual < 1e-12): PASS");
}

#[test]
fn criterion_5_table_audit() {
    let mut checks = 0usize;
    for p in SWEEP_PARAMS.iter() {
        let audit = check_correction_table(p, FID_TOL).unwrap();
        assert!(audit.pass, "table audit failed for {p:?}");
        for row in &audit.rows {
            assert!(row.collapse_fidelity >= 1.0 - FID_TOL);
            assert!(row.correction_fidelity >= 1.0 - FID_TOL);
            checks += 2;
        }
    }
    assert_eq!(checks, 32 * 1005);
    println!("criterion 5 (collapse/correction table audit, {checks} checks): PASS");
}

#[test]
fn criterion_6_worked_example_m1() {
    use Pauli::{I, X, Z};
    let expected_ops: [(&[Pauli], &[Pauli]); 4] =
        [(&[I], &[Z, X]), (&[I], &[X]), (&[Z], &[X]), (&[Z], &[Z, X])];
    for p in SWEEP_PARAMS.iter() {
        let channel = channel_state();
        let alice = step1_alice(&channel, p, MeasurePolicy::Forced(1)).unwrap();
        let target = intermediate_target(p);
        for n in 0..4u8 {
            let bob = step2_bob(&alice.post, 1, p, MeasurePolicy::Forced(n)).unwrap();
            let closed = d_state(1, n, p).unwrap();
            assert!(
                bob.post.fidelity(&closed).unwrap() >= 1.0 - FID_TOL,
                "collapse mismatch at n={n} for {p:?}"
            );
            let corrected = step3_correct(&bob.post, 1, n).unwrap();
            assert!(
                corrected.fidelity(&target).unwrap() >= 1.0 - FID_TOL,
                "correction failed at n={n} for {p:?}"
            );
            let r = jrsp_core::correction(1, n).unwrap();
            assert_eq!(r.ops_q3.as_slice(), expected_ops[n as usize].0);
            assert_eq!(r.ops_q6.as_slice(), expected_ops[n as usize].1);
        }
    }
    println!("criterion 6 (worked m=1 branches and corrections): PASS");
}

#[test]
fn criterion_7_resource_ledger() {
    // Ledger of every completed transcript, forced and sampled.
    for p in edge_case_params() {
        for m in 0..4u8 {
            for n in 0..4u8 {
                let t = run_protocol(&p, RunPolicy::Forced(m, n)).unwrap();
                assert_eq!(
                    (
                        t.ledger.channel_qubits,
                        t.ledger.ancilla_qubits,
                        t.ledger.classical_bits,
                        t.ledger.cnot_count,
                    ),
                    (6, 2, 6, 2)
                );
            }
        }
        for seed in 0..8u64 {
            let t = run_protocol(&p, RunPolicy::Sample(seed)).unwrap();
            assert_eq!(t.ledger.channel_qubits + t.ledger.ancilla_qubits, 8);
            assert_eq!(t.ledger.classical_bits, 6);
            assert_eq!(t.ledger.cnot_count, 2);
        }
    }

    // The CLI's live row must equal the embedded expected row.
    let out = Command::new(env!("CARGO_BIN_EXE_jrsp"))
        .arg("resources")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l == "Our scheme | 8(6+2) | 6 | 2(0+2) | =1"),
        "resources output:\n{text}"
    );
    println!("criterion 7 (resource ledger 8(6+2)/6/2(0+2)): PASS");
}

#[test]
fn criterion_8_basis_unitarity() {
    for p in SWEEP_PARAMS.iter() {
        let residual = basis_unitarity_suite(p);
        assert!(
            residual < EXACT_TOL,
            "unitarity residual {residual} for {p:?}"
        );
    }
    println!("criterion 8 (basis unitarity over 1005 parameter sets): PASS");
}

#[test]
fn criterion_9_byte_identical_verification() {
    let invoke = || {
        Command::new(env!("CARGO_BIN_EXE_jrsp"))
            .args([
                "verify", "--trials", "100", "--seed", "7", "--format", "json",
            ])
            .env_remove("JRSP_TOL")
            .output()
            .unwrap()
    };
    let a = invoke();
    let b = invoke();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(
        a.stdout, b.stdout,
        "verification output differs between runs"
    );
    assert!(!a.stdout.is_empty());
    println!("criterion 9 (byte-identical seeded verification): PASS");
}
