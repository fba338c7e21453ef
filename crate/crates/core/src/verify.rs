//! Exhaustive and randomized verification of the protocol's claims:
//! every forced branch succeeds, the channel and residual-state
//! decompositions hold to floating-point accuracy, and the full
//! collapse/correction table checks out against the measurement engine.
//!
//! The closed-form constructors are never consulted by the measurement
//! engine, so the brute-force comparisons here are genuine cross-checks
//! of two independent routes.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, TAU};

use crate::bases::{
    alice_basis, bob_basis, channel_state, correction, d_state, intermediate_target, l_state,
    PauliCorrection, TargetParams,
};
use crate::error::Result;
use crate::protocol::{run_protocol, RunPolicy};
use crate::statevec::{MeasurePolicy, StateVector};

/// One forced protocol branch: outcome pair, its joint probability,
/// the correction used, and the achieved fidelity.
#[derive(Debug, Clone, Serialize)]
pub struct BranchResult {
    pub m: u8,
    pub n: u8,
    pub joint_prob: f64,
    pub correction: PauliCorrection,
    pub fidelity: f64,
}

/// Per-row outcome of the collapse/correction table audit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorrectionTableRow {
    pub m: u8,
    pub n: u8,
    /// Fidelity of the brute-force two-stage collapse against the
    /// closed-form collapse state.
    pub collapse_fidelity: f64,
    /// Fidelity of correction(closed form) against the intermediate
    /// target.
    pub correction_fidelity: f64,
}

/// Result of auditing all 16 table rows (32 fidelity checks).
#[derive(Debug, Clone, Serialize)]
pub struct CorrectionTableAudit {
    pub rows: Vec<CorrectionTableRow>,
    pub pass: bool,
}

/// Full verification evidence for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub params: TargetParams,
    pub branches: Vec<BranchResult>,
    pub min_fidelity: f64,
    pub channel_residual: f64,
    pub l_residuals: [f64; 4],
    pub correction_table_pass: bool,
    /// Total probability of branches that reach the target within the
    /// tolerance; the protocol's claim is that this is exactly 1.
    pub p_suc: f64,
}

/// Runs all 16 forced branches plus the decomposition and table checks.
pub fn enumerate_branches(p: &TargetParams, tol: f64) -> Result<VerificationReport> {
    let mut branches = Vec::with_capacity(16);
    let mut min_fidelity = f64::INFINITY;
    let mut p_suc = 0.0;
    for m in 0..4u8 {
        for n in 0..4u8 {
            let t = run_protocol(p, RunPolicy::Forced(m, n))?;
            let joint_prob = t.p_m * t.p_n_given_m;
            if t.final_fidelity >= 1.0 - tol {
                p_suc += joint_prob;
            }
            min_fidelity = min_fidelity.min(t.final_fidelity);
            branches.push(BranchResult {
                m,
                n,
                joint_prob,
                correction: t.correction,
                fidelity: t.final_fidelity,
            });
        }
    }
    let mut l_residuals = [0.0; 4];
    for m in 0..4u8 {
        l_residuals[m as usize] = check_l_decomposition(m, p)?;
    }
    Ok(VerificationReport {
        params: *p,
        branches,
        min_fidelity,
        channel_residual: check_channel_decomposition(p)?,
        l_residuals,
        correction_table_pass: check_correction_table(p, tol)?.pass,
        p_suc,
    })
}

fn max_amplitude_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Rebuilds the channel as ½ Σ_m (Alice's basis row m on qubits 1,4)
/// ⊗ (residual state m on qubits 2,5,3,6) and returns the max-abs
/// amplitude difference from the channel state.
pub fn check_channel_decomposition(p: &TargetParams) -> Result<f64> {
    let alice = alice_basis(p);
    let mut sum = vec![Complex64::ZERO; 64];
    for m in 0..4u8 {
        let u = StateVector::new(vec![1, 4], alice.row(m as usize).to_vec())?;
        let piece = u.tensor(&l_state(m, p)?)?.permute(&[1, 2, 3, 4, 5, 6])?;
        for (slot, a) in sum.iter_mut().zip(piece.amplitudes()) {
            *slot += 0.5 * a;
        }
    }
    Ok(max_amplitude_diff(&sum, channel_state().amplitudes()))
}

/// Rebuilds residual state m as ½ Σ_n (Bob's basis row n on qubits
/// 2,5) ⊗ (collapse state (m,n) on qubits 3,6) and returns the max-abs
/// amplitude difference from the closed form.
pub fn check_l_decomposition(m: u8, p: &TargetParams) -> Result<f64> {
    let bob = bob_basis(m, p)?;
    let mut sum = vec![Complex64::ZERO; 16];
    for n in 0..4u8 {
        let v = StateVector::new(vec![2, 5], bob.row(n as usize).to_vec())?;
        let piece = v.tensor(&d_state(m, n, p)?)?.permute(&[2, 5, 3, 6])?;
        for (slot, a) in sum.iter_mut().zip(piece.amplitudes()) {
            *slot += 0.5 * a;
        }
    }
    Ok(max_amplitude_diff(&sum, l_state(m, p)?.amplitudes()))
}

/// Audits every (m, n) row two ways: the brute-force collapse must
/// match the closed-form state, and the correction must map the closed
/// form to the intermediate target.
pub fn check_correction_table(p: &TargetParams, tol: f64) -> Result<CorrectionTableAudit> {
    let channel = channel_state();
    let alice = alice_basis(p);
    let target = intermediate_target(p);
    let mut rows = Vec::with_capacity(16);
    let mut pass = true;
    for m in 0..4u8 {
        let after_alice = channel
            .measure_pair((1, 4), &alice, MeasurePolicy::Forced(m))?
            .post;
        let bob = bob_basis(m, p)?;
        for n in 0..4u8 {
            let collapsed = after_alice
                .measure_pair((2, 5), &bob, MeasurePolicy::Forced(n))?
                .post;
            let closed = d_state(m, n, p)?;
            let collapse_fidelity = collapsed.fidelity(&closed)?;
            let correction_fidelity = correction(m, n)?.apply(&closed)?.fidelity(&target)?;
            pass &= collapse_fidelity >= 1.0 - tol && correction_fidelity >= 1.0 - tol;
            rows.push(CorrectionTableRow {
                m,
                n,
                collapse_fidelity,
                correction_fidelity,
            });
        }
    }
    Ok(CorrectionTableAudit { rows, pass })
}

/// Largest |B·B† − I| entry over Alice's basis and all four of Bob's.
pub fn basis_unitarity_suite(p: &TargetParams) -> f64 {
    let mut max = alice_basis(p).unitarity_residual();
    for m in 0..4u8 {
        let residual = bob_basis(m, p).expect("m in range").unitarity_residual();
        max = max.max(residual);
    }
    max
}

/// Draws coefficients as a normalized absolute Gaussian 4-vector and
/// phases uniform on [0, 2π).
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> TargetParams {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| {
            let g: f64 = rng.sample(StandardNormal);
            g.abs()
        });
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let theta: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
        return TargetParams::new(v[0] / norm, v[1] / norm, v[2] / norm, v[3] / norm, theta)
            .expect("normalized draw");
    }
}

/// Deterministic boundary cases: the four one-hot coefficient vectors
/// and the balanced vector, with nontrivial phases.
pub fn edge_case_params() -> Vec<TargetParams> {
    let theta = [FRAC_PI_3, FRAC_PI_4, PI / 5.0];
    let mut cases: Vec<TargetParams> = (0..4)
        .map(|hot| {
            let mut v = [0.0; 4];
            v[hot] = 1.0;
            TargetParams::new(v[0], v[1], v[2], v[3], theta).expect("one-hot is normalized")
        })
        .collect();
    cases.push(TargetParams::new(0.5, 0.5, 0.5, 0.5, theta).expect("balanced is normalized"));
    cases
}
