//! Subcommand implementations and their text/JSON renderings.

use anyhow::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use jrsp_core::{
    alice_basis, basis_unitarity_suite, bob_basis, check_correction_table, edge_case_params,
    enumerate_branches, random_params, run_protocol, MeasurementBasis, ProtocolTranscript,
    RunPolicy, TargetParams, VerificationReport, NORM_TOL,
};

use crate::{
    build_params, effective_tolerance, BasesArgs, Format, ResourcesArgs, RunArgs, VerifyArgs, Which,
};

// --- run -----------------------------------------------------------------

pub fn cmd_run(args: RunArgs) -> Result<u8> {
    let params = build_params(args.coeffs, args.phases, args.degrees)?;
    let tol = effective_tolerance(args.tolerance)?;
    let policy = match args.force {
        Some((m, n)) => RunPolicy::Forced(m, n),
        None => RunPolicy::Sample(args.seed.unwrap_or(0)),
    };
    let transcript = run_protocol(&params, policy)?;

    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&transcript)?),
        Format::Text => print_transcript(&transcript),
    }
    Ok(u8::from(transcript.final_fidelity < 1.0 - tol))
}

fn print_transcript(t: &ProtocolTranscript) {
    let [a, b, c, d] = t.params.coeffs();
    let th = t.params.thetas();
    println!("params:      a={a:.6} b={b:.6} c={c:.6} d={d:.6}");
    println!(
        "phases:      theta1={:.6} theta2={:.6} theta3={:.6}",
        th[0], th[1], th[2]
    );
    match t.seed {
        Some(seed) => println!("seed:        {seed}"),
        None => println!("seed:        (forced outcomes)"),
    }
    println!("alice:       m={}  p={:.6}", t.m, t.p_m);
    println!("bob:         n={}  p={:.6}", t.n, t.p_n_given_m);
    println!(
        "correction:  q3={} q6={}",
        pauli_product(&t.correction.ops_q3),
        pauli_product(&t.correction.ops_q6)
    );
    for msg in &t.messages {
        let to: Vec<String> = msg.receivers.iter().map(|r| format!("{r:?}")).collect();
        println!(
            "message:     {:?} -> {} : outcome {} ({} bits)",
            msg.sender,
            to.join(", "),
            msg.payload,
            msg.bit_cost
        );
    }
    println!(
        "ledger:      {} channel qubits + {} ancillas, {} classical bits, {} CNOTs",
        t.ledger.channel_qubits,
        t.ledger.ancilla_qubits,
        t.ledger.classical_bits,
        t.ledger.cnot_count
    );
    println!("fidelity:    {:.6}", t.final_fidelity);
}

fn pauli_product(ops: &[jrsp_core::Pauli]) -> String {
    ops.iter()
        .map(|p| format!("{p:?}"))
        .collect::<Vec<_>>()
        .join("")
}

// --- verify --------------------------------------------------------------

#[derive(Debug, Serialize)]
struct Failure {
    coeffs: [f64; 4],
    thetas: [f64; 3],
    check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u8>,
    value: f64,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    trials: u32,
    seed: Option<u64>,
    tolerance: f64,
    parameter_sets: usize,
    all_pass: bool,
    /// Worst-case success probability over all parameter sets.
    p_suc: f64,
    min_fidelity: f64,
    max_channel_residual: f64,
    max_l_residual: f64,
    max_basis_residual: f64,
    correction_table_all_pass: bool,
    failures: Vec<Failure>,
}

pub fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let tol = effective_tolerance(args.tolerance)?;
    let single = args.coeffs.is_some() || args.phases.is_some();

    let (params, trials, seed) = if single {
        let coeffs = args.coeffs.unwrap_or([1.0, 0.0, 0.0, 0.0]);
        let phases = args.phases.unwrap_or([0.0; 3]);
        (vec![build_params(coeffs, phases, args.degrees)?], 0, None)
    } else {
        let mut all = edge_case_params();
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        all.extend((0..args.trials).map(|_| random_params(&mut rng)));
        (all, args.trials, Some(args.seed))
    };

    let report = sweep(&params, trials, seed, tol)?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&report)?),
        Format::Text => print_sweep(&report),
    }
    Ok(u8::from(!report.all_pass))
}

fn sweep(params: &[TargetParams], trials: u32, seed: Option<u64>, tol: f64) -> Result<SweepReport> {
    let mut failures = Vec::new();
    let mut p_suc = f64::INFINITY;
    let mut min_fidelity = f64::INFINITY;
    let mut max_channel = 0.0f64;
    let mut max_l = 0.0f64;
    let mut max_basis = 0.0f64;
    let mut correction_table_all_pass = true;

    for p in params {
        let report: VerificationReport = enumerate_branches(p, tol)?;
        let fail = |check, m, n, value| Failure {
            coeffs: p.coeffs(),
            thetas: p.thetas(),
            check,
            m,
            n,
            value,
        };

        for b in &report.branches {
            if b.fidelity < 1.0 - tol {
                failures.push(fail("branch_fidelity", Some(b.m), Some(b.n), b.fidelity));
            }
            if (b.joint_prob - 0.0625).abs() > NORM_TOL {
                failures.push(fail(
                    "joint_probability",
                    Some(b.m),
                    Some(b.n),
                    b.joint_prob,
                ));
            }
        }
        if (report.p_suc - 1.0).abs() > NORM_TOL {
            failures.push(fail("p_suc", None, None, report.p_suc));
        }
        if report.channel_residual >= NORM_TOL {
            failures.push(fail(
                "channel_decomposition",
                None,
                None,
                report.channel_residual,
            ));
        }
        for (m, &r) in report.l_residuals.iter().enumerate() {
            if r >= NORM_TOL {
                failures.push(fail("l_decomposition", Some(m as u8), None, r));
            }
        }
        if !report.correction_table_pass {
            correction_table_all_pass = false;
            for row in check_correction_table(p, tol)?.rows {
                let worst = row.collapse_fidelity.min(row.correction_fidelity);
                if worst < 1.0 - tol {
                    failures.push(fail("correction_table", Some(row.m), Some(row.n), worst));
                }
            }
        }
        let basis_residual = basis_unitarity_suite(p);
        if basis_residual >= NORM_TOL {
            failures.push(fail("basis_unitarity", None, None, basis_residual));
        }

        p_suc = p_suc.min(report.p_suc);
        min_fidelity = min_fidelity.min(report.min_fidelity);
        max_channel = max_channel.max(report.channel_residual);
        max_l = report.l_residuals.iter().fold(max_l, |acc, &r| acc.max(r));
        max_basis = max_basis.max(basis_residual);
    }

    Ok(SweepReport {
        trials,
        seed,
        tolerance: tol,
        parameter_sets: params.len(),
        all_pass: failures.is_empty(),
        p_suc,
        min_fidelity,
        max_channel_residual: max_channel,
        max_l_residual: max_l,
        max_basis_residual: max_basis,
        correction_table_all_pass,
        failures,
    })
}

fn print_sweep(report: &SweepReport) {
    match report.seed {
        Some(seed) => println!(
            "parameter sets: {} (5 edge cases + {} random draws, seed {seed})",
            report.parameter_sets, report.trials
        ),
        None => println!(
            "parameter sets: {} (single-parameter audit)",
            report.parameter_sets
        ),
    }
    println!("tolerance:      {:e}", report.tolerance);
    println!("p_suc (worst):  {}", report.p_suc);
    println!("min fidelity:   {:.15}", report.min_fidelity);
    println!(
        "max channel decomposition residual: {:.3e}",
        report.max_channel_residual
    );
    println!(
        "max residual-state decomposition residual: {:.3e}",
        report.max_l_residual
    );
    println!(
        "max basis unitarity residual: {:.3e}",
        report.max_basis_residual
    );
    println!(
        "correction table audit: {}",
        if report.correction_table_all_pass {
            "all rows pass"
        } else {
            "FAILED"
        }
    );
    for f in &report.failures {
        println!(
            "failure: check={} coeffs={:?} thetas={:?} m={:?} n={:?} value={:?}",
            f.check, f.coeffs, f.thetas, f.m, f.n, f.value
        );
    }
    println!("result: {}", if report.all_pass { "PASS" } else { "FAIL" });
}

// --- bases ---------------------------------------------------------------

pub fn cmd_bases(args: BasesArgs) -> Result<u8> {
    let params = build_params(args.coeffs, args.phases, args.degrees)?;
    let basis: MeasurementBasis = match args.which {
        Which::Alice => {
            if args.m.is_some() {
                anyhow::bail!("--m selects Bob's basis; it does not apply to --which alice");
            }
            alice_basis(&params)
        }
        Which::Bob => {
            let m = args
                .m
                .ok_or_else(|| anyhow::anyhow!("--which bob requires --m <0..3>"))?;
            bob_basis(m, &params)?
        }
    };

    match args.format {
        Format::Json => {
            let nested: Vec<Vec<[f64; 2]>> = basis
                .rows()
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect();
            println!("{}", serde_json::to_string(&nested)?);
        }
        Format::Text => {
            // +0.0 rather than -0.0 in printed entries.
            let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
            for row in basis.rows() {
                let line: Vec<String> = row
                    .iter()
                    .map(|z| format!("{:.6}{:+.6}i", clean(z.re), clean(z.im)))
                    .collect();
                println!("{}", line.join("  "));
            }
        }
    }
    Ok(0)
}

// --- resources -----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
enum SuccessProbability {
    #[serde(rename = "<1")]
    LessThanOne,
    #[serde(rename = "=1")]
    One,
}

/// One row of the resource comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct SchemeResources {
    name: &'static str,
    qubits_total: u32,
    qubits_channel: u32,
    qubits_ancilla: u32,
    classical_bits: u32,
    cnot_total: u32,
    cnot_sender: u32,
    cnot_receiver: u32,
    success_probability: SuccessProbability,
}

impl SchemeResources {
    #[allow(clippy::too_many_arguments)]
    fn new(
        name: &'static str,
        qubits_channel: u32,
        qubits_ancilla: u32,
        classical_bits: u32,
        cnot_sender: u32,
        cnot_receiver: u32,
        success_probability: SuccessProbability,
    ) -> Self {
        Self {
            name,
            qubits_total: qubits_channel + qubits_ancilla,
            qubits_channel,
            qubits_ancilla,
            classical_bits,
            cnot_total: cnot_sender + cnot_receiver,
            cnot_sender,
            cnot_receiver,
            success_probability,
        }
    }

    /// The data cells in the table's compact notation, e.g.
    /// `8(6+2) | 6 | 2(0+2) | =1`.
    pub fn row_string(&self) -> String {
        format!(
            "{}({}+{}) | {} | {}({}+{}) | {}",
            self.qubits_total,
            self.qubits_channel,
            self.qubits_ancilla,
            self.classical_bits,
            self.cnot_total,
            self.cnot_sender,
            self.cnot_receiver,
            match self.success_probability {
                SuccessProbability::LessThanOne => "<1",
                SuccessProbability::One => "=1",
            }
        )
    }
}

/// Published resource counts of the five schemes this one is compared
/// against, plus our row derived live from an actual run's ledger.
pub fn resource_table() -> Result<Vec<SchemeResources>> {
    use SuccessProbability::{LessThanOne, One};
    let mut rows = vec![
        SchemeResources::new("ZHM11", 12, 0, 8, 0, 0, LessThanOne),
        SchemeResources::new("ABD11", 6, 2, 4, 0, 2, LessThanOne),
        SchemeResources::new("WY12", 8, 1, 4, 6, 0, LessThanOne),
        SchemeResources::new("WY13", 6, 4, 4, 0, 4, LessThanOne),
        SchemeResources::new("H13", 6, 3, 4, 2, 2, LessThanOne),
    ];

    let params = TargetParams::new(0.5, 0.5, 0.5, 0.5, [0.0; 3])?;
    let ledger = run_protocol(&params, RunPolicy::Forced(0, 0))?.ledger;
    rows.push(SchemeResources::new(
        "Our scheme",
        ledger.channel_qubits,
        ledger.ancilla_qubits,
        ledger.classical_bits,
        0,
        ledger.cnot_count,
        One,
    ));
    Ok(rows)
}

pub fn cmd_resources(args: ResourcesArgs) -> Result<u8> {
    let rows = resource_table()?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&rows)?),
        Format::Text => {
            println!(
                "scheme     | qubits (channel+ancilla) | bits | CNOT (sender+receiver) | P_suc"
            );
            for row in &rows {
                println!("{:<10} | {}", row.name, row.row_string());
            }
        }
    }
    Ok(0)
}
