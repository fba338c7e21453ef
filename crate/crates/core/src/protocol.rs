//! The four-step preparation protocol across three parties.
//!
//! Alice measures her channel qubits (1, 4) in the real-coefficient
//! basis and broadcasts the outcome m; Bob measures (2, 5) in the phase
//! basis selected by m and sends n to Charlie; Charlie applies the Pauli
//! correction for (m, n) to his qubits (3, 6) and then copies their
//! computational labels onto two fresh ancillas with CNOTs, ending with
//! the four-qubit target on register (3, 7, 6, 8).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bases::{
    alice_basis, bob_basis, channel_state, correction, target_state, PauliCorrection, TargetParams,
};
use crate::error::Result;
use crate::statevec::{MeasurePolicy, StateVector};

/// CNOTs consumed by the ancilla expansion (step 4).
const EXPANSION_CNOTS: u32 = 2;

/// Protocol participant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

/// One classical transmission of a two-bit measurement outcome.
/// Sending an outcome to k receivers costs 2k bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMessage {
    #[serde(rename = "from")]
    pub sender: Party,
    #[serde(rename = "to")]
    pub receivers: Vec<Party>,
    pub payload: u8,
    #[serde(rename = "bits")]
    pub bit_cost: u32,
}

impl ClassicalMessage {
    pub fn new(sender: Party, receivers: Vec<Party>, payload: u8) -> Self {
        let bit_cost = 2 * receivers.len() as u32;
        Self {
            sender,
            receivers,
            payload,
            bit_cost,
        }
    }
}

/// Resources consumed by one protocol execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceLedger {
    pub channel_qubits: u32,
    pub ancilla_qubits: u32,
    pub classical_bits: u32,
    pub cnot_count: u32,
}

/// Intermediate states of one execution, snapshotted per step.
#[derive(Debug, Clone)]
pub struct TranscriptStates {
    pub channel: StateVector,
    pub after_alice: StateVector,
    pub after_bob: StateVector,
    pub after_correction: StateVector,
    pub final_state: StateVector,
}

/// Complete record of one protocol execution. Serializes to the stable
/// JSON shape consumed by the CLI (state snapshots stay in memory).
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolTranscript {
    pub params: TargetParams,
    pub m: u8,
    pub n: u8,
    pub p_m: f64,
    pub p_n_given_m: f64,
    pub correction: PauliCorrection,
    pub final_fidelity: f64,
    pub ledger: ResourceLedger,
    pub messages: Vec<ClassicalMessage>,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub states: TranscriptStates,
}

/// How the two measurement outcomes are chosen for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunPolicy {
    /// Sample both outcomes from their exact distributions; the seed
    /// fully determines the run and is recorded in the transcript.
    Sample(u64),
    /// Force the outcome pair (m, n).
    Forced(u8, u8),
}

/// Result of a sender's measurement step: the outcome, its exact
/// probability, the post-measurement register, and the classical
/// message dispatched.
#[derive(Debug, Clone)]
pub struct SenderStep {
    pub outcome: u8,
    pub probability: f64,
    pub post: StateVector,
    pub message: ClassicalMessage,
}

/// Step 1: Alice measures qubits (1, 4) in her real-coefficient basis
/// and announces the outcome to Bob and Charlie (4 classical bits).
pub fn step1_alice(
    state: &StateVector,
    p: &TargetParams,
    policy: MeasurePolicy,
) -> Result<SenderStep> {
    let measurement = state.measure_pair((1, 4), &alice_basis(p), policy)?;
    let message = ClassicalMessage::new(
        Party::Alice,
        vec![Party::Bob, Party::Charlie],
        measurement.outcome,
    );
    Ok(SenderStep {
        outcome: measurement.outcome,
        probability: measurement.probability,
        post: measurement.post,
        message,
    })
}

/// Step 2: Bob measures qubits (2, 5) in the phase basis selected by
/// Alice's announced outcome and sends n to Charlie (2 bits).
pub fn step2_bob(
    residual: &StateVector,
    m: u8,
    p: &TargetParams,
    policy: MeasurePolicy,
) -> Result<SenderStep> {
    let measurement = residual.measure_pair((2, 5), &bob_basis(m, p)?, policy)?;
    let message = ClassicalMessage::new(Party::Bob, vec![Party::Charlie], measurement.outcome);
    Ok(SenderStep {
        outcome: measurement.outcome,
        probability: measurement.probability,
        post: measurement.post,
        message,
    })
}

/// Step 3: Charlie applies the Pauli correction for (m, n) to his
/// qubits (3, 6).
pub fn step3_correct(collapsed: &StateVector, m: u8, n: u8) -> Result<StateVector> {
    correction(m, n)?.apply(collapsed)
}

/// Step 4: Charlie adjoins ancillas |00⟩ on (7, 8), applies CNOT(3→7)
/// and CNOT(6→8), and reorders the register to (3, 7, 6, 8).
pub fn step4_expand(t: &StateVector) -> Result<StateVector> {
    let expanded = t
        .tensor(&StateVector::basis_state(vec![7, 8], 0)?)?
        .apply_cnot(3, 7)?
        .apply_cnot(6, 8)?;
    expanded.permute(&[3, 7, 6, 8])
}

/// Runs the full protocol and records outcomes, probabilities,
/// messages, state snapshots, and resource consumption.
pub fn run_protocol(p: &TargetParams, policy: RunPolicy) -> Result<ProtocolTranscript> {
    let (alice_policy, bob_policy, seed) = match policy {
        RunPolicy::Forced(m, n) => (MeasurePolicy::Forced(m), MeasurePolicy::Forced(n), None),
        RunPolicy::Sample(seed) => {
            // One run seed, two independent per-measurement streams.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                MeasurePolicy::Sample(rng.random()),
                MeasurePolicy::Sample(rng.random()),
                Some(seed),
            )
        }
    };

    let channel = channel_state();
    let alice = step1_alice(&channel, p, alice_policy)?;
    let bob = step2_bob(&alice.post, alice.outcome, p, bob_policy)?;
    let corrected = step3_correct(&bob.post, alice.outcome, bob.outcome)?;
    let final_state = step4_expand(&corrected)?;
    let final_fidelity = final_state.fidelity(&target_state(p))?;

    let messages = vec![alice.message.clone(), bob.message.clone()];
    let ledger = ResourceLedger {
        channel_qubits: channel.num_qubits() as u32,
        ancilla_qubits: (final_state.num_qubits() - corrected.num_qubits()) as u32,
        classical_bits: messages.iter().map(|msg| msg.bit_cost).sum(),
        cnot_count: EXPANSION_CNOTS,
    };

    Ok(ProtocolTranscript {
        params: *p,
        m: alice.outcome,
        n: bob.outcome,
        p_m: alice.probability,
        p_n_given_m: bob.probability,
        correction: correction(alice.outcome, bob.outcome)?,
        final_fidelity,
        ledger,
        messages,
        seed,
        states: TranscriptStates {
            channel,
            after_alice: alice.post,
            after_bob: bob.post,
            after_correction: corrected,
            final_state,
        },
    })
}
