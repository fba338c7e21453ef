//! Simulation and verification of a deterministic joint remote state
//! preparation (JRSP) protocol: two senders who each know half of a
//! four-qubit cluster-type state's description cooperate over a pair of
//! GHZ channels so the receiver ends up holding the state — with unit
//! success probability on every measurement branch.
//!
//! The crate is organized around four modules:
//!
//! - [`statevec`]: a dense state-vector engine over labeled qubit
//!   registers (tensor products, gates, projective pair measurements in
//!   arbitrary orthonormal bases, permutation, fidelity);
//! - [`bases`]: closed-form constructors for every object the protocol
//!   needs (target and channel states, both senders' measurement bases,
//!   the collapse states, and the receiver's correction table);
//! - [`protocol`]: the four-step run itself, with classical messages,
//!   state snapshots, and a resource ledger in an immutable transcript;
//! - [`verify`]: exhaustive branch enumeration and the decomposition /
//!   table / unitarity checks that pin the unit-success claim.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so anything here can be shared or sent across threads
//! freely; the only nondeterminism is the seeded generator behind
//! [`statevec::MeasurePolicy::Sample`].

pub mod bases;
pub mod error;
pub mod protocol;
pub mod statevec;
pub mod verify;

/// Construction and unitarity tolerance: state norms, basis
/// orthonormality, and decomposition residuals must hold this tightly.
/// Everything here is a handful of 64-bit float operations, so this
/// leaves ample headroom.
pub const NORM_TOL: f64 = 1e-12;

/// End-to-end fidelity tolerance for acceptance checks (global phase
/// ignored).
pub const FIDELITY_TOL: f64 = 1e-10;

/// Forced measurement outcomes below this probability are rejected as
/// impossible.
pub const IMPOSSIBLE_TOL: f64 = 1e-15;

pub use bases::{
    alice_basis, bob_basis, channel_state, correction, d_state, ghz, intermediate_target, l_state,
    target_state, BasisOwner, MeasurementBasis, Pauli, PauliCorrection, TargetParams,
};
pub use error::{Error, Result};
pub use protocol::{
    run_protocol, step1_alice, step2_bob, step3_correct, step4_expand, ClassicalMessage, Party,
    ProtocolTranscript, ResourceLedger, RunPolicy, SenderStep, TranscriptStates,
};
pub use statevec::{MeasurePolicy, Measurement, QubitLabel, StateVector};
pub use verify::{
    basis_unitarity_suite, check_channel_decomposition, check_correction_table,
    check_l_decomposition, edge_case_params, enumerate_branches, random_params, BranchResult,
    CorrectionTableAudit, CorrectionTableRow, VerificationReport,
};
