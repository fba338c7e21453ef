use thiserror::Error;

use crate::statevec::QubitLabel;

/// Errors shared across the simulation and protocol layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Tensor product of registers that share a qubit label.
    #[error("qubit label {0} appears in both registers")]
    LabelCollision(QubitLabel),

    /// A referenced qubit label is not part of the register.
    #[error("qubit label {0} is not in the register")]
    UnknownQubit(QubitLabel),

    /// A gate matrix failed the unitarity check.
    #[error("gate matrix is not unitary (max |G G\u{2020} - I| entry = {residual:.3e})")]
    NotUnitary { residual: f64 },

    /// Control and target of a two-qubit gate coincide.
    #[error("control and target are the same qubit ({0})")]
    SameQubit(QubitLabel),

    /// A forced measurement outcome has (numerically) zero probability.
    #[error("forced outcome {outcome} has probability {probability:.3e}")]
    ImpossibleOutcome { outcome: u8, probability: f64 },

    /// Two states whose registers differ in size or label order.
    #[error("register mismatch: left = {left:?}, right = {right:?}")]
    RegisterMismatch {
        left: Vec<QubitLabel>,
        right: Vec<QubitLabel>,
    },

    /// The requested label order is not a permutation of the register.
    #[error("label order {requested:?} is not a permutation of {register:?}")]
    BadPermutation {
        requested: Vec<QubitLabel>,
        register: Vec<QubitLabel>,
    },

    /// A measurement outcome index outside 0..=3.
    #[error("outcome index {0} out of range (expected 0..=3)")]
    BadOutcomeIndex(u8),

    /// Amplitudes or parameters whose squared magnitudes do not sum to 1.
    #[error("not normalized: squared magnitudes sum to {sum_sq} (expected 1 within {tol:e})")]
    NotNormalized { sum_sq: f64, tol: f64 },

    /// A NaN or infinite component where a finite number is required.
    #[error("non-finite value encountered")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
