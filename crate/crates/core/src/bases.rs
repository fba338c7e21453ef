//! Closed-form states, measurement bases, and the correction table.
//!
//! Everything here is a pure constructor parametrized by [`TargetParams`]:
//! the four-qubit cluster-type target, the two-GHZ channel, the senders'
//! measurement bases, the collapse states they induce, and the Pauli
//! corrections the receiver applies.
//!
//! The sender bases and collapse states share one algebraic skeleton: a
//! row-permutation of the coefficient (or phase) vector combined with a
//! sign pattern. `SIGNS` and `PERMS` below encode that skeleton once.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::statevec::{QubitLabel, StateVector};
use crate::NORM_TOL;

/// Sign pattern of row `n` (same pattern for the sender bases and the
/// collapse-state table).
const SIGNS: [[f64; 4]; 4] = [
    [1.0, 1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0],
];

/// Entry permutation: self-inverse pair swaps indexed by row/outcome.
const PERMS: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// The seven real parameters defining the desired state: amplitudes
/// (a, b, c, d) with a² + b² + c² + d² = 1, and three phases in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    theta: [f64; 3],
}

impl TargetParams {
    /// Validates finiteness and normalization (within `NORM_TOL`); phases
    /// are canonicalized to [0, 2π).
    pub fn new(a: f64, b: f64, c: f64, d: f64, theta: [f64; 3]) -> Result<Self> {
        for v in [a, b, c, d, theta[0], theta[1], theta[2]] {
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let sum_sq = a * a + b * b + c * c + d * d;
        if (sum_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                sum_sq,
                tol: NORM_TOL,
            });
        }
        let canon = |t: f64| {
            let r = t.rem_euclid(TAU);
            if r == TAU {
                0.0
            } else {
                r
            }
        };
        Ok(Self {
            a,
            b,
            c,
            d,
            theta: theta.map(canon),
        })
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Phases (θ₁, θ₂, θ₃) in [0, 2π).
    pub fn thetas(&self) -> [f64; 3] {
        self.theta
    }

    /// The complex amplitude vector (a, be^{iθ₁}, ce^{iθ₂}, de^{iθ₃}).
    fn weights(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.a, 0.0),
            Complex64::from_polar(self.b, self.theta[0]),
            Complex64::from_polar(self.c, self.theta[1]),
            Complex64::from_polar(self.d, self.theta[2]),
        ]
    }
}

/// Which party a measurement basis belongs to; Bob's depends on Alice's
/// outcome m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisOwner {
    Alice,
    Bob(u8),
}

/// Four orthonormal two-qubit basis vectors; row k is outcome k.
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    rows: [[Complex64; 4]; 4],
    owner: BasisOwner,
}

impl MeasurementBasis {
    /// Validates that the rows form a unitary matrix within `NORM_TOL`.
    pub fn from_rows(rows: [[Complex64; 4]; 4], owner: BasisOwner) -> Result<Self> {
        let basis = Self { rows, owner };
        let residual = basis.unitarity_residual();
        if residual > NORM_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(basis)
    }

    pub fn row(&self, k: usize) -> &[Complex64; 4] {
        &self.rows[k]
    }

    pub fn rows(&self) -> &[[Complex64; 4]; 4] {
        &self.rows
    }

    pub fn owner(&self) -> BasisOwner {
        self.owner
    }

    /// Largest |entry| of B·B† − I.
    pub fn unitarity_residual(&self) -> f64 {
        let mut max = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let mut s = Complex64::ZERO;
                for k in 0..4 {
                    s += self.rows[i][k] * self.rows[j][k].conj();
                }
                if i == j {
                    s -= Complex64::ONE;
                }
                max = max.max(s.norm());
            }
        }
        max
    }
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pauli {
    I,
    X,
    Z,
}

impl Pauli {
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let (o, l) = (Complex64::ZERO, Complex64::ONE);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// Receiver-side correction: Pauli products for qubits 3 and 6, written
/// operator-product style (rightmost entry applied first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PauliCorrection {
    #[serde(rename = "q3")]
    pub ops_q3: Vec<Pauli>,
    #[serde(rename = "q6")]
    pub ops_q6: Vec<Pauli>,
}

impl PauliCorrection {
    /// Applies the correction to a state holding qubits 3 and 6.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let mut out = state.clone();
        for p in self.ops_q3.iter().rev() {
            out = out.apply_one_qubit(3, &p.matrix())?;
        }
        for p in self.ops_q6.iter().rev() {
            out = out.apply_one_qubit(6, &p.matrix())?;
        }
        Ok(out)
    }
}

/// Exactly renormalizes before constructing, so closed-form states are
/// immune to the rounding of e^{iθ} factors.
fn normalized_state(labels: Vec<QubitLabel>, mut amps: Vec<Complex64>) -> StateVector {
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    StateVector::new(labels, amps).expect("closed-form state is normalized")
}

/// Three-qubit GHZ state (|000⟩ + |111⟩)/√2 on the given labels.
pub fn ghz(labels: [QubitLabel; 3]) -> StateVector {
    let mut amps = vec![Complex64::ZERO; 8];
    amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[7] = amps[0];
    StateVector::new(labels.to_vec(), amps).expect("GHZ is normalized")
}

/// The desired four-qubit cluster-type state
/// a|0000⟩ + be^{iθ₁}|0011⟩ + ce^{iθ₂}|1100⟩ + de^{iθ₃}|1111⟩,
/// on the receiver's register (3, 7, 6, 8).
pub fn target_state(p: &TargetParams) -> StateVector {
    let w = p.weights();
    let mut amps = vec![Complex64::ZERO; 16];
    amps[0b0000] = w[0];
    amps[0b0011] = w[1];
    amps[0b1100] = w[2];
    amps[0b1111] = w[3];
    normalized_state(vec![3, 7, 6, 8], amps)
}

/// The shared quantum channel: two GHZ states on qubit labels 1..=6,
/// amplitude exactly ½ at 000000, 000111, 111000, 111111.
/// Alice holds (1, 4), Bob (2, 5), Charlie (3, 6).
pub fn channel_state() -> StateVector {
    let mut amps = vec![Complex64::ZERO; 64];
    for pattern in [0b000000, 0b000111, 0b111000, 0b111111] {
        amps[pattern] = Complex64::new(0.5, 0.0);
    }
    StateVector::new((1..=6).collect(), amps).expect("channel is normalized")
}

/// Alice's real-coefficient basis: rows
/// (a,b,c,d), (b,−a,d,−c), (c,−d,−a,b), (d,c,−b,−a).
/// Unitary for any normalized coefficients, including degenerate zeros.
pub fn alice_basis(p: &TargetParams) -> MeasurementBasis {
    let coeffs = p.coeffs();
    let mut rows = [[Complex64::ZERO; 4]; 4];
    for (n, row) in rows.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = Complex64::new(SIGNS[n][j] * coeffs[PERMS[n][j]], 0.0);
        }
    }
    MeasurementBasis::from_rows(rows, BasisOwner::Alice).expect("real-coefficient basis is unitary")
}

/// Bob's phase basis, selected by Alice's announced outcome m. Only
/// the phases of `p` enter; Bob never needs the real coefficients.
pub fn bob_basis(m: u8, p: &TargetParams) -> Result<MeasurementBasis> {
    if m > 3 {
        return Err(Error::BadOutcomeIndex(m));
    }
    let t = p.thetas();
    let phases = [
        Complex64::ONE,
        Complex64::from_polar(1.0, -t[0]),
        Complex64::from_polar(1.0, -t[1]),
        Complex64::from_polar(1.0, -t[2]),
    ];
    let mut rows = [[Complex64::ZERO; 4]; 4];
    for (n, row) in rows.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = 0.5 * SIGNS[n][j] * phases[PERMS[m as usize][j]];
        }
    }
    MeasurementBasis::from_rows(rows, BasisOwner::Bob(m))
}

/// The residual four-qubit state after Alice measures outcome m, in
/// label order (2, 5, 3, 6): her basis row m spread over the patterns
/// 0000, 0101, 1010, 1111.
pub fn l_state(m: u8, p: &TargetParams) -> Result<StateVector> {
    if m > 3 {
        return Err(Error::BadOutcomeIndex(m));
    }
    let coeffs = p.coeffs();
    let mut amps = vec![Complex64::ZERO; 16];
    for (j, &pattern) in [0b0000usize, 0b0101, 0b1010, 0b1111].iter().enumerate() {
        amps[pattern] = Complex64::new(SIGNS[m as usize][j] * coeffs[PERMS[m as usize][j]], 0.0);
    }
    Ok(normalized_state(vec![2, 5, 3, 6], amps))
}

/// The collapse state of qubits (3, 6) after outcomes (m, n): the
/// permuted complex amplitude vector with the sign pattern of row
/// `PERMS[m][n]`.
pub fn d_state(m: u8, n: u8, p: &TargetParams) -> Result<StateVector> {
    if m > 3 {
        return Err(Error::BadOutcomeIndex(m));
    }
    if n > 3 {
        return Err(Error::BadOutcomeIndex(n));
    }
    let w = p.weights();
    let signs = SIGNS[PERMS[m as usize][n as usize]];
    let mut amps = vec![Complex64::ZERO; 4];
    for (j, amp) in amps.iter_mut().enumerate() {
        *amp = signs[j] * w[PERMS[m as usize][j]];
    }
    Ok(normalized_state(vec![3, 6], amps))
}

/// The corrected two-qubit state the receiver holds before expansion:
/// a|00⟩ + be^{iθ₁}|01⟩ + ce^{iθ₂}|10⟩ + de^{iθ₃}|11⟩ on (3, 6).
pub fn intermediate_target(p: &TargetParams) -> StateVector {
    normalized_state(vec![3, 6], p.weights().to_vec())
}

/// The correction operator for outcome pair (m, n). Lookup is total
/// over all 16 pairs; products are written rightmost-applied-first.
pub fn correction(m: u8, n: u8) -> Result<PauliCorrection> {
    use Pauli::{I, X, Z};
    let (q3, q6): (&[Pauli], &[Pauli]) = match (m, n) {
        (0, 0) => (&[I], &[I]),
        (0, 1) => (&[I], &[Z]),
        (0, 2) => (&[Z], &[Z]),
        (0, 3) => (&[Z], &[I]),
        (1, 0) => (&[I], &[Z, X]),
        (1, 1) => (&[I], &[X]),
        (1, 2) => (&[Z], &[X]),
        (1, 3) => (&[Z], &[Z, X]),
        (2, 0) => (&[Z, X], &[Z]),
        (2, 1) => (&[Z, X], &[I]),
        (2, 2) => (&[X], &[I]),
        (2, 3) => (&[X], &[Z]),
        (3, 0) => (&[Z, X], &[X]),
        (3, 1) => (&[Z, X], &[Z, X]),
        (3, 2) => (&[X], &[Z, X]),
        (3, 3) => (&[X], &[X]),
        _ => return Err(Error::BadOutcomeIndex(m.max(n))),
    };
    Ok(PauliCorrection {
        ops_q3: q3.to_vec(),
        ops_q6: q6.to_vec(),
    })
}
