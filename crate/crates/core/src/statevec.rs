//! Dense complex state-vector engine.
//!
//! States live on a register of labeled qubits. The first label in the
//! register is the most significant bit of the amplitude index, so a ket
//! written label-left-to-right reads off directly as a binary index.
//! Measured qubits are removed from the register, which keeps the
//! residual-state bookkeeping aligned with how collapse states are
//! usually written (e.g. a four-qubit residual after measuring two of
//! six qubits).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bases::MeasurementBasis;
use crate::error::{Error, Result};
use crate::{IMPOSSIBLE_TOL, NORM_TOL};

/// Identifier for a qubit within a register (the protocol uses 1..=8).
pub type QubitLabel = u8;

/// How a measurement outcome is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurePolicy {
    /// Draw from the exact outcome distribution with a seeded generator.
    Sample(u64),
    /// Take the given outcome (its exact probability is still reported).
    Forced(u8),
}

/// Result of a two-qubit projective measurement.
#[derive(Debug, Clone)]
pub struct Measurement {
    /// Which basis row the register collapsed onto (0..=3).
    pub outcome: u8,
    /// Exact probability of that outcome.
    pub probability: f64,
    /// Renormalized residual on the remaining qubits; the measured pair
    /// is removed from the register.
    pub post: StateVector,
}

/// A normalized pure state over an ordered register of labeled qubits.
#[derive(Debug, Clone)]
pub struct StateVector {
    labels: Vec<QubitLabel>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from explicit amplitudes, validating register and
    /// normalization invariants (distinct labels, 2^n amplitudes, all
    /// finite, unit norm within `NORM_TOL`).
    pub fn new(labels: Vec<QubitLabel>, amps: Vec<Complex64>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::LabelCollision(*l));
            }
        }
        if amps.len() != 1 << labels.len() {
            return Err(Error::NotNormalized {
                sum_sq: f64::NAN,
                tol: NORM_TOL,
            });
        }
        let mut sum_sq = 0.0;
        for a in &amps {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFinite);
            }
            sum_sq += a.norm_sqr();
        }
        if (sum_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                sum_sq,
                tol: NORM_TOL,
            });
        }
        Ok(Self { labels, amps })
    }

    /// The computational basis state |bits⟩ (bits read MSB-first over the labels).
    pub fn basis_state(labels: Vec<QubitLabel>, bits: usize) -> Result<Self> {
        let mut amps = vec![Complex64::ZERO; 1 << labels.len()];
        amps[bits] = Complex64::ONE;
        Self::new(labels, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude of the basis state with the given bit pattern.
    pub fn amplitude(&self, bits: usize) -> Complex64 {
        self.amps[bits]
    }

    fn position(&self, label: QubitLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownQubit(label))
    }

    /// Bit of `index` belonging to the register position `pos` (MSB-first).
    fn bit(&self, index: usize, pos: usize) -> usize {
        (index >> (self.labels.len() - 1 - pos)) & 1
    }

    /// Kronecker product; `self`'s register becomes the high-order bits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        for l in &other.labels {
            if self.labels.contains(l) {
                return Err(Error::LabelCollision(*l));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let shift = other.labels.len();
        let mut amps = vec![Complex64::ZERO; 1 << labels.len()];
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[(i << shift) | j] = a * b;
            }
        }
        StateVector::new(labels, amps)
    }

    /// Applies a 2x2 unitary to one tensor factor.
    pub fn apply_one_qubit(
        &self,
        qubit: QubitLabel,
        gate: &[[Complex64; 2]; 2],
    ) -> Result<StateVector> {
        let residual = unitarity_residual_2x2(gate);
        if residual > NORM_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let pos = self.position(qubit)?;
        let step = 1 << (self.labels.len() - 1 - pos);
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & step == 0 {
                let j = i | step;
                let a0 = amps[i];
                let a1 = amps[j];
                amps[i] = gate[0][0] * a0 + gate[0][1] * a1;
                amps[j] = gate[1][0] * a0 + gate[1][1] * a1;
            }
        }
        StateVector::new(self.labels.clone(), amps)
    }

    /// Controlled-NOT: flips `target`'s bit wherever `control`'s bit is 1.
    pub fn apply_cnot(&self, control: QubitLabel, target: QubitLabel) -> Result<StateVector> {
        if control == target {
            return Err(Error::SameQubit(control));
        }
        let pc = self.position(control)?;
        let pt = self.position(target)?;
        let cmask = 1 << (self.labels.len() - 1 - pc);
        let tmask = 1 << (self.labels.len() - 1 - pt);
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                amps.swap(i, i | tmask);
            }
        }
        StateVector::new(self.labels.clone(), amps)
    }

    /// Projective measurement of a qubit pair in an arbitrary orthonormal
    /// two-qubit basis. The pair's first label is the more significant bit
    /// of the basis-row indexing, matching kets written first-label-first.
    pub fn measure_pair(
        &self,
        pair: (QubitLabel, QubitLabel),
        basis: &MeasurementBasis,
        policy: MeasurePolicy,
    ) -> Result<Measurement> {
        if pair.0 == pair.1 {
            return Err(Error::SameQubit(pair.0));
        }
        let pa = self.position(pair.0)?;
        let pb = self.position(pair.1)?;
        let n = self.labels.len();
        let rest_len = 1 << (n - 2);

        // Project onto every basis row in one pass: the residual for
        // outcome k at rest-index r accumulates conj(row_k[b]) * amp.
        let mut residuals = vec![vec![Complex64::ZERO; rest_len]; 4];
        for (i, amp) in self.amps.iter().enumerate() {
            let b = (self.bit(i, pa) << 1) | self.bit(i, pb);
            let mut r = 0usize;
            for p in 0..n {
                if p != pa && p != pb {
                    r = (r << 1) | self.bit(i, p);
                }
            }
            for (k, res) in residuals.iter_mut().enumerate() {
                res[r] += basis.row(k)[b].conj() * amp;
            }
        }
        let probs: Vec<f64> = residuals
            .iter()
            .map(|res| res.iter().map(|a| a.norm_sqr()).sum())
            .collect();

        let outcome = match policy {
            MeasurePolicy::Forced(k) => {
                if k > 3 {
                    return Err(Error::BadOutcomeIndex(k));
                }
                if probs[k as usize] < IMPOSSIBLE_TOL {
                    return Err(Error::ImpossibleOutcome {
                        outcome: k,
                        probability: probs[k as usize],
                    });
                }
                k
            }
            MeasurePolicy::Sample(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                sample_outcome(&mut rng, &probs)
            }
        };

        let probability = probs[outcome as usize];
        let scale = probability.sqrt().recip();
        let post_amps: Vec<Complex64> = residuals[outcome as usize]
            .iter()
            .map(|a| a * scale)
            .collect();
        let post_labels: Vec<QubitLabel> = self
            .labels
            .iter()
            .copied()
            .filter(|&l| l != pair.0 && l != pair.1)
            .collect();
        Ok(Measurement {
            outcome,
            probability,
            post: StateVector::new(post_labels, post_amps)?,
        })
    }

    /// |⟨self|other⟩|² — invariant under a global phase of either state.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        if self.labels != other.labels {
            return Err(Error::RegisterMismatch {
                left: self.labels.clone(),
                right: other.labels.clone(),
            });
        }
        let overlap: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(overlap.norm_sqr())
    }

    /// Reindexes the amplitudes so the register reads in `new_order`.
    /// The physical state is unchanged.
    pub fn permute(&self, new_order: &[QubitLabel]) -> Result<StateVector> {
        let bad = || Error::BadPermutation {
            requested: new_order.to_vec(),
            register: self.labels.clone(),
        };
        if new_order.len() != self.labels.len() {
            return Err(bad());
        }
        let mut old_pos = Vec::with_capacity(new_order.len());
        for (i, l) in new_order.iter().enumerate() {
            if new_order[..i].contains(l) {
                return Err(bad());
            }
            old_pos.push(self.position(*l).map_err(|_| bad())?);
        }
        let n = self.labels.len();
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        for (new_idx, slot) in amps.iter_mut().enumerate() {
            let mut old_idx = 0usize;
            for (q, &p) in old_pos.iter().enumerate() {
                let bit = (new_idx >> (n - 1 - q)) & 1;
                old_idx |= bit << (n - 1 - p);
            }
            *slot = self.amps[old_idx];
        }
        StateVector::new(new_order.to_vec(), amps)
    }
}

/// Largest |entry| of G·G† − I for a 2x2 matrix.
fn unitarity_residual_2x2(g: &[[Complex64; 2]; 2]) -> f64 {
    let mut max = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut s: Complex64 = g[i].iter().zip(&g[j]).map(|(x, y)| x * y.conj()).sum();
            if i == j {
                s -= Complex64::ONE;
            }
            max = max.max(s.norm());
        }
    }
    max
}

/// Inverse-CDF draw over exact outcome probabilities.
fn sample_outcome<R: Rng>(rng: &mut R, probs: &[f64]) -> u8 {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return k as u8;
        }
    }
    (probs.len() - 1) as u8
}
