//! Phase estimation over a three-register state.
//!
//! Qubit layout, least significant first:
//!
//! ```text
//! [0, n)        system (eigenvector) register
//! [n, n + r)    eigenvalue register, register qubit j is qubit n + j
//! n + r         ancilla
//! ```
//!
//! The system register occupies the low bits, so every fixed assignment of
//! the register and ancilla selects one contiguous block of `2^n` amplitudes.

use std::f64::consts::PI;
use std::ops::Range;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::gates::{apply_to_low_blocks, controlled_phase, hadamard, swap};
use crate::hamiltonian::ScaledProblem;
use crate::linalg::{ComplexMatrix, StateVector, C64};

/// Largest total qubit count simulated.
pub const MAX_CIRCUIT_QUBITS: usize = 16;

/// Weight the eigenvalue register must carry on `|0⟩` before forward QPE.
const REGISTER_ZERO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    r: usize,
    n: usize,
}

impl RegisterLayout {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(invalid(format!("layout needs r >= 1 and n >= 1, got r={r}, n={n}")));
        }
        if r + n + 1 > MAX_CIRCUIT_QUBITS {
            return Err(Error::TooManyQubits {
                requested: r + n + 1,
                max: MAX_CIRCUIT_QUBITS,
            });
        }
        Ok(Self { r, n })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_qubits(&self) -> usize {
        self.r + self.n + 1
    }

    pub fn system(&self) -> Range<usize> {
        0..self.n
    }

    pub fn register(&self) -> Range<usize> {
        self.n..self.n + self.r
    }

    pub fn ancilla(&self) -> usize {
        self.n + self.r
    }

    pub fn system_dim(&self) -> usize {
        1 << self.n
    }

    pub fn register_dim(&self) -> usize {
        1 << self.r
    }

    /// Register value of the block with index `block` (state index `>> n`).
    pub fn register_of_block(&self, block: usize) -> usize {
        block & (self.register_dim() - 1)
    }

    pub fn ancilla_of_block(&self, block: usize) -> usize {
        block >> self.r
    }

    /// `|ancilla⟩|y⟩|system⟩`.
    pub fn compose(&self, system: &StateVector, register: usize, ancilla: usize) -> Result<StateVector> {
        if system.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: system.num_qubits(),
            });
        }
        if register >= self.register_dim() || ancilla > 1 {
            return Err(invalid(format!(
                "register value {register} or ancilla {ancilla} out of range"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << self.total_qubits()];
        let block = (ancilla << self.r) | register;
        let start = block << self.n;
        amps[start..start + self.system_dim()].copy_from_slice(system.amplitudes());
        StateVector::from_amplitudes(amps)
    }

    /// System-register amplitudes of one block (unnormalized).
    pub fn block<'a>(&self, state: &'a StateVector, register: usize, ancilla: usize) -> &'a [C64] {
        let start = ((ancilla << self.r) | register) << self.n;
        &state.amplitudes()[start..start + self.system_dim()]
    }

    pub(crate) fn check_state(&self, state: &StateVector) -> Result<()> {
        if state.num_qubits() != self.total_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.total_qubits(),
                found: state.num_qubits(),
            });
        }
        Ok(())
    }
}

/// Outcome of measuring the eigenvalue register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseReadout {
    pub bits: usize,
    pub phase: f64,
    pub eigenvalue: f64,
    pub probability: f64,
}

fn check_range(state: &StateVector, register: &Range<usize>) -> Result<()> {
    if register.is_empty() || register.end > state.num_qubits() {
        return Err(invalid(format!(
            "register {register:?} invalid for a {}-qubit state",
            state.num_qubits()
        )));
    }
    Ok(())
}

/// `|x⟩ ↦ 2^{-r/2} Σ_y e^{2πi xy/2^r} |y⟩` on the qubits of `register`,
/// with the first qubit of the range as the least significant bit.
pub fn qft(state: &mut StateVector, register: Range<usize>) -> Result<()> {
    check_range(state, &register)?;
    let q: Vec<usize> = register.collect();
    let r = q.len();
    for j in (0..r).rev() {
        hadamard(state, q[j])?;
        for k in (0..j).rev() {
            controlled_phase(state, q[k], q[j], PI / (1u64 << (j - k)) as f64)?;
        }
    }
    for m in 0..r / 2 {
        swap(state, q[m], q[r - 1 - m])?;
    }
    Ok(())
}

/// Adjoint of [`qft`].
pub fn qft_inverse(state: &mut StateVector, register: Range<usize>) -> Result<()> {
    check_range(state, &register)?;
    let q: Vec<usize> = register.collect();
    let r = q.len();
    for m in 0..r / 2 {
        swap(state, q[m], q[r - 1 - m])?;
    }
    for j in 0..r {
        for k in 0..j {
            controlled_phase(state, q[k], q[j], -PI / (1u64 << (j - k)) as f64)?;
        }
        hadamard(state, q[j])?;
    }
    Ok(())
}

/// Phase estimation circuit `U_PE` for a fixed problem and layout, with the
/// controlled powers `U^{2^j}` cached.
#[derive(Debug, Clone)]
pub struct QpeCircuit {
    layout: RegisterLayout,
    powers: Vec<ComplexMatrix>,
    inverse_powers: Vec<ComplexMatrix>,
}

impl QpeCircuit {
    pub fn new(problem: &ScaledProblem, layout: RegisterLayout) -> Result<Self> {
        if problem.num_qubits() != layout.n() {
            return Err(Error::DimensionMismatch {
                expected: layout.n(),
                found: problem.num_qubits(),
            });
        }
        let powers: Vec<ComplexMatrix> = (0..layout.r())
            .map(|j| problem.spectrum().unitary_power((1u64 << j) as f64))
            .collect();
        let inverse_powers = powers.iter().map(ComplexMatrix::adjoint).collect();
        Ok(Self {
            layout,
            powers,
            inverse_powers,
        })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    /// Forward `U_PE`. The eigenvalue register must start in `|0⟩^r`.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.layout.check_state(state)?;
        let zero_weight = register_distribution(state, &self.layout)?[0];
        if zero_weight < 1.0 - REGISTER_ZERO_TOLERANCE {
            return Err(Error::Contract(format!(
                "eigenvalue register must be |0> before phase estimation (weight {zero_weight})"
            )));
        }
        self.apply_unitary(state)
    }

    /// Forward `U_PE` as a plain unitary, without the register precondition.
    pub fn apply_unitary(&self, state: &mut StateVector) -> Result<()> {
        self.layout.check_state(state)?;
        let l = self.layout;
        for q in l.register() {
            hadamard(state, q)?;
        }
        for (j, u) in self.powers.iter().enumerate() {
            apply_to_low_blocks(state, u, |b| (l.register_of_block(b) >> j) & 1 == 1);
        }
        qft_inverse(state, l.register())
    }

    /// `U_PE†`.
    pub fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        self.layout.check_state(state)?;
        let l = self.layout;
        qft(state, l.register())?;
        for (j, u) in self.inverse_powers.iter().enumerate().rev() {
            apply_to_low_blocks(state, u, |b| (l.register_of_block(b) >> j) & 1 == 1);
        }
        for q in l.register() {
            hadamard(state, q)?;
        }
        Ok(())
    }
}

pub fn apply_qpe(problem: &ScaledProblem, layout: RegisterLayout, state: &StateVector) -> Result<StateVector> {
    let mut out = state.clone();
    QpeCircuit::new(problem, layout)?.apply(&mut out)?;
    Ok(out)
}

pub fn apply_qpe_inverse(
    problem: &ScaledProblem,
    layout: RegisterLayout,
    state: &StateVector,
) -> Result<StateVector> {
    let mut out = state.clone();
    QpeCircuit::new(problem, layout)?.apply_inverse(&mut out)?;
    Ok(out)
}

/// Marginal distribution of the eigenvalue register.
pub fn register_distribution(state: &StateVector, layout: &RegisterLayout) -> Result<Vec<f64>> {
    layout.check_state(state)?;
    let mut dist = vec![0.0; layout.register_dim()];
    for (b, block) in state.amplitudes().chunks_exact(layout.system_dim()).enumerate() {
        dist[layout.register_of_block(b)] += block.iter().map(|a| a.norm_sqr()).sum::<f64>();
    }
    Ok(dist)
}

/// Samples the eigenvalue register, collapses `state` onto the outcome and
/// maps it back to eigenvalue units.
pub fn measure_eigenvalue_register<R: Rng + ?Sized>(
    state: &mut StateVector,
    layout: &RegisterLayout,
    problem: &ScaledProblem,
    rng: &mut R,
) -> Result<PhaseReadout> {
    let dist = register_distribution(state, layout)?;
    let total: f64 = dist.iter().sum();
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let bits = dist
        .iter()
        .position(|&p| {
            acc += p;
            p > 0.0 && u < acc
        })
        .or_else(|| dist.iter().rposition(|&p| p > 0.0))
        .ok_or_else(|| invalid("state has zero norm"))?;
    let probability = dist[bits] / total;
    let scale = 1.0 / dist[bits].sqrt();
    let sys = layout.system_dim();
    for (b, block) in state.amplitudes_mut().chunks_exact_mut(sys).enumerate() {
        let keep = layout.register_of_block(b) == bits;
        for a in block {
            *a = if keep { *a * scale } else { C64::new(0.0, 0.0) };
        }
    }
    let phase = bits as f64 / layout.register_dim() as f64;
    Ok(PhaseReadout {
        bits,
        phase,
        eigenvalue: problem.affine().to_eigenvalue(phase),
        probability,
    })
}
