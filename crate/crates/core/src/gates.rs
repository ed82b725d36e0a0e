//! In-place gate kernels on [`StateVector`] amplitudes.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{invalid, Result};
use crate::linalg::{ComplexMatrix, StateVector, C64};

fn check_qubit(state: &StateVector, q: usize) -> Result<()> {
    if q >= state.num_qubits() {
        return Err(invalid(format!(
            "qubit {q} out of range for a {}-qubit state",
            state.num_qubits()
        )));
    }
    Ok(())
}

pub fn hadamard(state: &mut StateVector, q: usize) -> Result<()> {
    check_qubit(state, q)?;
    let bit = 1usize << q;
    let amps = state.amplitudes_mut();
    for i in 0..amps.len() {
        if i & bit == 0 {
            let a = amps[i];
            let b = amps[i | bit];
            amps[i] = (a + b) * FRAC_1_SQRT_2;
            amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
        }
    }
    Ok(())
}

/// `diag(1, e^{iθ})` on qubit `q`.
pub fn phase(state: &mut StateVector, q: usize, theta: f64) -> Result<()> {
    check_qubit(state, q)?;
    let bit = 1usize << q;
    let w = C64::from_polar(1.0, theta);
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        if i & bit != 0 {
            *a *= w;
        }
    }
    Ok(())
}

/// Phase `e^{iθ}` on basis states where both qubits are set.
pub fn controlled_phase(state: &mut StateVector, a: usize, b: usize, theta: f64) -> Result<()> {
    check_qubit(state, a)?;
    check_qubit(state, b)?;
    if a == b {
        return Err(invalid("controlled phase needs two distinct qubits"));
    }
    let mask = (1usize << a) | (1usize << b);
    let w = C64::from_polar(1.0, theta);
    for (i, amp) in state.amplitudes_mut().iter_mut().enumerate() {
        if i & mask == mask {
            *amp *= w;
        }
    }
    Ok(())
}

pub fn swap(state: &mut StateVector, a: usize, b: usize) -> Result<()> {
    check_qubit(state, a)?;
    check_qubit(state, b)?;
    if a == b {
        return Ok(());
    }
    let (ba, bb) = (1usize << a, 1usize << b);
    let amps = state.amplitudes_mut();
    for i in 0..amps.len() {
        if i & ba != 0 && i & bb == 0 {
            amps.swap(i, (i & !ba) | bb);
        }
    }
    Ok(())
}

/// Applies `u` to the low `log2(u.dim())` qubits of every block selected by
/// `select(block_index)`. Blocks are contiguous because those qubits are the
/// least significant.
pub(crate) fn apply_to_low_blocks(
    state: &mut StateVector,
    u: &ComplexMatrix,
    select: impl Fn(usize) -> bool,
) {
    let n = u.dim();
    let mut scratch = vec![C64::new(0.0, 0.0); n];
    for (b, block) in state.amplitudes_mut().chunks_exact_mut(n).enumerate() {
        if !select(b) {
            continue;
        }
        for (i, s) in scratch.iter_mut().enumerate() {
            *s = u.row(i).iter().zip(block.iter()).map(|(x, y)| x * y).sum();
        }
        block.copy_from_slice(&scratch);
    }
}
