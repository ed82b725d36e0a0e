//! Fixed-point amplitude amplification: the phase schedule, query counts,
//! the target and initial-state reflections and the Grover iteration.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{PhaseWindow, ScaledProblem};
use crate::linalg::{inner, ComplexMatrix, SpectralDecomposition, StateVector, C64, NORM_TOLERANCE};
use crate::qpe::{QpeCircuit, RegisterLayout};

/// Slack subtracted before rounding query counts up, so that values that are
/// integers up to float error are not bumped to the next integer.
const CEIL_SLACK: f64 = 1e-9;

/// Chebyshev polynomial of the first kind, `T_d(x)`, for real degree `d ≥ 0`.
pub fn chebyshev_t(d: f64, x: f64) -> Result<f64> {
    if !(d >= 0.0) || !d.is_finite() || !x.is_finite() {
        return Err(invalid(format!("chebyshev_t needs finite d >= 0 and finite x, got d={d}, x={x}")));
    }
    if x.abs() <= 1.0 {
        return Ok((d * x.acos()).cos());
    }
    if x > 1.0 {
        return Ok((d * x.acosh()).cosh());
    }
    if d.fract() != 0.0 {
        return Err(invalid(format!("fractional degree {d} undefined for x = {x} < -1")));
    }
    let sign = if d % 2.0 == 0.0 { 1.0 } else { -1.0 };
    Ok(sign * (d * (-x).acosh()).cosh())
}

/// Phase pairs `(α_j, β_j)`, `j = 1..=l`, stored zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSchedule {
    pub l: usize,
    pub delta: f64,
    pub eta: f64,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl PhaseSchedule {
    /// Same `(α, β)` at every step. `α = β = π` is plain Grover search.
    pub fn constant(l: usize, alpha: f64, beta: f64) -> Self {
        Self {
            l,
            delta: f64::NAN,
            eta: f64::NAN,
            alphas: vec![alpha; l],
            betas: vec![beta; l],
        }
    }

    /// `L = 2l + 1`.
    pub fn big_l(&self) -> usize {
        2 * self.l + 1
    }

    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.alphas.iter().copied().zip(self.betas.iter().copied())
    }
}

/// Yoder–Low–Chuang schedule with `l` iterations and error target `delta`.
pub fn ylc_schedule(l: usize, delta: f64) -> Result<PhaseSchedule> {
    if l == 0 {
        return Err(invalid("schedule needs l >= 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1), got {delta}")));
    }
    let big_l = (2 * l + 1) as f64;
    let eta = 1.0 / chebyshev_t(1.0 / big_l, 1.0 / delta.sqrt())?;
    let root = (1.0 - eta * eta).max(0.0).sqrt();
    let alphas: Vec<f64> = (1..=l)
        .map(|j| {
            let x = (2.0 * PI * j as f64 / big_l).tan() * root;
            -2.0 * 1f64.atan2(x)
        })
        .collect();
    let betas = (1..=l).map(|j| alphas[l - j]).collect();
    Ok(PhaseSchedule {
        l,
        delta,
        eta,
        alphas,
        betas,
    })
}

/// A query budget: the real-valued formula, its ceiling, and the iteration
/// count `l = ceil(q/2)` actually run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryCount {
    pub raw: f64,
    pub queries: usize,
    pub iterations: usize,
}

impl QueryCount {
    fn from_raw(raw: f64) -> Self {
        let queries = (raw - CEIL_SLACK).ceil().max(0.0) as usize;
        Self {
            raw,
            queries,
            iterations: queries.div_ceil(2),
        }
    }

    /// Phase-estimation calls made by the iterations, two per step.
    pub fn oracle_calls(&self) -> usize {
        2 * self.iterations
    }
}

/// `q = ln(2/√δ)/√p − 1`, for overlap lower bound `p`.
pub fn query_count_ylc(p: f64, delta: f64) -> Result<QueryCount> {
    if p == 0.0 {
        return Err(invalid("overlap p = 0: no solution can be amplified"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("overlap must lie in (0, 1], got {p}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(QueryCount::from_raw((2.0 / delta.sqrt()).ln() / p.sqrt() - 1.0))
}

/// `q = ln(δ/2)/ln(1−μ) − 1` for the π/3 method, clamped at zero.
pub fn query_count_pi3(mu: f64, delta: f64) -> Result<usize> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(invalid(format!("mu must lie in (0, 1), got {mu}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(QueryCount::from_raw((delta / 2.0).ln() / (1.0 - mu).ln() - 1.0).queries)
}

/// Marked register values: `y` with `lo ≤ y/2^r ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleWindow {
    pub lo: f64,
    pub hi: f64,
    pub r: usize,
}

impl OracleWindow {
    pub fn new(window: PhaseWindow, r: usize) -> Result<Self> {
        if window.lo > window.hi {
            return Err(invalid(format!("window [{}, {}] is empty", window.lo, window.hi)));
        }
        Ok(Self {
            lo: window.lo,
            hi: window.hi,
            r,
        })
    }

    pub fn member(&self, y: usize) -> bool {
        let phase = y as f64 / (1u64 << self.r) as f64;
        self.lo <= phase && phase <= self.hi
    }

    /// Whether an eigenphase rounds to a marked grid value.
    pub fn captures_phase(&self, phase: f64) -> bool {
        let d = 1usize << self.r;
        let y = ((phase * d as f64).round() as usize) % d;
        self.member(y)
    }

    pub fn marked(&self) -> Vec<usize> {
        (0..1usize << self.r).filter(|&y| self.member(y)).collect()
    }
}

/// Orthonormal basis of a target subspace, typically the eigenvectors whose
/// eigenvalues fall in the search window.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenWindow {
    indices: Vec<usize>,
    basis: Vec<Vec<C64>>,
}

impl EigenWindow {
    /// Eigenvectors with eigenvalue in `[lo, hi]`.
    pub fn from_spectrum(spec: &SpectralDecomposition, lo: f64, hi: f64) -> Self {
        Self::select(spec, |l| lo <= l && l <= hi)
    }

    /// Eigenvectors of the scaled problem whose eigenphase rounds to a grid
    /// value inside `window`.
    pub fn from_oracle(problem: &ScaledProblem, window: &OracleWindow) -> Self {
        Self::select(problem.spectrum(), |phase| window.captures_phase(phase))
    }

    fn select(spec: &SpectralDecomposition, keep: impl Fn(f64) -> bool) -> Self {
        let indices: Vec<usize> = spec
            .eigenvalues()
            .iter()
            .enumerate()
            .filter(|(_, &l)| keep(l))
            .map(|(k, _)| k)
            .collect();
        let basis = indices.iter().map(|&k| spec.eigenvector(k)).collect();
        Self { indices, basis }
    }

    /// Span of arbitrary vectors, which must be orthonormal.
    pub fn from_vectors(basis: Vec<Vec<C64>>) -> Result<Self> {
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (inner(a, b) - C64::new(want, 0.0)).norm() > NORM_TOLERANCE {
                    return Err(invalid("target vectors are not orthonormal"));
                }
            }
        }
        Ok(Self {
            indices: Vec::new(),
            basis,
        })
    }

    /// Eigenvalue indices selected, empty for [`EigenWindow::from_vectors`].
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `‖P v‖²`.
    pub fn weight(&self, v: &[C64]) -> f64 {
        self.basis.iter().map(|u| inner(u, v).norm_sqr()).sum()
    }

    /// `v ↦ (I − (1 − e^{iβ}) P) v`.
    fn reflect_slice(&self, beta: f64, v: &mut [C64]) {
        let k = C64::new(1.0, 0.0) - C64::from_polar(1.0, beta);
        for u in &self.basis {
            let c = inner(u, v) * k;
            for (x, ui) in v.iter_mut().zip(u) {
                *x -= c * ui;
            }
        }
    }

    pub fn projector(&self) -> Option<ComplexMatrix> {
        let dim = self.basis.first()?.len();
        Some(ComplexMatrix::from_fn(dim, |i, j| {
            self.basis.iter().map(|u| u[i] * u[j].conj()).sum()
        }))
    }
}

/// Weight of ancilla-0 blocks tolerated by the circuit reflection.
const ANCILLA_TOLERANCE: f64 = 1e-9;

fn check_ancilla_one(layout: &RegisterLayout, state: &StateVector) -> Result<()> {
    let half = state.dim() / 2;
    let off: f64 = state.amplitudes()[..half].iter().map(|a| a.norm_sqr()).sum();
    if off > ANCILLA_TOLERANCE {
        return Err(Error::Contract(format!(
            "ancilla qubit {} must be |1> (weight on |0> is {off:e})",
            layout.ancilla()
        )));
    }
    Ok(())
}

/// `R_t(β) = U_PE† · CZ(β) · U_PE`, where `CZ(β)` multiplies marked register
/// values by `e^{iβ}` when the ancilla is set.
///
/// The eigenvalue register should enter near `|0⟩^r`; leakage left by earlier
/// reflections is carried along rather than rejected.
pub fn reflect_target_circuit(
    qpe: &QpeCircuit,
    window: &OracleWindow,
    beta: f64,
    state: &mut StateVector,
) -> Result<()> {
    let layout = qpe.layout();
    layout.check_state(state)?;
    if window.r != layout.r() {
        return Err(invalid(format!(
            "oracle window is for r={}, layout has r={}",
            window.r,
            layout.r()
        )));
    }
    check_ancilla_one(&layout, state)?;
    qpe.apply_unitary(state)?;
    let w = C64::from_polar(1.0, beta);
    let sys = layout.system_dim();
    for (b, block) in state.amplitudes_mut().chunks_exact_mut(sys).enumerate() {
        if layout.ancilla_of_block(b) == 1 && window.member(layout.register_of_block(b)) {
            for a in block {
                *a *= w;
            }
        }
    }
    qpe.apply_inverse(state)
}

/// `I − (1 − e^{iβ}) P_window` on an n-qubit state.
pub fn reflect_target_ideal(window: &EigenWindow, beta: f64, state: &mut StateVector) -> Result<()> {
    if let Some(u) = window.basis.first() {
        if u.len() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: state.dim(),
            });
        }
    }
    window.reflect_slice(beta, state.amplitudes_mut());
    Ok(())
}

/// `R_φ(α) = I − (1 − e^{iα}) |φ⟩⟨φ|` on an n-qubit state.
pub fn reflect_initial(phi: &StateVector, alpha: f64, state: &mut StateVector) -> Result<()> {
    check_phi(phi)?;
    if phi.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: state.dim(),
        });
    }
    reflect_rank_one(phi.amplitudes(), alpha, state.amplitudes_mut());
    Ok(())
}

/// `R_φ(α)` on the system register of every block whose ancilla is set.
pub fn reflect_initial_in_layout(
    layout: &RegisterLayout,
    phi: &StateVector,
    alpha: f64,
    state: &mut StateVector,
) -> Result<()> {
    check_phi(phi)?;
    layout.check_state(state)?;
    if phi.num_qubits() != layout.n() {
        return Err(Error::DimensionMismatch {
            expected: layout.n(),
            found: phi.num_qubits(),
        });
    }
    for (b, block) in state.amplitudes_mut().chunks_exact_mut(layout.system_dim()).enumerate() {
        if layout.ancilla_of_block(b) == 1 {
            reflect_rank_one(phi.amplitudes(), alpha, block);
        }
    }
    Ok(())
}

fn check_phi(phi: &StateVector) -> Result<()> {
    let norm = phi.norm();
    if (norm * norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn reflect_rank_one(phi: &[C64], alpha: f64, v: &mut [C64]) {
    let c = inner(phi, v) * (C64::new(1.0, 0.0) - C64::from_polar(1.0, alpha));
    for (x, p) in v.iter_mut().zip(phi) {
        *x -= c * p;
    }
}

/// How `R_t` is realized.
#[derive(Debug, Clone, Copy)]
pub enum TargetOracle<'a> {
    /// Phase estimation on the full three-register state.
    Circuit {
        qpe: &'a QpeCircuit,
        window: &'a OracleWindow,
    },
    /// Exact eigenprojector on the n-qubit system state.
    Ideal(&'a EigenWindow),
}

/// One step `R_φ(α) · R_t(β)`, global sign dropped.
pub fn grover_iteration(
    state: &mut StateVector,
    phi: &StateVector,
    oracle: TargetOracle<'_>,
    alpha: f64,
    beta: f64,
) -> Result<()> {
    match oracle {
        TargetOracle::Circuit { qpe, window } => {
            reflect_target_circuit(qpe, window, beta, state)?;
            reflect_initial_in_layout(&qpe.layout(), phi, alpha, state)
        }
        TargetOracle::Ideal(window) => {
            reflect_target_ideal(window, beta, state)?;
            reflect_initial(phi, alpha, state)
        }
    }
}

/// Runs every step of `schedule` in order.
pub fn run_schedule(
    state: &mut StateVector,
    phi: &StateVector,
    oracle: TargetOracle<'_>,
    schedule: &PhaseSchedule,
) -> Result<()> {
    for (alpha, beta) in schedule.steps() {
        grover_iteration(state, phi, oracle, alpha, beta)?;
    }
    Ok(())
}

/// Squared overlap of the system register with the target subspace, summed
/// over all register and ancilla values.
pub fn target_fidelity(layout: &RegisterLayout, window: &EigenWindow, state: &StateVector) -> Result<f64> {
    layout.check_state(state)?;
    Ok(state
        .amplitudes()
        .chunks_exact(layout.system_dim())
        .map(|block| window.weight(block))
        .sum::<f64>()
        .min(1.0))
}
