//! End-to-end search for the eigenvalue nearest a target point, and the
//! probability laws behind the choice of initial states.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::fixedpoint::{
    query_count_ylc, run_schedule, target_fidelity, ylc_schedule, EigenWindow, OracleWindow,
    PhaseSchedule, TargetOracle,
};
use crate::hamiltonian::{scale_for_qpe, PauliSum, ScaledProblem};
use crate::linalg::{norm_of, random_uniform_state, ComplexMatrix, StateVector, C64};
use crate::qpe::{measure_eigenvalue_register, PhaseReadout, QpeCircuit, RegisterLayout};

/// `Pr(|⟨e|φ⟩|² ≥ 1/N)` for a fixed unit vector `e` and Haar-random `φ` in `C^N`.
pub fn prob_overlap_at_least_1_over_n(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("N must be at least 2, got {n}")));
    }
    let n = n as f64;
    Ok((1.0 - 1.0 / n).powf(n - 1.0))
}

/// Probability that at least one of `m` fixed basis states has squared
/// overlap `≥ 1/N` with a Haar-random target.
pub fn prob_basis_set_hit(m: u64, n: u64) -> Result<f64> {
    if n < 2 || m == 0 || m > n {
        return Err(invalid(format!("need 1 <= m <= N and N >= 2, got m={m}, N={n}")));
    }
    let nf = n as f64;
    let mut binom = 1.0;
    let mut miss = 0.0;
    for k in 0..=m {
        if k > 0 {
            binom *= (m - k + 1) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let base = (1.0 - k as f64 / nf).max(0.0);
        miss += sign * binom * base.powf(nf - 1.0);
    }
    Ok((1.0 - miss).clamp(0.0, 1.0))
}

/// Least `K` with `1 − (1 − 1/e)^K ≥ target`.
pub fn min_repetitions(target: f64) -> Result<usize> {
    if !(target < 1.0) || target.is_nan() {
        return Err(invalid(format!("target must be < 1, got {target}")));
    }
    let miss = 1.0 - (-1.0f64).exp();
    let mut k = 1;
    while 1.0 - miss.powi(k as i32) < target {
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialStrategy {
    /// Distinct computational basis states.
    Basis,
    /// Haar-random states.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Phase estimation on the full register set.
    Circuit,
    /// Exact eigenprojector on the system register.
    Ideal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    pub label: String,
    pub state: StateVector,
}

/// `k` starting states. Basis states are drawn without replacement and
/// labelled `x<index>`; random states are labelled `y<k>`.
pub fn prepare_initial_states<R: rand::Rng + ?Sized>(
    strategy: InitialStrategy,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<Vec<InitialState>> {
    match strategy {
        InitialStrategy::Basis => {
            let dim = 1usize << n;
            if k > dim {
                return Err(invalid(format!("{k} basis states requested, only {dim} exist")));
            }
            sample(rng, dim, k)
                .into_iter()
                .map(|idx| {
                    Ok(InitialState {
                        label: format!("x{idx}"),
                        state: StateVector::basis(n, idx)?,
                    })
                })
                .collect()
        }
        InitialStrategy::Random => (0..k)
            .map(|i| {
                Ok(InitialState {
                    label: format!("y{}", i + 1),
                    state: random_uniform_state(n, rng)?,
                })
            })
            .collect(),
    }
}

/// `‖H u − λ u‖₂`.
pub fn verify_candidate(h: &PauliSum, lambda: f64, u: &StateVector) -> Result<f64> {
    residual(&h.to_matrix()?, lambda, u.amplitudes())
}

fn residual(h: &ComplexMatrix, lambda: f64, u: &[C64]) -> Result<f64> {
    let hu = h.matvec(u)?;
    let diff: Vec<C64> = hu.iter().zip(u).map(|(a, b)| a - b * lambda).collect();
    Ok(norm_of(&diff))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub lambda0: f64,
    /// Half-width of the search window, in eigenvalue units.
    pub epsilon: f64,
    pub delta: f64,
    pub r: usize,
    pub strategy: InitialStrategy,
    pub trials: usize,
    /// Assumed lower bound on the initial overlap; `None` means `1/N`.
    pub p_floor: Option<f64>,
    pub seed: u64,
    pub max_epsilon_doublings: usize,
    pub mode: OracleMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            lambda0: 0.0,
            epsilon: 0.01,
            delta: 0.01,
            r: 7,
            strategy: InitialStrategy::Basis,
            trials: 11,
            p_floor: None,
            seed: 0,
            max_epsilon_doublings: 10,
            mode: OracleMode::Circuit,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.lambda0.is_finite() {
            return Err(invalid("lambda0 must be finite"));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(invalid(format!("epsilon must be finite and > 0, got {}", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(invalid(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if self.r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if let Some(p) = self.p_floor {
            if !(p > 0.0 && p <= 1.0) {
                return Err(invalid(format!("p_floor must lie in (0, 1], got {p}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    /// Zero-based window-enlargement round.
    pub attempt: usize,
    pub epsilon: f64,
    pub initial_state: String,
    /// Squared overlap of the initial state with the window eigenspace.
    pub overlap: f64,
    /// Weight of the post-search state on the window eigenspace.
    pub fidelity: f64,
    pub readout: PhaseReadout,
    /// `λ₀ + ` the read-out shifted eigenvalue.
    pub measured_eigenvalue: f64,
    pub residual: f64,
    pub in_window: bool,
    pub success: bool,
    pub queries: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Found,
    NotFound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub eigenvalue: f64,
    pub eigenvector: StateVector,
    pub fidelity: f64,
    pub residual: f64,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub status: SolveStatus,
    pub solution: Option<Solution>,
    pub queries_used: usize,
    pub trials: Vec<TrialRecord>,
    /// Final window `[λ₀ − ε, λ₀ + ε]`.
    pub window_used: (f64, f64),
    pub epsilon_used: f64,
}

/// What one search from one initial state produced.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub overlap: f64,
    pub fidelity: f64,
    pub readout: PhaseReadout,
    pub measured_eigenvalue: f64,
    pub candidate: StateVector,
    pub residual: f64,
    pub in_window: bool,
    pub queries: usize,
}

/// A prepared search at fixed `(λ₀, ε)`: scaled problem, phase-estimation
/// circuit, marked window and phase schedule.
#[derive(Debug, Clone)]
pub struct SearchSetup {
    lambda0: f64,
    hamiltonian: ComplexMatrix,
    problem: ScaledProblem,
    layout: RegisterLayout,
    qpe: QpeCircuit,
    oracle: OracleWindow,
    target: EigenWindow,
    schedule: PhaseSchedule,
    mode: OracleMode,
    tolerance: f64,
}

impl SearchSetup {
    /// `iterations` Grover steps with a schedule for error target `delta`.
    pub fn new(
        h: &PauliSum,
        lambda0: f64,
        epsilon: f64,
        r: usize,
        delta: f64,
        iterations: usize,
        mode: OracleMode,
    ) -> Result<Self> {
        let problem = scale_for_qpe(&h.shift(lambda0))?.with_epsilon(epsilon)?;
        Self::from_problem(h, lambda0, problem, r, ylc_schedule(iterations, delta)?, mode)
    }

    /// Uses a prepared scaled problem and schedule.
    pub fn from_problem(
        h: &PauliSum,
        lambda0: f64,
        problem: ScaledProblem,
        r: usize,
        schedule: PhaseSchedule,
        mode: OracleMode,
    ) -> Result<Self> {
        let layout = RegisterLayout::new(r, h.num_qubits())?;
        let qpe = QpeCircuit::new(&problem, layout)?;
        let oracle = OracleWindow::new(problem.window(), r)?;
        let target = EigenWindow::from_oracle(&problem, &oracle);
        let grid_step = problem.affine().scale / layout.register_dim() as f64;
        Ok(Self {
            lambda0,
            hamiltonian: h.to_matrix()?,
            problem,
            layout,
            qpe,
            oracle,
            target,
            schedule,
            mode,
            tolerance: 10.0 * grid_step,
        })
    }

    pub fn problem(&self) -> &ScaledProblem {
        &self.problem
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn oracle_window(&self) -> &OracleWindow {
        &self.oracle
    }

    pub fn target(&self) -> &EigenWindow {
        &self.target
    }

    pub fn schedule(&self) -> &PhaseSchedule {
        &self.schedule
    }

    /// Residual bound a candidate must meet.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Phase-estimation calls per trial: two per step plus the readout.
    pub fn queries_per_trial(&self) -> usize {
        2 * self.schedule.l + 1
    }

    /// Runs the amplification loop from `phi` and returns the post-loop
    /// state on the full register set, plus its window fidelity.
    pub fn amplify(&self, phi: &StateVector) -> Result<(StateVector, f64)> {
        match self.mode {
            OracleMode::Circuit => {
                let mut state = self.layout.compose(phi, 0, 1)?;
                let oracle = TargetOracle::Circuit {
                    qpe: &self.qpe,
                    window: &self.oracle,
                };
                run_schedule(&mut state, phi, oracle, &self.schedule)?;
                let f = target_fidelity(&self.layout, &self.target, &state)?;
                Ok((state, f))
            }
            OracleMode::Ideal => {
                let mut sys = phi.clone();
                run_schedule(&mut sys, phi, TargetOracle::Ideal(&self.target), &self.schedule)?;
                let f = self.target.weight(sys.amplitudes()).min(1.0);
                Ok((self.layout.compose(&sys, 0, 1)?, f))
            }
        }
    }

    /// Amplifies, applies one more phase estimation, measures the register
    /// and checks the collapsed system state as an eigenvector.
    pub fn run_trial<R: rand::Rng + ?Sized>(&self, phi: &StateVector, rng: &mut R) -> Result<TrialOutcome> {
        if phi.num_qubits() != self.layout.n() {
            return Err(Error::DimensionMismatch {
                expected: self.layout.n(),
                found: phi.num_qubits(),
            });
        }
        let overlap = self.target.weight(phi.amplitudes()).min(1.0);
        let (mut state, fidelity) = self.amplify(phi)?;
        self.qpe.apply_unitary(&mut state)?;
        let readout = measure_eigenvalue_register(&mut state, &self.layout, &self.problem, rng)?;
        let candidate = StateVector::normalized(self.layout.block(&state, readout.bits, 1).to_vec())?;
        let measured_eigenvalue = self.lambda0 + readout.eigenvalue;
        let residual = residual(&self.hamiltonian, measured_eigenvalue, candidate.amplitudes())?;
        Ok(TrialOutcome {
            overlap,
            fidelity,
            readout,
            measured_eigenvalue,
            candidate,
            residual,
            in_window: self.oracle.member(readout.bits),
            queries: self.queries_per_trial(),
        })
    }

    pub fn is_success(&self, outcome: &TrialOutcome) -> bool {
        outcome.in_window && outcome.residual <= self.tolerance
    }
}

/// Per-trial random stream: independent of scheduling order.
pub(crate) fn trial_rng(seed: u64, attempt: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((attempt as u64) << 32) | (trial as u64 + 1));
    rng
}

/// Finds an eigenvalue of `h` in `[λ₀ − ε, λ₀ + ε]`, doubling `ε` after a
/// round in which every trial fails.
pub fn solve_type2(h: &PauliSum, config: &SolverConfig) -> Result<SolverResult> {
    config.validate()?;
    let n = h.num_qubits();
    let dim = 1usize << n;
    let p_floor = config.p_floor.unwrap_or(1.0 / dim as f64);
    let count = query_count_ylc(p_floor, config.delta)?;
    let schedule = ylc_schedule(count.iterations.max(1), config.delta)?;
    let base = scale_for_qpe(&h.shift(config.lambda0))?;
    RegisterLayout::new(config.r, n)?;

    let mut init_rng = ChaCha8Rng::seed_from_u64(config.seed);
    // Small systems have fewer basis states than trials; use all of them.
    let trials = match config.strategy {
        InitialStrategy::Basis => config.trials.min(dim),
        InitialStrategy::Random => config.trials,
    };
    let initial = prepare_initial_states(config.strategy, n, trials, &mut init_rng)?;

    let mut records = Vec::new();
    let mut queries_used = 0;
    let mut epsilon = config.epsilon;
    for attempt in 0..=config.max_epsilon_doublings {
        let problem = base.clone().with_epsilon(epsilon)?;
        let setup = SearchSetup::from_problem(
            h,
            config.lambda0,
            problem,
            config.r,
            schedule.clone(),
            config.mode,
        )?;
        let outcomes: Vec<TrialOutcome> = initial
            .par_iter()
            .enumerate()
            .map(|(t, init)| setup.run_trial(&init.state, &mut trial_rng(config.seed, attempt, t)))
            .collect::<Result<_>>()?;

        let mut solution = None;
        for (init, out) in initial.iter().zip(&outcomes) {
            let success = setup.is_success(out);
            queries_used += out.queries;
            if success && solution.is_none() {
                solution = Some(Solution {
                    eigenvalue: out.measured_eigenvalue,
                    eigenvector: out.candidate.clone(),
                    fidelity: out.fidelity,
                    residual: out.residual,
                    trial: records.len(),
                });
            }
            records.push(TrialRecord {
                attempt,
                epsilon,
                initial_state: init.label.clone(),
                overlap: out.overlap,
                fidelity: out.fidelity,
                readout: out.readout,
                measured_eigenvalue: out.measured_eigenvalue,
                residual: out.residual,
                in_window: out.in_window,
                success,
                queries: out.queries,
            });
        }
        let window_used = (config.lambda0 - epsilon, config.lambda0 + epsilon);
        if solution.is_some() || attempt == config.max_epsilon_doublings {
            return Ok(SolverResult {
                status: if solution.is_some() {
                    SolveStatus::Found
                } else {
                    SolveStatus::NotFound
                },
                solution,
                queries_used,
                trials: records,
                window_used,
                epsilon_used: epsilon,
            });
        }
        epsilon *= 2.0;
    }
    unreachable!("the final attempt always returns")
}
