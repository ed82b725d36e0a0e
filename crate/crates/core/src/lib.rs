//! Query-based eigenvalue search: phase estimation as a marking oracle,
//! fixed-point amplitude amplification, and dense state-vector simulation.
//!
//! Qubit 0 is the least-significant bit of every basis index. Pauli strings
//! are written with the highest qubit first.

pub mod error;
pub mod experiments;
pub mod fixedpoint;
pub mod gates;
pub mod hamiltonian;
pub mod linalg;
pub mod qpe;
pub mod solver;

pub use error::{Error, Result};
pub use fixedpoint::{
    chebyshev_t, grover_iteration, query_count_pi3, query_count_ylc, reflect_initial,
    reflect_target_circuit, reflect_target_ideal, ylc_schedule, EigenWindow, OracleWindow,
    PhaseSchedule, QueryCount, TargetOracle,
};
pub use hamiltonian::{
    build_h2_jw, build_heisenberg, hermitian_embed, normal_parts, scale_for_qpe, AffineMap,
    Boundary, FieldSites, HeisenbergModel, Pauli, PauliString, PauliSum, PhaseWindow,
    ScaledProblem,
};
pub use linalg::{
    eig_hermitian, fidelity, random_hermitian, random_uniform_state, random_unit_vector,
    unitary_exp, ComplexMatrix, SpectralDecomposition, StateVector, C64,
};
pub use qpe::{
    apply_qpe, apply_qpe_inverse, measure_eigenvalue_register, qft, qft_inverse,
    register_distribution, PhaseReadout, QpeCircuit, RegisterLayout,
};
pub use solver::{
    min_repetitions, prepare_initial_states, prob_basis_set_hit, prob_overlap_at_least_1_over_n,
    solve_type2, verify_candidate, InitialStrategy, OracleMode, SearchSetup, SolveStatus,
    SolverConfig, SolverResult, TrialRecord,
};
