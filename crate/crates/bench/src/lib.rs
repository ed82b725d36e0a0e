//! Shared fixtures for the criterion benches.

use queig_core::{
    build_h2_jw, random_hermitian, random_uniform_state, ComplexMatrix, HeisenbergModel, OracleMode,
    PauliSum, QpeCircuit, SearchSetup, StateVector,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const H2_LAMBDA0: f64 = -0.8837;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hermitian(dim: usize) -> ComplexMatrix {
    random_hermitian(dim, &mut rng(dim as u64))
}

pub fn heisenberg(sites: usize) -> PauliSum {
    HeisenbergModel {
        sites,
        jx: 0.9489,
        jy: 0.3456,
        jz: 0.5629,
        h: 0.7475,
        boundary: queig_core::Boundary::Periodic,
        field: queig_core::FieldSites::AllButLast,
    }
    .build()
    .expect("valid chain")
}

/// The H₂ search with the usual register size and six Grover steps.
pub fn h2_setup(mode: OracleMode) -> SearchSetup {
    SearchSetup::new(&build_h2_jw(), H2_LAMBDA0, 0.01, 7, 0.01, 6, mode).expect("valid setup")
}

pub fn qpe_circuit(setup: &SearchSetup) -> QpeCircuit {
    QpeCircuit::new(setup.problem(), setup.layout()).expect("matching sizes")
}

pub fn system_state(n: usize, seed: u64) -> StateVector {
    random_uniform_state(n, &mut rng(seed)).expect("small register")
}

/// `phi` on the system register, phase register cleared, ancilla set.
pub fn register_state(setup: &SearchSetup, phi: &StateVector) -> StateVector {
    setup.layout().compose(phi, 0, 1).expect("matching sizes")
}
