use queig_core::{
    build_h2_jw, eig_hermitian, fidelity, measure_eigenvalue_register, random_uniform_state, solve_type2,
    verify_candidate, AffineMap, ComplexMatrix, InitialStrategy, OracleMode, RegisterLayout,
    ScaledProblem, SolveStatus, SolverConfig, StateVector, C64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn h2_config() -> SolverConfig {
    SolverConfig {
        lambda0: -0.8837,
        epsilon: 0.01,
        ..SolverConfig::default()
    }
}

#[test]
fn h2_basis_search_finds_target() {
    let h = build_h2_jw();
    let res = solve_type2(&h, &h2_config()).unwrap();
    assert_eq!(res.status, SolveStatus::Found);
    let sol = res.solution.as_ref().unwrap();
    assert!((sol.eigenvalue + 0.8837).abs() <= 0.01);
    assert!(res.trials.iter().any(|t| t.fidelity >= 0.99));
    let tol = 10.0 * 4.0 * h.shift(-0.8837).coefficient_one_norm() / 128.0;
    assert!(verify_candidate(&h, sol.eigenvalue, &sol.eigenvector).unwrap() <= tol);
    for t in &res.trials {
        assert!((0.0..=1.0).contains(&t.fidelity));
        assert_eq!(t.queries, 2 * 6 + 1);
    }
}

#[test]
fn h2_random_states_in_ideal_mode() {
    let config = SolverConfig {
        strategy: InitialStrategy::Random,
        mode: OracleMode::Ideal,
        seed: 4,
        ..h2_config()
    };
    let res = solve_type2(&build_h2_jw(), &config).unwrap();
    assert_eq!(res.status, SolveStatus::Found);
    assert_eq!(res.trials.len(), 11);
    for t in res.trials.iter().filter(|t| t.overlap >= 1.0 / 16.0) {
        assert!(t.fidelity >= 0.98, "{t:?}");
    }
}

#[test]
fn far_target_enlarges_window_then_finds() {
    let h = build_h2_jw();
    let spec = eig_hermitian(&h.to_matrix().unwrap()).unwrap();
    let ground = spec.eigenvalues()[0];
    let config = SolverConfig {
        lambda0: ground - 0.5,
        epsilon: 0.1,
        trials: 16,
        ..SolverConfig::default()
    };
    let res = solve_type2(&h, &config).unwrap();
    assert_eq!(res.status, SolveStatus::Found);
    // 0.1, 0.2 and 0.4 miss; 0.8 captures the ground state and nothing else.
    assert_eq!(res.epsilon_used, 0.8);
    assert!(res.trials.iter().any(|t| t.attempt > 0));
    let step = 4.0 * h.shift(config.lambda0).coefficient_one_norm() / 128.0;
    let sol = res.solution.unwrap();
    assert!((sol.eigenvalue - config.lambda0).abs() <= 0.8 + step);
    assert!((sol.eigenvalue - ground).abs() <= 2.0 * step, "found {}, ground {ground}", sol.eigenvalue);
    let ground_vec = StateVector::from_amplitudes(spec.eigenvector(0)).unwrap();
    assert!(fidelity(&sol.eigenvector, &ground_vec).unwrap() >= 0.9);
}

#[test]
fn huge_shift_without_doublings_is_not_found() {
    let config = SolverConfig {
        lambda0: 1e6,
        max_epsilon_doublings: 0,
        ..h2_config()
    };
    let res = solve_type2(&build_h2_jw(), &config).unwrap();
    assert_eq!(res.status, SolveStatus::NotFound);
    assert_eq!(res.queries_used, res.trials.len() * 13);
}

#[test]
fn measurement_statistics_of_equal_superposition() {
    let problem = ScaledProblem::from_scaled_matrix(
        ComplexMatrix::from_real_diagonal(&[0.0, 0.25]),
        AffineMap { offset: 1.0, scale: 4.0 },
    )
    .unwrap();
    let layout = RegisterLayout::new(2, 1).unwrap();
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); 16];
    amps[0b1_01_0] = h;
    amps[0b1_11_0] = h;
    let state = StateVector::from_amplitudes(amps).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let shots = 10_000;
    let mut ones = 0;
    for _ in 0..shots {
        let mut s = state.clone();
        let m = measure_eigenvalue_register(&mut s, &layout, &problem, &mut rng).unwrap();
        assert!(m.bits == 1 || m.bits == 3);
        assert_eq!(m.eigenvalue, problem.affine().to_eigenvalue(m.phase));
        ones += usize::from(m.bits == 1);
    }
    let sigma = (0.25 / shots as f64).sqrt();
    let freq = ones as f64 / shots as f64;
    assert!((freq - 0.5).abs() <= 3.0 * sigma, "frequency {freq}");
}

#[test]
fn random_states_are_rotation_invariant_in_distribution() {
    // The squared first amplitude of a Haar state and of a fixed rotation of
    // it have the same mean 1/N.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 3;
    let shots = 20_000;
    let (mut direct, mut rotated) = (0.0, 0.0);
    for _ in 0..shots {
        let s = random_uniform_state(n, &mut rng).unwrap();
        direct += s.amplitudes()[0].norm_sqr();
        let a = s.amplitudes();
        let mixed: C64 = a.iter().map(|x| x / (8f64).sqrt()).sum();
        rotated += mixed.norm_sqr();
    }
    let (direct, rotated) = (direct / shots as f64, rotated / shots as f64);
    assert!((direct - 0.125).abs() < 0.005);
    assert!((rotated - 0.125).abs() < 0.005);
}
