//! Reproduction drivers for the Heisenberg and H₂ experiments, the
//! query-versus-sampling scaling benchmark and Monte Carlo checks of the
//! overlap probability laws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::fixedpoint::{query_count_ylc, run_schedule, ylc_schedule, EigenWindow, TargetOracle};
use crate::hamiltonian::{build_h2_jw, build_heisenberg, Boundary, FieldSites, HeisenbergModel, PauliSum};
use crate::linalg::{eig_hermitian, random_unit_vector, SpectralDecomposition, StateVector};
use crate::solver::{prob_basis_set_hit, trial_rng, OracleMode, SearchSetup};

/// Tolerance used when matching reference overlaps.
pub const PATTERN_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// 4-site Heisenberg chain.
    One,
    /// 5-site Heisenberg chain.
    Two,
    /// H₂ in a minimal basis.
    Three,
}

impl Table {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(Table::One),
            2 => Some(Table::Two),
            3 => Some(Table::Three),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Table::One => 1,
            Table::Two => 2,
            Table::Three => 3,
        }
    }
}

/// One reference `(overlap, fidelity)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub overlap: f64,
    pub fidelity: f64,
}

const fn row(overlap: f64, fidelity: f64) -> ReferenceRow {
    ReferenceRow { overlap, fidelity }
}

/// How the target eigenstate is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetRule {
    /// The eigenvector whose basis-state overlaps contain these values.
    OverlapPattern(Vec<f64>),
    /// The eigenvalue nearest this point, which is also used as `λ₀`.
    NearestTo(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TablePreset {
    pub table: Table,
    pub hamiltonian: PauliSum,
    /// Query count used for the table.
    pub queries: usize,
    pub target: TargetRule,
    /// Reference basis-state rows with nonzero overlap.
    pub basis_rows: Vec<ReferenceRow>,
    /// Reference minimum fidelity over basis states with `p ≥ 1/N`.
    pub basis_min_fidelity: f64,
    /// Reference minimum fidelity over random states with `p ≥ 1/N`.
    pub random_min_fidelity: f64,
}

fn heisenberg_variant(n: usize, jx: f64, jy: f64, jz: f64, h: f64) -> PauliSum {
    HeisenbergModel {
        sites: n,
        jx,
        jy,
        jz,
        h,
        boundary: Boundary::Periodic,
        field: FieldSites::AllButLast,
    }
    .build()
    .expect("n >= 2")
}

pub fn table_preset(table: Table) -> TablePreset {
    match table {
        Table::One => TablePreset {
            table,
            hamiltonian: heisenberg_variant(4, 0.2365, 0.8237, 0.3689, 0.7326),
            queries: 11,
            target: TargetRule::OverlapPattern(vec![0.1404, 0.1301, 0.0645, 0.0645, 0.0084]),
            basis_rows: vec![
                row(0.0084, 0.3931),
                row(0.0645, 0.9956),
                row(0.1404, 0.9960),
                row(0.1301, 0.9933),
                row(0.0645, 0.9956),
            ],
            basis_min_fidelity: 0.9933,
            random_min_fidelity: 0.9892,
        },
        Table::Two => TablePreset {
            table,
            hamiltonian: heisenberg_variant(5, 0.9489, 0.3456, 0.5629, 0.7475),
            queries: 16,
            target: TargetRule::OverlapPattern(vec![0.1853, 0.1128, 0.1128, 0.1105, 0.0285]),
            basis_rows: vec![
                row(0.1853, 0.9937),
                row(0.1105, 0.9967),
                row(0.1128, 0.9981),
                row(0.1128, 0.9981),
                row(0.0285, 0.9793),
            ],
            basis_min_fidelity: 0.9937,
            random_min_fidelity: 0.9724,
        },
        Table::Three => TablePreset {
            table,
            hamiltonian: build_h2_jw(),
            queries: 11,
            target: TargetRule::NearestTo(-0.8837),
            basis_rows: vec![row(0.5, 0.9917), row(0.5, 0.9917)],
            basis_min_fidelity: 0.9917,
            random_min_fidelity: 0.9870,
        },
    }
}

/// The chain exactly as written, with the field on every site. Its
/// eigenvectors do not carry the reference overlap patterns.
pub fn literal_heisenberg(table: Table) -> Option<PauliSum> {
    match table {
        Table::One => Some(build_heisenberg(4, 0.2365, 0.8237, 0.3689, 0.7326, true).expect("n >= 2")),
        Table::Two => Some(build_heisenberg(5, 0.9489, 0.3456, 0.5629, 0.7475, true).expect("n >= 2")),
        Table::Three => None,
    }
}

/// Assigns each pattern value to a distinct entry of `values` within `tol`.
/// Returns the chosen indices in pattern order.
pub fn match_pattern(values: &[f64], pattern: &[f64], tol: f64) -> Option<Vec<usize>> {
    fn go(values: &[f64], pattern: &[f64], tol: f64, used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        let Some(&want) = pattern.get(out.len()) else {
            return true;
        };
        for (i, &v) in values.iter().enumerate() {
            if !used[i] && (v - want).abs() <= tol {
                used[i] = true;
                out.push(i);
                if go(values, pattern, tol, used, out) {
                    return true;
                }
                out.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut used = vec![false; values.len()];
    let mut out = Vec::with_capacity(pattern.len());
    go(values, pattern, tol, &mut used, &mut out).then_some(out)
}

/// Squared overlaps `|⟨x|u_k⟩|²` of eigenvector `k` with every basis state.
pub fn basis_overlaps(spec: &SpectralDecomposition, k: usize) -> Vec<f64> {
    spec.eigenvector(k).iter().map(|a| a.norm_sqr()).collect()
}

/// Indices of eigenvectors whose basis overlaps contain `pattern`.
pub fn eigenvectors_matching(spec: &SpectralDecomposition, pattern: &[f64], tol: f64) -> Vec<usize> {
    (0..spec.dim())
        .filter(|&k| match_pattern(&basis_overlaps(spec, k), pattern, tol).is_some())
        .collect()
}

/// Target eigenpair for a reproduction run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReproTarget {
    pub index: usize,
    pub eigenvalue: f64,
    pub lambda0: f64,
    /// Half the gap to the nearest distinct eigenvalue.
    pub epsilon: f64,
}

fn half_gap(eigenvalues: &[f64], target: f64) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| (l - target).abs())
        .filter(|&d| d > 1e-9)
        .fold(f64::INFINITY, f64::min)
        / 2.0
}

pub fn identify_target(preset: &TablePreset) -> Result<ReproTarget> {
    let spec = eig_hermitian(&preset.hamiltonian.to_matrix()?)?;
    let (index, lambda0) = match &preset.target {
        TargetRule::OverlapPattern(pattern) => {
            let found = eigenvectors_matching(&spec, pattern, PATTERN_TOLERANCE);
            let &k = found
                .first()
                .ok_or_else(|| invalid("no eigenvector carries the overlap pattern"))?;
            (k, spec.eigenvalues()[k])
        }
        TargetRule::NearestTo(point) => {
            let k = (0..spec.dim())
                .min_by(|&a, &b| {
                    let da = (spec.eigenvalues()[a] - point).abs();
                    let db = (spec.eigenvalues()[b] - point).abs();
                    da.total_cmp(&db)
                })
                .expect("nonempty spectrum");
            (k, *point)
        }
    };
    let eigenvalue = spec.eigenvalues()[index];
    Ok(ReproTarget {
        index,
        eigenvalue,
        lambda0,
        epsilon: half_gap(spec.eigenvalues(), eigenvalue),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproRow {
    pub label: String,
    pub overlap: f64,
    pub fidelity: f64,
    pub measured_eigenvalue: f64,
    pub queries: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowComparison {
    pub reference: ReferenceRow,
    pub label: String,
    pub overlap: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reproduction {
    pub table: Table,
    pub target: ReproTarget,
    pub iterations: usize,
    /// All basis states in index order, then the random states.
    pub rows: Vec<ReproRow>,
    pub comparisons: Vec<RowComparison>,
    /// Smallest fidelity among basis rows with `p ≥ 1/N`.
    pub basis_min_fidelity: Option<f64>,
    pub random_min_fidelity: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproOptions {
    pub r: usize,
    pub delta: f64,
    pub random_states: usize,
    pub seed: u64,
    pub mode: OracleMode,
    /// Overrides the half-gap window.
    pub epsilon: Option<f64>,
}

impl Default for ReproOptions {
    fn default() -> Self {
        Self {
            r: 7,
            delta: 0.01,
            random_states: 11,
            seed: 0,
            mode: OracleMode::Circuit,
            epsilon: None,
        }
    }
}

/// Runs the search from every basis state and from seeded random states,
/// using the reference query count.
pub fn reproduce(table: Table, options: &ReproOptions) -> Result<Reproduction> {
    let preset = table_preset(table);
    let target = identify_target(&preset)?;
    let epsilon = options.epsilon.unwrap_or(target.epsilon);
    let iterations = preset.queries.div_ceil(2);
    let setup = SearchSetup::new(
        &preset.hamiltonian,
        target.lambda0,
        epsilon,
        options.r,
        options.delta,
        iterations,
        options.mode,
    )?;
    let n = preset.hamiltonian.num_qubits();
    let dim = 1usize << n;

    let mut inputs: Vec<(String, StateVector)> = (0..dim)
        .map(|x| Ok((format!("x{x}"), StateVector::basis(n, x)?)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for k in 0..options.random_states {
        inputs.push((format!("y{}", k + 1), StateVector::from_amplitudes(random_unit_vector(dim, &mut rng))?));
    }

    let rows: Vec<ReproRow> = inputs
        .par_iter()
        .enumerate()
        .map(|(t, (label, phi))| {
            let out = setup.run_trial(phi, &mut trial_rng(options.seed, 0, t))?;
            Ok(ReproRow {
                label: label.clone(),
                overlap: out.overlap,
                fidelity: out.fidelity,
                measured_eigenvalue: out.measured_eigenvalue,
                queries: out.queries,
            })
        })
        .collect::<Result<_>>()?;

    let floor = 1.0 / dim as f64;
    let min_f = |rows: &[ReproRow]| {
        rows.iter()
            .filter(|r| r.overlap >= floor)
            .map(|r| r.fidelity)
            .reduce(f64::min)
    };
    let comparisons = compare_rows(&preset.basis_rows, &rows[..dim]);
    Ok(Reproduction {
        table,
        basis_min_fidelity: min_f(&rows[..dim]),
        random_min_fidelity: min_f(&rows[dim..]),
        target,
        iterations,
        rows,
        comparisons,
    })
}

/// Pairs each reference row with the unused basis row of nearest overlap.
fn compare_rows(reference: &[ReferenceRow], rows: &[ReproRow]) -> Vec<RowComparison> {
    let mut used = vec![false; rows.len()];
    reference
        .iter()
        .filter_map(|p| {
            let (i, r) = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|a, b| {
                    (a.1.overlap - p.overlap)
                        .abs()
                        .total_cmp(&(b.1.overlap - p.overlap).abs())
                })?;
            used[i] = true;
            Some(RowComparison {
                reference: *p,
                label: r.label.clone(),
                overlap: r.overlap,
                fidelity: r.fidelity,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMethod {
    /// Fixed-point search, repeated from fresh random states until success.
    Query,
    /// One phase estimation per fresh random state until the target is read.
    QpeSampling,
}

impl BenchMethod {
    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::Query => "query",
            BenchMethod::QpeSampling => "qpe_sampling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub method: BenchMethod,
    pub mean_oracle_calls: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub query_slope: f64,
    pub qpe_slope: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Oracle calls needed to find a single marked eigenvector of an `n`-qubit
/// operator, averaged over `repetitions`, with the oracle realized exactly.
///
/// A readout succeeds with the Born probability of the target, so a search
/// costs `2l + 1` calls per attempt and QPE sampling costs one call per
/// fresh state.
pub fn bench_type2(ns: &[usize], repetitions: usize, delta: f64, seed: u64) -> Result<BenchReport> {
    if repetitions == 0 || ns.len() < 2 {
        return Err(invalid("need at least two sizes and one repetition"));
    }
    let mut rows = Vec::new();
    for &n in ns {
        if !(1..=10).contains(&n) {
            return Err(invalid(format!("ideal-mode benchmark supports 1 <= n <= 10, got {n}")));
        }
        let dim = 1usize << n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let target = random_unit_vector(dim, &mut rng);
        let window = EigenWindow::from_vectors(vec![target])?;
        let count = query_count_ylc(1.0 / dim as f64, delta)?;
        let schedule = ylc_schedule(count.iterations.max(1), delta)?;
        let per_attempt = 2 * schedule.l + 1;

        let calls: Vec<(usize, usize)> = (0..repetitions)
            .into_par_iter()
            .map(|rep| {
                let mut rng = trial_rng(seed, n, rep);
                let mut query = 0;
                loop {
                    let phi = StateVector::from_amplitudes(random_unit_vector(dim, &mut rng))?;
                    let mut s = phi.clone();
                    run_schedule(&mut s, &phi, TargetOracle::Ideal(&window), &schedule)?;
                    query += per_attempt;
                    if rng.random::<f64>() < window.weight(s.amplitudes()) {
                        break;
                    }
                }
                let mut sampling = 0;
                loop {
                    let phi = random_unit_vector(dim, &mut rng);
                    sampling += 1;
                    if rng.random::<f64>() < window.weight(&phi) {
                        break;
                    }
                }
                Ok((query, sampling))
            })
            .collect::<Result<_>>()?;
        let mean = |f: fn(&(usize, usize)) -> usize| {
            calls.iter().map(f).sum::<usize>() as f64 / repetitions as f64
        };
        rows.push(BenchRow {
            n,
            method: BenchMethod::Query,
            mean_oracle_calls: mean(|c| c.0),
        });
        rows.push(BenchRow {
            n,
            method: BenchMethod::QpeSampling,
            mean_oracle_calls: mean(|c| c.1),
        });
    }
    let slope = |m: BenchMethod| {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.method == m)
            .map(|r| ((1usize << r.n) as f64, r.mean_oracle_calls))
            .collect();
        loglog_slope(&pts)
    };
    Ok(BenchReport {
        query_slope: slope(BenchMethod::Query),
        qpe_slope: slope(BenchMethod::QpeSampling),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbCheck {
    pub dim: u64,
    pub m: u64,
    pub shots: usize,
    pub formula: f64,
    pub empirical: f64,
    /// `(empirical − formula) / σ` with the binomial standard error.
    pub z: f64,
}

/// Samples Haar-random states in `C^N` and counts how often one of the
/// first `m` basis states has squared overlap at least `1/N`.
pub fn probcheck(dim: u64, m: u64, shots: usize, seed: u64) -> Result<ProbCheck> {
    if shots == 0 {
        return Err(invalid("shots must be positive"));
    }
    let formula = prob_basis_set_hit(m, dim)?;
    let d = dim as usize;
    let threshold = 1.0 / dim as f64;
    const CHUNK: usize = 4096;
    let hits: usize = (0..shots.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = trial_rng(seed, 0, c);
            let count = CHUNK.min(shots - c * CHUNK);
            (0..count)
                .filter(|_| {
                    let v = random_unit_vector(d, &mut rng);
                    v[..m as usize].iter().any(|a| a.norm_sqr() >= threshold)
                })
                .count()
        })
        .sum();
    let empirical = hits as f64 / shots as f64;
    let sigma = (formula * (1.0 - formula) / shots as f64).sqrt();
    let z = if sigma > 0.0 {
        (empirical - formula) / sigma
    } else if empirical == formula {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ProbCheck {
        dim,
        m,
        shots,
        formula,
        empirical,
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_matching_uses_distinct_entries() {
        let v = [0.1, 0.2, 0.1005, 0.3];
        assert_eq!(match_pattern(&v, &[0.1, 0.1], 1e-3), Some(vec![0, 2]));
        assert_eq!(match_pattern(&v, &[0.1, 0.1, 0.1], 1e-3), None);
        assert_eq!(match_pattern(&v, &[], 1e-3), Some(vec![]));
        // Greedy first choice must be undone for the second value.
        assert_eq!(match_pattern(&[0.1004, 0.1010], &[0.1006, 0.1011], 6e-4), Some(vec![0, 1]));
    }

    #[test]
    fn h2_target_and_window() {
        let t = identify_target(&table_preset(Table::Three)).unwrap();
        assert!((t.eigenvalue + 0.8837).abs() < 1e-3);
        assert_eq!(t.lambda0, -0.8837);
        assert!(t.epsilon > 0.0);
    }

    #[test]
    fn table_one_target_is_ground_state() {
        let t = identify_target(&table_preset(Table::One)).unwrap();
        assert_eq!(t.index, 0);
        assert!((t.eigenvalue + 4.22158).abs() < 1e-4);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 3.0 * (k as f64).powf(0.5))).collect();
        assert!((loglog_slope(&pts) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn probcheck_small_case() {
        let c = probcheck(2, 1, 20_000, 4).unwrap();
        assert_eq!(c.formula, 0.5);
        assert!(c.z.abs() < 4.0);
    }

    #[test]
    fn table_numbers_round_trip() {
        for k in 1..=3 {
            assert_eq!(Table::from_number(k).unwrap().number(), k);
        }
        assert!(Table::from_number(4).is_none());
    }
}
