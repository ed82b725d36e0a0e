//! Pauli-sum Hamiltonians, the Heisenberg and H₂ builders, spectral shift and
//! rescaling into the phase-estimation window, and Hermitian embeddings.
//!
//! Pauli strings are written with the highest qubit on the left, so
//! `IIIZ` is `Z` acting on qubit 0, the least-significant bit of the
//! basis index.
//!
//! Text format, one term per line:
//!
//! ```text
//! # comment
//! -0.81261  IIII
//! 0.171201  IIIZ   # trailing comment
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix, SpectralDecomposition, C64};

/// Largest register `to_matrix` will realize densely.
pub const MAX_MATRIX_QUBITS: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; element `q` acts on qubit `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn identity(num_qubits: usize) -> Self {
        Self(vec![Pauli::I; num_qubits])
    }

    /// Identity except for the listed `(qubit, pauli)` factors.
    pub fn with_factors(num_qubits: usize, factors: &[(usize, Pauli)]) -> Result<Self> {
        let mut ops = vec![Pauli::I; num_qubits];
        for &(q, p) in factors {
            if q >= num_qubits {
                return Err(invalid(format!("qubit {q} out of range for {num_qubits} qubits")));
            }
            ops[q] = p;
        }
        Ok(Self(ops))
    }

    pub fn num_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        self.0[qubit]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Qubits flipped by the string (X or Y factors).
    fn flip_mask(&self) -> usize {
        self.mask(|p| matches!(p, Pauli::X | Pauli::Y))
    }

    /// Qubits contributing a sign (Z or Y factors).
    fn sign_mask(&self) -> usize {
        self.mask(|p| matches!(p, Pauli::Z | Pauli::Y))
    }

    fn mask(&self, pred: impl Fn(Pauli) -> bool) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| pred(p))
            .fold(0, |m, (q, _)| m | (1 << q))
    }

    fn y_count(&self) -> usize {
        self.0.iter().filter(|&&p| p == Pauli::Y).count()
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(invalid("empty Pauli string"));
        }
        let mut ops = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| invalid(format!("invalid Pauli letter '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        ops.reverse();
        Ok(Self(ops))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.0.iter().rev() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// Real-weighted sum of Pauli strings. Duplicate strings are merged on insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        num_qubits: usize,
        terms: impl IntoIterator<Item = (f64, PauliString)>,
    ) -> Result<Self> {
        let mut sum = Self::new(num_qubits);
        for (c, p) in terms {
            sum.add_term(c, p)?;
        }
        Ok(sum)
    }

    pub fn add_term(&mut self, coefficient: f64, pauli: PauliString) -> Result<()> {
        if !coefficient.is_finite() {
            return Err(invalid(format!("non-finite coefficient {coefficient}")));
        }
        if pauli.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: pauli.num_qubits(),
            });
        }
        match self.terms.iter_mut().find(|(_, p)| *p == pauli) {
            Some((c, _)) => *c += coefficient,
            None => self.terms.push((coefficient, pauli)),
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, pauli: &PauliString) -> f64 {
        self.terms
            .iter()
            .find(|(_, p)| p == pauli)
            .map_or(0.0, |(c, _)| *c)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.coefficient(&PauliString::identity(self.num_qubits))
    }

    /// `Λ = Σ |c|`, an upper bound on the spectral radius.
    pub fn coefficient_one_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| *c == 0.0)
    }

    /// `H − λ₀ I`.
    pub fn shift(&self, lambda0: f64) -> PauliSum {
        let mut out = self.clone();
        if lambda0 != 0.0 {
            out.add_term(-lambda0, PauliString::identity(self.num_qubits))
                .expect("identity string has matching width");
        }
        out
    }

    /// Dense `2^n × 2^n` realization.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.num_qubits > MAX_MATRIX_QUBITS {
            return Err(Error::TooManyQubits {
                requested: self.num_qubits,
                max: MAX_MATRIX_QUBITS,
            });
        }
        let dim = 1usize << self.num_qubits;
        let mut m = ComplexMatrix::zeros(dim);
        for (c, p) in &self.terms {
            let flip = p.flip_mask();
            let sign = p.sign_mask();
            // Y = iXZ: one factor of i per Y, the Z part signs the input bit.
            let i_pow = match p.y_count() % 4 {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, 1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, -1.0),
            };
            let base = i_pow * *c;
            for col in 0..dim {
                let v = if (col & sign).count_ones() % 2 == 0 { base } else { -base };
                m[(col ^ flip, col)] += v;
            }
        }
        Ok(m)
    }

    /// One term per line in the text format.
    pub fn to_text(&self) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{c} {p}\n"))
            .collect()
    }
}

impl FromStr for PauliSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sum: Option<PauliSum> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected '<coefficient> <pauli_string>', got '{content}'"),
                });
            }
            let coefficient: f64 = fields[0].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid coefficient '{}'", fields[0]),
            })?;
            let pauli: PauliString = fields[1].parse().map_err(|e: Error| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            let target = sum.get_or_insert_with(|| PauliSum::new(pauli.num_qubits()));
            target.add_term(coefficient, pauli).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        sum.ok_or(Error::Parse {
            line: 0,
            message: "no terms found".into(),
        })
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
}

/// Which sites carry the `h σ^z` field term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldSites {
    /// Every site, as in the Hamiltonian written out for the chain.
    #[default]
    All,
    /// Every site except the last. This is the variant whose eigenvectors
    /// carry the reference 4- and 5-site overlap tables.
    AllButLast,
}

/// XYZ Heisenberg chain with a uniform longitudinal field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergModel {
    pub sites: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub h: f64,
    pub boundary: Boundary,
    pub field: FieldSites,
}

impl HeisenbergModel {
    pub fn build(&self) -> Result<PauliSum> {
        let n = self.sites;
        if n < 2 {
            return Err(invalid(format!("Heisenberg chain needs at least 2 sites, got {n}")));
        }
        let bonds = match self.boundary {
            Boundary::Periodic => n,
            Boundary::Open => n - 1,
        };
        let mut sum = PauliSum::new(n);
        for j in 0..bonds {
            let k = (j + 1) % n;
            for (c, p) in [(self.jx, Pauli::X), (self.jy, Pauli::Y), (self.jz, Pauli::Z)] {
                sum.add_term(c, PauliString::with_factors(n, &[(j, p), (k, p)])?)?;
            }
        }
        let field_sites = match self.field {
            FieldSites::All => n,
            FieldSites::AllButLast => n - 1,
        };
        for j in 0..field_sites {
            sum.add_term(self.h, PauliString::with_factors(n, &[(j, Pauli::Z)])?)?;
        }
        Ok(sum)
    }
}

/// `Σ_j Jx σˣⱼσˣⱼ₊₁ + Jy σʸⱼσʸⱼ₊₁ + Jz σᶻⱼσᶻⱼ₊₁ + h σᶻⱼ` over all `n` sites.
pub fn build_heisenberg(n: usize, jx: f64, jy: f64, jz: f64, h: f64, periodic: bool) -> Result<PauliSum> {
    HeisenbergModel {
        sites: n,
        jx,
        jy,
        jz,
        h,
        boundary: if periodic { Boundary::Periodic } else { Boundary::Open },
        field: FieldSites::All,
    }
    .build()
}

/// Jordan–Wigner qubit Hamiltonian of H₂ (4 spin orbitals, 15 terms).
pub fn build_h2_jw() -> PauliSum {
    const TERMS: [(f64, &str); 15] = [
        (-0.81261, "IIII"),
        (0.171201, "IIIZ"),
        (0.171201, "IIZI"),
        (-0.2227965, "IZII"),
        (-0.2227965, "ZIII"),
        (0.16862325, "IIZZ"),
        (0.12054625, "IZIZ"),
        (0.165868, "IZZI"),
        (0.165868, "ZIIZ"),
        (0.12054625, "ZIZI"),
        (0.17434925, "ZZII"),
        (-0.04532175, "XXYY"),
        (0.04532175, "XYYX"),
        (0.04532175, "YXXY"),
        (-0.04532175, "YYXX"),
    ];
    PauliSum::from_terms(
        4,
        TERMS.iter().map(|&(c, s)| (c, s.parse().expect("valid literal"))),
    )
    .expect("literal terms are well-formed")
}

/// `phase = (λ + offset) / scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub offset: f64,
    pub scale: f64,
}

impl AffineMap {
    pub fn to_phase(&self, eigenvalue: f64) -> f64 {
        (eigenvalue + self.offset) / self.scale
    }

    pub fn to_eigenvalue(&self, phase: f64) -> f64 {
        phase * self.scale - self.offset
    }
}

/// Closed interval of phases in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseWindow {
    pub lo: f64,
    pub hi: f64,
}

impl PhaseWindow {
    pub fn contains(&self, phase: f64) -> bool {
        self.lo <= phase && phase <= self.hi
    }
}

/// A Hermitian operator rescaled so every eigenphase of `e^{2πiA_s}` lies in
/// `[0, 1/2]`, together with the map back to eigenvalue units and the search
/// window around the target phase.
#[derive(Debug, Clone)]
pub struct ScaledProblem {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
    coefficient_bound: f64,
    affine: AffineMap,
    window: PhaseWindow,
}

/// `A_s = (H̃ + ΛI)/(4Λ)` with `Λ` the coefficient one-norm of `H̃`. The
/// target `λ̃ = 0` lands on phase 1/4; the window starts collapsed there.
pub fn scale_for_qpe(h_shifted: &PauliSum) -> Result<ScaledProblem> {
    let lambda = h_shifted.coefficient_one_norm();
    if lambda == 0.0 {
        return Err(invalid("cannot scale the zero operator"));
    }
    let affine = AffineMap {
        offset: lambda,
        scale: 4.0 * lambda,
    };
    let dim = 1usize << h_shifted.num_qubits();
    let h = h_shifted.to_matrix()?;
    let shifted = h.add(&ComplexMatrix::identity(dim).scale(C64::new(lambda, 0.0)))?;
    let matrix = shifted.scale(C64::new(1.0 / affine.scale, 0.0));
    let spectrum = eig_hermitian(&matrix)?;
    let target = affine.to_phase(0.0);
    Ok(ScaledProblem {
        matrix,
        spectrum,
        coefficient_bound: lambda,
        affine,
        window: PhaseWindow { lo: target, hi: target },
    })
}

impl ScaledProblem {
    /// Wraps an already-scaled Hermitian matrix whose eigenvalues lie in `[0, 1)`.
    pub fn from_scaled_matrix(matrix: ComplexMatrix, affine: AffineMap) -> Result<Self> {
        if !matrix.dim().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(matrix.dim()));
        }
        let spectrum = eig_hermitian(&matrix)?;
        let (lo, hi) = (spectrum.eigenvalues()[0], spectrum.eigenvalues()[matrix.dim() - 1]);
        if lo < -1e-12 || hi >= 1.0 {
            return Err(invalid(format!("scaled spectrum [{lo}, {hi}] is outside [0, 1)")));
        }
        let target = affine.to_phase(0.0);
        Ok(Self {
            matrix,
            spectrum,
            coefficient_bound: affine.scale / 4.0,
            affine,
            window: PhaseWindow { lo: target, hi: target },
        })
    }

    /// Window of half-width `epsilon` (eigenvalue units) around the target phase,
    /// clipped to `[0, 1)`.
    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(invalid(format!("epsilon must be finite and >= 0, got {epsilon}")));
        }
        let target = self.target_phase();
        let half = epsilon / self.affine.scale;
        self.window = PhaseWindow {
            lo: (target - half).max(0.0),
            hi: (target + half).min(1.0 - f64::EPSILON),
        };
        Ok(self)
    }

    pub fn with_window(mut self, window: PhaseWindow) -> Self {
        self.window = window;
        self
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Spectral decomposition of the scaled matrix; its eigenvalues are phases.
    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn coefficient_bound(&self) -> f64 {
        self.coefficient_bound
    }

    pub fn affine(&self) -> AffineMap {
        self.affine
    }

    pub fn window(&self) -> PhaseWindow {
        self.window
    }

    pub fn target_phase(&self) -> f64 {
        self.affine.to_phase(0.0)
    }

    pub fn num_qubits(&self) -> usize {
        self.matrix.dim().trailing_zeros() as usize
    }
}

/// `[[0, A], [A†, 0]]`; its nonnegative eigenvalues are the singular values of `A`.
pub fn hermitian_embed(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => a[(i, j - n)],
        (false, true) => a[(j, i - n)].conj(),
        _ => C64::new(0.0, 0.0),
    })
}

/// `(A + A†, i(A − A†))`, both Hermitian.
pub fn normal_parts(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = a.adjoint();
    let sum = a.add(&adj).expect("same dimension");
    let diff = a.sub(&adj).expect("same dimension").scale(C64::new(0.0, 1.0));
    (sum, diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(h: &PauliSum) -> Vec<f64> {
        eig_hermitian(&h.to_matrix().unwrap()).unwrap().eigenvalues().to_vec()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn heisenberg_two_site_periodic_spectrum() {
        let h = build_heisenberg(2, 1.0, 1.0, 1.0, 0.0, true).unwrap();
        // The (1,2) and (2,1) bonds are one Pauli string, so they merge.
        assert_eq!(h.len(), 5);
        assert_close(&spectrum(&h), &[-6.0, 2.0, 2.0, 2.0], 1e-12);
    }

    #[test]
    fn heisenberg_term_counts() {
        for n in 3..7 {
            assert_eq!(build_heisenberg(n, 0.3, 0.2, 0.1, 0.5, true).unwrap().len(), 4 * n);
            assert_eq!(build_heisenberg(n, 0.3, 0.2, 0.1, 0.5, false).unwrap().len(), 4 * n - 3);
        }
        assert!(build_heisenberg(1, 1.0, 1.0, 1.0, 1.0, true).is_err());
    }

    #[test]
    fn heisenberg_zero_couplings_is_zero_operator() {
        let h = build_heisenberg(4, 0.0, 0.0, 0.0, 0.0, true).unwrap();
        assert!(h.is_zero());
        let m = h.to_matrix().unwrap();
        assert_eq!(m.frobenius_norm(), 0.0);
    }

    #[test]
    fn field_variant_drops_last_site() {
        let model = HeisenbergModel {
            sites: 4,
            jx: 0.2365,
            jy: 0.8237,
            jz: 0.3689,
            h: 0.7326,
            boundary: Boundary::Periodic,
            field: FieldSites::AllButLast,
        };
        let h = model.build().unwrap();
        assert_eq!(h.len(), 15);
        assert_eq!(h.coefficient(&"ZIII".parse().unwrap()), 0.0);
        assert_eq!(h.coefficient(&"IIIZ".parse().unwrap()), 0.7326);
    }

    #[test]
    fn h2_coefficients_are_literal() {
        let h = build_h2_jw();
        assert_eq!(h.len(), 15);
        assert_eq!(h.identity_coefficient(), -0.81261);
        assert_eq!(h.coefficient(&"ZZII".parse().unwrap()), 0.17434925);
        assert_eq!(h.coefficient(&"IIIZ".parse().unwrap()), 0.171201);
        assert_eq!(h.coefficient(&"XXYY".parse().unwrap()), -0.04532175);
    }

    #[test]
    fn shift_moves_identity_only() {
        let h = build_h2_jw();
        assert_eq!(h.shift(0.0), h);
        let s = h.shift(-0.8837);
        assert!((s.identity_coefficient() - 0.07109).abs() < 1e-12);
        for ((c1, p1), (c2, p2)) in h.terms().iter().zip(s.terms()).skip(1) {
            assert_eq!((c1, p1), (c2, p2));
        }
        let before = spectrum(&h);
        let after = spectrum(&s);
        let moved: Vec<f64> = before.iter().map(|l| l + 0.8837).collect();
        assert_close(&after, &moved, 1e-10);
    }

    #[test]
    fn single_z_and_xx_realizations() {
        let z: PauliSum = "1.0 Z".parse().unwrap();
        let m = z.to_matrix().unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, -1.0])) < 1e-15);

        let xs: PauliSum = "0.5 XI\n0.5 IX".parse().unwrap();
        assert_close(&spectrum(&xs), &[-1.0, 0.0, 0.0, 1.0], 1e-12);

        let h2 = build_h2_jw().to_matrix().unwrap();
        assert_eq!(h2.dim(), 16);
        assert!(h2.is_hermitian(0.0));
    }

    #[test]
    fn y_matrix_convention() {
        let y: PauliSum = "1 Y".parse().unwrap();
        let m = y.to_matrix().unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(m[(1, 0)], C64::new(0.0, 1.0));
    }

    #[test]
    fn oversized_matrix_rejected() {
        let h = PauliSum::from_terms(14, [(1.0, PauliString::identity(14))]).unwrap();
        assert!(matches!(h.to_matrix(), Err(Error::TooManyQubits { .. })));
    }

    #[test]
    fn scaling_of_single_z() {
        let z: PauliSum = "1 Z".parse().unwrap();
        let p = scale_for_qpe(&z).unwrap();
        assert_eq!(p.coefficient_bound(), 1.0);
        let expect = ComplexMatrix::from_real_diagonal(&[0.5, 0.0]);
        assert!(p.matrix().max_abs_diff(&expect) < 1e-15);
        assert_close(p.spectrum().eigenvalues(), &[0.0, 0.5], 1e-15);
        let w = p.with_epsilon(0.0).unwrap().window();
        assert_eq!((w.lo, w.hi), (0.25, 0.25));
    }

    #[test]
    fn window_half_width_in_phase_units() {
        let h = build_h2_jw().shift(-0.8837);
        let p = scale_for_qpe(&h).unwrap().with_epsilon(0.1).unwrap();
        let lam = h.coefficient_one_norm();
        let w = p.window();
        assert!((w.lo - (0.25 - 0.1 / (4.0 * lam))).abs() < 1e-15);
        assert!((w.hi - (0.25 + 0.1 / (4.0 * lam))).abs() < 1e-15);
    }

    #[test]
    fn zero_operator_cannot_be_scaled() {
        let h = build_heisenberg(3, 0.0, 0.0, 0.0, 0.0, true).unwrap();
        assert!(scale_for_qpe(&h).is_err());
    }

    #[test]
    fn embedding_of_identity_and_diagonal() {
        let e = hermitian_embed(&ComplexMatrix::identity(2));
        assert_close(eig_hermitian(&e).unwrap().eigenvalues(), &[-1.0, -1.0, 1.0, 1.0], 1e-14);
        let e = hermitian_embed(&ComplexMatrix::from_real_diagonal(&[3.0, 4.0]));
        assert_close(eig_hermitian(&e).unwrap().eigenvalues(), &[-4.0, -3.0, 3.0, 4.0], 1e-13);
    }

    #[test]
    fn normal_parts_of_hermitian() {
        let a = build_h2_jw().to_matrix().unwrap();
        let (s, d) = normal_parts(&a);
        assert!(s.max_abs_diff(&a.scale(C64::new(2.0, 0.0))) < 1e-15);
        assert_eq!(d.frobenius_norm(), 0.0);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let h = build_h2_jw();
        let back: PauliSum = h.to_text().parse().unwrap();
        assert_eq!(back, h);

        let parsed: PauliSum = "# header\n0.5 XZ  # c\n\n0.25 XZ\n".parse().unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed.terms()[0].0, 0.75);

        match "1.0 ZZ\nfoo ZZ".parse::<PauliSum>() {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match "1.0 ZZ\n1.0 ZZZ".parse::<PauliSum>() {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!("1.0 ZQ".parse::<PauliSum>().is_err());
        assert!("# nothing".parse::<PauliSum>().is_err());
    }
}
