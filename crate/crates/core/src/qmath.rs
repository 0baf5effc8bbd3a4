//! Dense complex linear algebra for small qubit registers: Hermitian
//! eigenvalues via cyclic Jacobi rotations, partial transpose, partial trace,
//! and trace/purity primitives.
//!
//! Basis convention, fixed project-wide: a register index is read as a bit
//! string with qubit `A` most significant and bit 0 meaning the excited
//! atomic level `e`, bit 1 the ground level `g`. For three qubits index 0 is
//! `|eee>` and index 7 is `|ggg>`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // used by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::Error;

/// Asymmetry above this is an error; below it is silently repaired by
/// symmetrization before eigensolving.
const HERMITICITY_TOL: f64 = 1e-10;
/// Jacobi sweeps stop once the off-diagonal Frobenius mass falls below this
/// (relative to the matrix scale).
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must equal
    /// `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self, Error> {
        if entries.len() != dim * dim {
            return Err(Error::BadMatrixData {
                dim,
                len: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Outer product `|ket><ket|` of an unnormalized amplitude vector.
    pub fn outer(ket: &[C64]) -> Self {
        let dim = ket.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.dim != rhs.dim {
            return Err(Error::BadMatrixData {
                dim: self.dim,
                len: rhs.entries.len(),
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Max entry-wise deviation from Hermitian symmetry, `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Max entry-wise absolute difference against another matrix of the same
    /// dimension (infinity if dimensions differ).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Qubit labels; `A` is the most significant bit of a register index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    pub fn position(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }
}

/// Unordered qubit pairs of a three-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitPair {
    AB,
    AC,
    BC,
}

impl QubitPair {
    pub const ALL: [QubitPair; 3] = [QubitPair::AB, QubitPair::AC, QubitPair::BC];

    /// The qubit that is traced out to reduce onto this pair.
    pub fn complement(self) -> Qubit {
        match self {
            QubitPair::AB => Qubit::C,
            QubitPair::AC => Qubit::B,
            QubitPair::BC => Qubit::A,
        }
    }
}

/// Density matrix of a small qubit register in the fixed basis convention.
///
/// Validity (Hermiticity, unit trace, positivity) is guaranteed by the
/// constructors used in the pipeline; [`QubitRegisterDensity::validate`]
/// re-checks all three invariants for states built by hand. States produced
/// from truncated field states carry their trace deficit externally (see
/// `measures::EntanglementReport::trace_residual`).
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegisterDensity {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl QubitRegisterDensity {
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self, Error> {
        if n_qubits == 0 {
            return Err(Error::ZeroDim);
        }
        if matrix.dim() != 1 << n_qubits {
            return Err(Error::NotQubitRegister {
                n_qubits,
                dim: matrix.dim(),
            });
        }
        Ok(Self { n_qubits, matrix })
    }

    /// Projector onto a pure register state; the amplitude vector is
    /// normalized first.
    pub fn from_pure(n_qubits: usize, ket: &[C64]) -> Result<Self, Error> {
        if ket.len() != 1 << n_qubits {
            return Err(Error::NotQubitRegister {
                n_qubits,
                dim: ket.len(),
            });
        }
        let norm_sq: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::ZeroKet);
        }
        let scale = norm_sq.sqrt().recip();
        let normalized: Vec<C64> = ket.iter().map(|a| a * scale).collect();
        Self::new(n_qubits, ComplexMatrix::outer(&normalized))
    }

    /// All atoms in the ground state `|g...g>` (the last basis index).
    pub fn all_ground(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        let mut m = ComplexMatrix::zeros(dim);
        m[(dim - 1, dim - 1)] = C64::new(1.0, 0.0);
        Self {
            n_qubits,
            matrix: m,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Checks Hermiticity (1e-12), trace against `expected_trace` (1e-10) and
    /// positivity (min eigenvalue >= -1e-10).
    pub fn validate(&self, expected_trace: f64) -> Result<(), Error> {
        let herm = self.matrix.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::NotHermitian {
                max_asymmetry: herm,
            });
        }
        let tr = self.trace();
        if (tr - expected_trace).abs() > 1e-10 {
            return Err(Error::BadMatrixData {
                dim: self.matrix.dim(),
                len: 0,
            });
        }
        let evals = hermitian_eigenvalues(&self.matrix)?;
        if evals.first().copied().unwrap_or(0.0) < -1e-10 {
            return Err(Error::NoConvergence);
        }
        Ok(())
    }
}

/// Ascending real eigenvalues of a complex Hermitian matrix.
///
/// The input is symmetrized as `(M + M^dag)/2` before solving; asymmetry
/// beyond 1e-10 is an error. Cyclic Jacobi rotations (a diagonal phase
/// transformation making the pivot real, followed by the classic real
/// rotation) run until the off-diagonal Frobenius mass is below 1e-14.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, Error> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::ZeroDim);
    }
    let asym = m.hermiticity_error();
    if asym > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
        });
    }

    // working copy, symmetrized
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }

    let scale = a.frobenius_norm().max(1.0);
    let tol = OFF_DIAGONAL_TOL * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[(i, j)].norm_sqr();
                }
            }
        }
        if off.sqrt() < tol {
            let mut evals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
            evals.sort_by(|x, y| x.partial_cmp(y).expect("real eigenvalues"));
            return Ok(evals);
        }

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }

                // phase step: rotate row/column q so the pivot becomes real
                let phase = apq / r;
                let phase_conj = phase.conj();
                for k in 0..n {
                    a[(k, q)] *= phase_conj;
                }
                for k in 0..n {
                    a[(q, k)] *= phase;
                }
                // the pivot is now r up to rounding; keep it exactly real
                a[(p, q)] = C64::new(r, 0.0);
                a[(q, p)] = C64::new(r, 0.0);

                // classic real Jacobi rotation annihilating the pivot
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }
    Err(Error::NoConvergence)
}

/// Partial transpose of a register state with respect to one qubit.
///
/// The result swaps the bra/ket bit of the chosen subsystem only; it is
/// Hermitian and trace preserving but in general not positive, so it is
/// returned as a bare matrix.
pub fn partial_transpose(
    rho: &QubitRegisterDensity,
    subsystem: Qubit,
) -> Result<ComplexMatrix, Error> {
    partial_transpose_matrix(rho.matrix(), rho.n_qubits(), subsystem.position())
}

/// Partial transpose over the qubit at `position` (0 = most significant) of
/// a `2^n` dimensional matrix.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    n_qubits: usize,
    position: usize,
) -> Result<ComplexMatrix, Error> {
    if m.dim() != 1 << n_qubits {
        return Err(Error::NotQubitRegister {
            n_qubits,
            dim: m.dim(),
        });
    }
    if position >= n_qubits {
        return Err(Error::SubsystemOutOfRange {
            index: position,
            n_qubits,
        });
    }
    let dim = m.dim();
    let mask = 1usize << (n_qubits - 1 - position);
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let ti = (i & !mask) | (j & mask);
            let tj = (j & !mask) | (i & mask);
            out[(ti, tj)] = m[(i, j)];
        }
    }
    Ok(out)
}

/// Traces out one qubit, producing the reduced register on the remaining
/// qubits with their bit ordering unchanged.
pub fn partial_trace(
    rho: &QubitRegisterDensity,
    traced: Qubit,
) -> Result<QubitRegisterDensity, Error> {
    let n = rho.n_qubits();
    let position = traced.position();
    if n < 2 {
        return Err(Error::SubsystemOutOfRange {
            index: position,
            n_qubits: n,
        });
    }
    if position >= n {
        return Err(Error::SubsystemOutOfRange {
            index: position,
            n_qubits: n,
        });
    }
    let shift = n - 1 - position;
    let low_mask = (1usize << shift) - 1;
    let out_dim = 1usize << (n - 1);
    let mut out = ComplexMatrix::zeros(out_dim);
    // insert bit b at `shift` into a reduced index
    let expand = |idx: usize, b: usize| -> usize {
        let high = (idx & !low_mask) << 1;
        high | (b << shift) | (idx & low_mask)
    };
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..2 {
                acc += rho.matrix()[(expand(i, b), expand(j, b))];
            }
            out[(i, j)] = acc;
        }
    }
    QubitRegisterDensity::new(n - 1, out)
}

/// Purity `Tr(rho^2)`; equals 1 within 1e-10 iff the state is pure.
pub fn purity(rho: &QubitRegisterDensity) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (m[(i, j)] * m[(j, i)]).re;
        }
    }
    acc
}

/// Fidelity `<psi|rho|psi>` against a pure target state (the target is
/// normalized first).
pub fn pure_fidelity(rho: &QubitRegisterDensity, ket: &[C64]) -> Result<f64, Error> {
    let m = rho.matrix();
    if ket.len() != m.dim() {
        return Err(Error::NotQubitRegister {
            n_qubits: rho.n_qubits(),
            dim: ket.len(),
        });
    }
    let norm_sq: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq <= 0.0 {
        return Err(Error::ZeroKet);
    }
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            acc += ket[i].conj() * m[(i, j)] * ket[j];
        }
    }
    Ok(acc.re / norm_sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigenvalues_identity() {
        let evals = hermitian_eigenvalues(&ComplexMatrix::identity(8)).unwrap();
        for v in evals {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvalues_diagonal() {
        let mut m = ComplexMatrix::zeros(4);
        for (i, v) in [0.5, 0.5, 0.5, -0.5].iter().enumerate() {
            m[(i, i)] = c(*v, 0.0);
        }
        let evals = hermitian_eigenvalues(&m).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in evals.iter().zip(expect) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvalues_complex_offdiagonal() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let m = ComplexMatrix::from_entries(
            2,
            alloc::vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
        )
        .unwrap();
        let evals = hermitian_eigenvalues(&m).unwrap();
        assert!((evals[0] - 0.0).abs() < 1e-14);
        assert!((evals[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_reject_asymmetry() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigenvalues_zero_dim_and_bad_data() {
        assert_eq!(
            hermitian_eigenvalues(&ComplexMatrix::zeros(0)),
            Err(Error::ZeroDim)
        );
        assert!(ComplexMatrix::from_entries(2, alloc::vec![c(1.0, 0.0); 3]).is_err());
    }

    fn bell_pair() -> QubitRegisterDensity {
        // (|ee> + |gg>)/sqrt(2)
        let ket = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        QubitRegisterDensity::from_pure(2, &ket).unwrap()
    }

    #[test]
    fn bell_pair_partial_transpose_spectrum() {
        let rho = bell_pair();
        let pt = partial_transpose(&rho, Qubit::A).unwrap();
        let evals = hermitian_eigenvalues(&pt).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in evals.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn product_state_partial_transpose_stays_positive() {
        // sigma_A (x) sigma_BC with sigma_A pure and a mixed BC part
        let ket_a = [c(0.6, 0.0), c(0.0, 0.8)];
        let mut m = ComplexMatrix::zeros(8);
        let sig_a = ComplexMatrix::outer(&ket_a);
        // BC: 0.5 |eg><eg| + 0.5 |ge><ge| with a small coherence
        let mut sig_bc = ComplexMatrix::zeros(4);
        sig_bc[(1, 1)] = c(0.5, 0.0);
        sig_bc[(2, 2)] = c(0.5, 0.0);
        sig_bc[(1, 2)] = c(0.2, 0.1);
        sig_bc[(2, 1)] = c(0.2, -0.1);
        for ia in 0..2 {
            for ja in 0..2 {
                for ib in 0..4 {
                    for jb in 0..4 {
                        m[(ia * 4 + ib, ja * 4 + jb)] = sig_a[(ia, ja)] * sig_bc[(ib, jb)];
                    }
                }
            }
        }
        let rho = QubitRegisterDensity::new(3, m).unwrap();
        let pt = partial_transpose(&rho, Qubit::A).unwrap();
        let evals = hermitian_eigenvalues(&pt).unwrap();
        assert!(evals[0] > -1e-12);
        assert!((pt.trace().re - 1.0).abs() < 1e-12);
    }

    /// Brute-force oracle for the GHZ-like register: build, transpose each
    /// subsystem, count eigenvalues at -1/2.
    #[test]
    fn ghz_register_partial_transpose_single_negative_eigenvalue() {
        for sign in [1.0, -1.0] {
            let mut ket = [c(0.0, 0.0); 8];
            ket[7] = c(1.0, 0.0); // |ggg>
            ket[0] = c(0.0, sign); // +- i |eee>
            let rho = QubitRegisterDensity::from_pure(3, &ket).unwrap();
            for q in Qubit::ALL {
                let pt = partial_transpose(&rho, q).unwrap();
                let evals = hermitian_eigenvalues(&pt).unwrap();
                let negs: Vec<f64> = evals.iter().copied().filter(|v| *v < -1e-12).collect();
                assert_eq!(negs.len(), 1);
                assert!((negs[0] + 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_ground_state() {
        let rho = QubitRegisterDensity::all_ground(3);
        let red = partial_trace(&rho, Qubit::C).unwrap();
        assert_eq!(red.n_qubits(), 2);
        assert!((red.matrix()[(3, 3)].re - 1.0).abs() < 1e-15);
        assert!((red.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_ghz_marginal_is_diagonal_mixture() {
        let mut ket = [c(0.0, 0.0); 8];
        ket[7] = c(1.0, 0.0);
        ket[0] = c(0.0, 1.0);
        let rho = QubitRegisterDensity::from_pure(3, &ket).unwrap();
        let red = partial_trace(&rho, Qubit::A).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j && (i == 0 || i == 3) {
                    0.5
                } else {
                    0.0
                };
                assert!((red.matrix()[(i, j)] - c(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    /// Brute-force 4x4 partial-transpose spectrum of the reduced pair left
    /// after tracing one qubit of the symmetric single-excitation state.
    #[test]
    fn partial_trace_w_like_reduced_pair_negativity() {
        // (|gge> + |geg> + |egg>)/sqrt(3); indices 6, 5, 3
        let mut ket = [c(0.0, 0.0); 8];
        ket[6] = c(1.0, 0.0);
        ket[5] = c(1.0, 0.0);
        ket[3] = c(1.0, 0.0);
        let rho = QubitRegisterDensity::from_pure(3, &ket).unwrap();
        let red = partial_trace(&rho, Qubit::A).unwrap();
        let pt = partial_transpose(&red, Qubit::B).unwrap();
        let evals = hermitian_eigenvalues(&pt).unwrap();
        let neg_sum: f64 = evals.iter().copied().filter(|v| *v < -1e-12).sum();
        // lowest eigenvalue is (1 - sqrt(5))/6
        let expect = (1.0 - 5.0f64.sqrt()) / 6.0;
        assert!((evals[0] - expect).abs() < 1e-12);
        assert!((-2.0 * neg_sum - (5.0f64.sqrt() - 1.0) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_single_qubit() {
        let rho = QubitRegisterDensity::all_ground(1);
        assert!(partial_trace(&rho, Qubit::A).is_err());
    }

    #[test]
    fn subsystem_out_of_range() {
        let rho = QubitRegisterDensity::all_ground(2);
        assert!(matches!(
            partial_transpose(&rho, Qubit::C),
            Err(Error::SubsystemOutOfRange { .. })
        ));
    }

    #[test]
    fn purity_pure_and_maximally_mixed() {
        let rho = QubitRegisterDensity::all_ground(3);
        assert!((purity(&rho) - 1.0).abs() < 1e-14);

        let m = ComplexMatrix::identity(8).scale(c(0.125, 0.0));
        let mixed = QubitRegisterDensity::new(3, m).unwrap();
        assert!((purity(&mixed) - 0.125).abs() < 1e-14);
    }

    #[test]
    fn fidelity_of_projector_with_itself() {
        let mut ket = [c(0.0, 0.0); 8];
        ket[7] = c(1.0, 0.0);
        ket[0] = c(0.0, 1.0);
        let rho = QubitRegisterDensity::from_pure(3, &ket).unwrap();
        assert!((pure_fidelity(&rho, &ket).unwrap() - 1.0).abs() < 1e-14);
        let mut orth = [c(0.0, 0.0); 8];
        orth[7] = c(1.0, 0.0);
        orth[0] = c(0.0, -1.0);
        assert!(pure_fidelity(&rho, &orth).unwrap().abs() < 1e-14);
    }
}
