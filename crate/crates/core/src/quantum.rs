//! Small dense complex linear algebra for qubit registers.
//!
//! Basis states are indexed by lexicographic bitstrings with the first
//! listed mode as the most significant bit.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest register handled by this module.
pub const MAX_QUBITS: usize = 5;

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const EIGENVALUE_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-9;

/// Label of a single qubit mode, e.g. `A` or `B_II`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode(String);

impl Mode {
    pub fn new(label: impl Into<String>) -> Self {
        Mode(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Mode {
    fn from(s: &str) -> Self {
        Mode(s.to_owned())
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn modes<const N: usize>(labels: [&str; N]) -> Vec<Mode> {
    labels.iter().map(|s| Mode::from(*s)).collect()
}

fn check_modes(modes: &[Mode]) -> Result<()> {
    if modes.is_empty() {
        return Err(Error::EmptySelection);
    }
    if modes.len() > MAX_QUBITS {
        return Err(Error::DimensionMismatch(format!(
            "{} modes exceeds the {MAX_QUBITS}-qubit limit",
            modes.len()
        )));
    }
    for (i, m) in modes.iter().enumerate() {
        if modes[..i].contains(m) {
            return Err(Error::DuplicateMode(m.to_string()));
        }
    }
    Ok(())
}

/// Bit mask of qubit `q` (0 = first mode) in an `n`-qubit basis index.
#[inline]
fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Normalized pure state over an ordered list of modes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    modes: Vec<Mode>,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Builds a state, renormalizing to exactly unit norm when the input norm
    /// is already within 1e-9 of one.
    pub fn new(modes: Vec<Mode>, amplitudes: Vec<C64>) -> Result<Self> {
        check_modes(&modes)?;
        let dim = 1usize << modes.len();
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {} modes (expected {dim})",
                amplitudes.len(),
                modes.len()
            )));
        }
        let amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector {
            modes,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    pub fn from_real(modes: Vec<Mode>, amplitudes: &[f64]) -> Result<Self> {
        Self::new(modes, amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state given as a bitstring over the modes.
    pub fn basis(modes: Vec<Mode>, bits: &str) -> Result<Self> {
        if bits.len() != modes.len() {
            return Err(Error::DimensionMismatch(format!(
                "bitstring `{bits}` for {} modes",
                modes.len()
            )));
        }
        let index = parse_bitstring(bits)?;
        let mut amps = vec![C64::new(0.0, 0.0); 1 << modes.len()];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(modes, amps)
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn num_qubits(&self) -> usize {
        self.modes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &str) -> Result<C64> {
        if bits.len() != self.modes.len() {
            return Err(Error::DimensionMismatch(format!("bitstring `{bits}`")));
        }
        Ok(self.amplitudes[parse_bitstring(bits)?])
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Tensor product; modes of `other` are appended after those of `self`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let mut modes = self.modes.clone();
        modes.extend(other.modes.iter().cloned());
        check_modes(&modes)?;
        Ok(StateVector {
            modes,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        })
    }

    /// The projector |ψ⟩⟨ψ|.
    pub fn density(&self) -> DensityOperator {
        DensityOperator {
            modes: self.modes.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

fn parse_bitstring(bits: &str) -> Result<usize> {
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidParameter(format!("bad bitstring `{bits}`"))),
    })
}

/// Density matrix over an ordered list of modes.
///
/// Construction only checks shapes; physical validity is reported by
/// [`DensityOperator::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    modes: Vec<Mode>,
    matrix: DMatrix<C64>,
}

/// Validity report for a [`DensityOperator`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    /// max |ρ − ρ†| entrywise
    pub hermiticity_defect: f64,
    /// |Tr ρ − 1|
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub hermitian: bool,
    pub unit_trace: bool,
    pub positive: bool,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.unit_trace && self.positive
    }
}

impl DensityOperator {
    pub fn new(modes: Vec<Mode>, matrix: DMatrix<C64>) -> Result<Self> {
        check_modes(&modes)?;
        let dim = 1usize << modes.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} modes",
                matrix.nrows(),
                matrix.ncols(),
                modes.len()
            )));
        }
        Ok(DensityOperator { modes, matrix })
    }

    pub fn from_real(modes: Vec<Mode>, matrix: DMatrix<f64>) -> Result<Self> {
        Self::new(modes, matrix.map(|x| C64::new(x, 0.0)))
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn num_qubits(&self) -> usize {
        self.modes.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    fn position(&self, mode: &Mode) -> Result<usize> {
        self.modes
            .iter()
            .position(|m| m == mode)
            .ok_or_else(|| Error::UnknownMode(mode.to_string()))
    }

    fn require_qubits(&self, expected: usize) -> Result<()> {
        if self.num_qubits() != expected {
            return Err(Error::WrongQubitCount {
                expected,
                found: self.num_qubits(),
            });
        }
        Ok(())
    }

    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        let mut modes = self.modes.clone();
        modes.extend(other.modes.iter().cloned());
        check_modes(&modes)?;
        Ok(DensityOperator {
            modes,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }

    /// Reduced operator on `keep`, which is returned in the original
    /// relative mode order regardless of the order given.
    pub fn partial_trace(&self, keep: &[Mode]) -> Result<DensityOperator> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut kept = Vec::with_capacity(keep.len());
        for m in keep {
            let q = self.position(m)?;
            if kept.contains(&q) {
                return Err(Error::DuplicateMode(m.to_string()));
            }
            kept.push(q);
        }
        kept.sort_unstable();
        let n = self.num_qubits();
        let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
        let k = kept.len();

        // scatter a reduced index (or a traced-out index) into the full register
        let scatter = |idx: usize, qubits: &[usize]| -> usize {
            let m = qubits.len();
            qubits
                .iter()
                .enumerate()
                .filter(|&(j, _)| idx & bit(m, j) != 0)
                .fold(0, |acc, (_, &q)| acc | bit(n, q))
        };

        let dim = 1 << k;
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for t in 0..(1usize << traced.len()) {
            let toff = scatter(t, &traced);
            for i in 0..dim {
                let fi = scatter(i, &kept) | toff;
                for j in 0..dim {
                    let fj = scatter(j, &kept) | toff;
                    out[(i, j)] += self.matrix[(fi, fj)];
                }
            }
        }
        Ok(DensityOperator {
            modes: kept.iter().map(|&q| self.modes[q].clone()).collect(),
            matrix: out,
        })
    }

    /// Same operator with the tensor factors listed in `order`.
    pub fn reorder_modes(&self, order: &[Mode]) -> Result<DensityOperator> {
        if order.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "ordering lists {} of {} modes",
                order.len(),
                self.num_qubits()
            )));
        }
        let n = self.num_qubits();
        let mut src = Vec::with_capacity(n);
        for m in order {
            let q = self.position(m)?;
            if src.contains(&q) {
                return Err(Error::DuplicateMode(m.to_string()));
            }
            src.push(q);
        }
        let map = |idx: usize| -> usize {
            src.iter()
                .enumerate()
                .filter(|&(_, &q)| idx & bit(n, q) != 0)
                .fold(0, |acc, (j, _)| acc | bit(n, j))
        };
        let dim = self.dim();
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                out[(map(i), map(j))] = self.matrix[(i, j)];
            }
        }
        Ok(DensityOperator {
            modes: order.to_vec(),
            matrix: out,
        })
    }

    /// Conjugation by σ_x on one mode.
    pub fn flip_mode(&self, mode: &Mode) -> Result<DensityOperator> {
        let mask = bit(self.num_qubits(), self.position(mode)?);
        let dim = self.dim();
        let matrix = DMatrix::from_fn(dim, dim, |i, j| self.matrix[(i ^ mask, j ^ mask)]);
        Ok(DensityOperator {
            modes: self.modes.clone(),
            matrix,
        })
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()).scale(0.5);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn validate(&self) -> Diagnostics {
        let hermiticity_defect = (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let trace_defect = (self.trace() - C64::new(1.0, 0.0)).norm();
        let min_eigenvalue = self.eigenvalues().first().copied().unwrap_or(f64::NAN);
        Diagnostics {
            hermiticity_defect,
            trace_defect,
            min_eigenvalue,
            hermitian: hermiticity_defect <= HERMITICITY_TOL,
            unit_trace: trace_defect <= TRACE_TOL,
            positive: min_eigenvalue >= -EIGENVALUE_TOL,
        }
    }

    /// Pauli expectation values Tr[ρ σ_i⊗σ_j(⊗σ_k)] for two or three qubits.
    pub fn correlation_tensor(&self) -> Result<PauliCorrelationTensor> {
        match self.num_qubits() {
            2 => Ok(PauliCorrelationTensor::Order2(self.correlation_matrix()?)),
            3 => Ok(PauliCorrelationTensor::Order3(self.correlation_tensor3()?)),
            found => Err(Error::WrongQubitCount { expected: 3, found }),
        }
    }

    pub fn correlation_matrix(&self) -> Result<[[f64; 3]; 3]> {
        self.require_qubits(2)?;
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.pauli_expectation(&[i + 1, j + 1]);
            }
        }
        Ok(t)
    }

    pub fn correlation_tensor3(&self) -> Result<[[[f64; 3]; 3]; 3]> {
        self.require_qubits(3)?;
        let mut t = [[[0.0; 3]; 3]; 3];
        for (i, plane) in t.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (k, v) in row.iter_mut().enumerate() {
                    *v = self.pauli_expectation(&[i + 1, j + 1, k + 1]);
                }
            }
        }
        Ok(t)
    }

    /// Re Tr[ρ σ_{p_1}⊗…⊗σ_{p_n}] with 0 = identity, 1..3 = x, y, z.
    pub fn pauli_expectation(&self, paulis: &[usize]) -> f64 {
        let n = self.num_qubits();
        debug_assert_eq!(paulis.len(), n);
        let dim = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        // Pauli strings are monomial: each row r has one nonzero column c.
        for r in 0..dim {
            let mut c = r;
            let mut phase = C64::new(1.0, 0.0);
            for (q, &p) in paulis.iter().enumerate() {
                let b = bit(n, q);
                let set = r & b != 0;
                match p {
                    0 => {}
                    1 => c ^= b,
                    2 => {
                        c ^= b;
                        // σ_y|0⟩ = i|1⟩, σ_y|1⟩ = −i|0⟩; entry (c, r) of σ_y
                        phase *= if set { C64::new(0.0, -1.0) } else { C64::new(0.0, 1.0) };
                    }
                    3 => {
                        if set {
                            phase = -phase;
                        }
                    }
                    _ => panic!("Pauli index out of range: {p}"),
                }
            }
            // Tr[ρ P] = Σ_r Σ_c ρ[r, c] P[c, r]
            acc += self.matrix[(r, c)] * phase;
        }
        acc.re
    }

    /// Re-express the matrix in another ordering of the basis.
    pub fn permute_basis(&self, ordering: &BasisPermutation) -> Result<DMatrix<C64>> {
        ordering.apply(&self.matrix)
    }
}

/// Pauli correlation tensor of a two- or three-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PauliCorrelationTensor {
    Order2([[f64; 3]; 3]),
    Order3([[[f64; 3]; 3]; 3]),
}

impl PauliCorrelationTensor {
    pub fn order(&self) -> usize {
        match self {
            PauliCorrelationTensor::Order2(_) => 2,
            PauliCorrelationTensor::Order3(_) => 3,
        }
    }

    pub fn entries(&self) -> Vec<f64> {
        match self {
            PauliCorrelationTensor::Order2(t) => t.iter().flatten().copied().collect(),
            PauliCorrelationTensor::Order3(t) => t.iter().flatten().flatten().copied().collect(),
        }
    }
}

/// A reordering of basis indices: position `k` of the new basis holds the
/// standard basis state `order[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPermutation {
    order: Vec<usize>,
}

impl BasisPermutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &i in &order {
            if i >= order.len() || seen[i] {
                return Err(Error::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(BasisPermutation { order })
    }

    pub fn identity(dim: usize) -> Self {
        BasisPermutation {
            order: (0..dim).collect(),
        }
    }

    /// Ordering given as bitstrings, e.g. `["000", "100", ...]`.
    pub fn from_bitstrings(bits: &[&str]) -> Result<Self> {
        let order = bits
            .iter()
            .map(|b| parse_bitstring(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.order.len()];
        for (k, &i) in self.order.iter().enumerate() {
            inv[i] = k;
        }
        BasisPermutation { order: inv }
    }

    /// P M Pᵀ for the permutation matrix P of this ordering.
    pub fn apply<T: nalgebra::Scalar + Copy>(&self, m: &DMatrix<T>) -> Result<DMatrix<T>> {
        let dim = self.order.len();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {dim} applied to {}x{} matrix",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(DMatrix::from_fn(dim, dim, |k, l| m[(self.order[k], self.order[l])]))
    }
}
