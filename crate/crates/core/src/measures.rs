//! Closed-form Svetlichny value, genuine tripartite concurrence, maximal
//! Bell signal and two-qubit concurrence.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};

use crate::error::{Error, Result};
use crate::quantum::{DensityOperator, Mode, C64};

/// Tolerance for treating an entry outside the X pattern as zero.
pub const X_PATTERN_TOL: f64 = 1e-12;
const PARAM_TOL: f64 = 1e-12;

/// Populations and coherences of a three-qubit X matrix.
///
/// `n[i]` sits at basis index `i`, `m[i]` at `7 - i`, and `c[i]` couples
/// the two.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateParams3 {
    pub n: [f64; 4],
    pub m: [f64; 4],
    pub c: [C64; 4],
}

impl XStateParams3 {
    pub fn new(n: [f64; 4], m: [f64; 4], c: [C64; 4]) -> Result<Self> {
        let x = XStateParams3 { n, m, c };
        x.check()?;
        Ok(x)
    }

    pub fn real(n: [f64; 4], m: [f64; 4], c: [f64; 4]) -> Result<Self> {
        Self::new(n, m, c.map(|v| C64::new(v, 0.0)))
    }

    fn check(&self) -> Result<()> {
        let total: f64 = self.n.iter().chain(&self.m).sum();
        if !total.is_finite() || (total - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidXState(format!("populations sum to {total}")));
        }
        for i in 0..4 {
            if self.n[i] < -PARAM_TOL || self.m[i] < -PARAM_TOL {
                return Err(Error::InvalidXState(format!("negative population at {i}")));
            }
            let bound = (self.n[i].max(0.0) * self.m[i].max(0.0)).sqrt() + PARAM_TOL;
            if self.c[i].norm() > bound {
                return Err(Error::InvalidXState(format!(
                    "|c{}| = {} exceeds sqrt(n m) = {}",
                    i + 1,
                    self.c[i].norm(),
                    bound - PARAM_TOL
                )));
            }
        }
        Ok(())
    }

    /// Reads the X parameters of a three-qubit matrix, failing when any entry
    /// off the X pattern exceeds 1e-12.
    pub fn from_matrix(mat: &DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != 8 || mat.ncols() != 8 {
            return Err(Error::WrongQubitCount {
                expected: 3,
                found: mat.nrows().trailing_zeros() as usize,
            });
        }
        check_x_pattern(mat)?;
        let mut n = [0.0; 4];
        let mut m = [0.0; 4];
        let mut c = [C64::new(0.0, 0.0); 4];
        for i in 0..4 {
            n[i] = mat[(i, i)].re;
            m[i] = mat[(7 - i, 7 - i)].re;
            c[i] = mat[(i, 7 - i)];
        }
        Self::new(n, m, c)
    }

    pub fn from_density(rho: &DensityOperator) -> Result<Self> {
        Self::from_matrix(rho.matrix())
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        let mut mat = DMatrix::<C64>::zeros(8, 8);
        for i in 0..4 {
            mat[(i, i)] = C64::new(self.n[i], 0.0);
            mat[(7 - i, 7 - i)] = C64::new(self.m[i], 0.0);
            mat[(i, 7 - i)] = self.c[i];
            mat[(7 - i, i)] = self.c[i].conj();
        }
        mat
    }

    pub fn to_density(&self, modes: Vec<Mode>) -> Result<DensityOperator> {
        DensityOperator::new(modes, self.to_matrix())
    }

    /// N = n1 − n2 − n3 + n4 − m4 + m3 + m2 − m1
    pub fn parity_balance(&self) -> f64 {
        let [n1, n2, n3, n4] = self.n;
        let [m1, m2, m3, m4] = self.m;
        n1 - n2 - n3 + n4 - m4 + m3 + m2 - m1
    }

    /// Index of the largest |cᵢ|; ties go to the smallest index.
    pub fn dominant_coherence(&self) -> usize {
        (1..4).fold(0, |best, i| {
            if self.c[i].norm() > self.c[best].norm() {
                i
            } else {
                best
            }
        })
    }

    /// νᵢ = Σ_{j≠i} √(nⱼ mⱼ)
    pub fn nu(&self, i: usize) -> f64 {
        (0..4)
            .filter(|&j| j != i)
            .map(|j| (self.n[j].max(0.0) * self.m[j].max(0.0)).sqrt())
            .sum()
    }
}

fn check_x_pattern(mat: &DMatrix<C64>) -> Result<()> {
    let dim = mat.nrows();
    for row in 0..dim {
        for col in 0..dim {
            if row == col || row + col == dim - 1 {
                continue;
            }
            let magnitude = mat[(row, col)].norm();
            if magnitude > X_PATTERN_TOL {
                return Err(Error::NotXState { row, col, magnitude });
            }
        }
    }
    for i in 0..dim {
        if mat[(i, i)].im.abs() > X_PATTERN_TOL {
            return Err(Error::InvalidXState(format!("complex diagonal entry at {i}")));
        }
    }
    Ok(())
}

/// S = max{8√2 maxᵢ|cᵢ|, 4|N|}.
pub fn svetlichny_xstate(x: &XStateParams3) -> f64 {
    let coherence = 8.0 * SQRT_2 * x.c[x.dominant_coherence()].norm();
    coherence.max(4.0 * x.parity_balance().abs())
}

/// C = 2 maxᵢ max{0, |cᵢ| − νᵢ}.
pub fn gte_xstate(x: &XStateParams3) -> f64 {
    let best = (0..4)
        .map(|i| (x.c[i].norm() - x.nu(i)).max(0.0))
        .fold(0.0, f64::max);
    2.0 * best
}

/// Real two-qubit X matrix in the basis |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateParams2 {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: f64,
    pub rho23: f64,
}

impl XStateParams2 {
    pub fn new(diag: [f64; 4], rho14: f64, rho23: f64) -> Result<Self> {
        let [rho11, rho22, rho33, rho44] = diag;
        let total = rho11 + rho22 + rho33 + rho44;
        if !total.is_finite() || (total - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidXState(format!("trace is {total}")));
        }
        if diag.iter().any(|&d| d < -PARAM_TOL) {
            return Err(Error::InvalidXState("negative population".into()));
        }
        let root = |a: f64, b: f64| (a.max(0.0) * b.max(0.0)).sqrt() + PARAM_TOL;
        if rho14.abs() > root(rho11, rho44) {
            return Err(Error::InvalidXState(format!("|rho14| = {} too large", rho14.abs())));
        }
        if rho23.abs() > root(rho22, rho33) {
            return Err(Error::InvalidXState(format!("|rho23| = {} too large", rho23.abs())));
        }
        Ok(XStateParams2 {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14,
            rho23,
        })
    }

    pub fn diagonal(diag: [f64; 4]) -> Result<Self> {
        Self::new(diag, 0.0, 0.0)
    }

    pub fn from_matrix(mat: &DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != 4 || mat.ncols() != 4 {
            return Err(Error::WrongQubitCount {
                expected: 2,
                found: mat.nrows().trailing_zeros() as usize,
            });
        }
        check_x_pattern(mat)?;
        for (r, c) in [(0, 3), (1, 2)] {
            if mat[(r, c)].im.abs() > X_PATTERN_TOL {
                return Err(Error::InvalidXState(format!("complex coherence at ({r}, {c})")));
            }
        }
        Self::new(
            [mat[(0, 0)].re, mat[(1, 1)].re, mat[(2, 2)].re, mat[(3, 3)].re],
            mat[(0, 3)].re,
            mat[(1, 2)].re,
        )
    }

    pub fn from_density(rho: &DensityOperator) -> Result<Self> {
        Self::from_matrix(rho.matrix())
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        let r = |v: f64| C64::new(v, 0.0);
        let mut mat = DMatrix::<C64>::zeros(4, 4);
        mat[(0, 0)] = r(self.rho11);
        mat[(1, 1)] = r(self.rho22);
        mat[(2, 2)] = r(self.rho33);
        mat[(3, 3)] = r(self.rho44);
        mat[(0, 3)] = r(self.rho14);
        mat[(3, 0)] = r(self.rho14);
        mat[(1, 2)] = r(self.rho23);
        mat[(2, 1)] = r(self.rho23);
        mat
    }

    /// Eigenvalues (Z₁, Z₂, Z₃) of TᵀT for this X state.
    pub fn correlation_eigenvalues(&self) -> [f64; 3] {
        let (a, b) = (self.rho14.abs(), self.rho23.abs());
        [
            4.0 * (a + b).powi(2),
            4.0 * (a - b).powi(2),
            (self.rho11 - self.rho22 - self.rho33 + self.rho44).powi(2),
        ]
    }
}

/// Maximal Bell signal of a two-qubit X state: max{2√(Z₁+Z₂), 2√(Z₁+Z₃)}.
pub fn chsh_xstate(x: &XStateParams2) -> f64 {
    let [z1, z2, z3] = x.correlation_eigenvalues();
    let b1 = 2.0 * (z1 + z2).sqrt();
    let b2 = 2.0 * (z1 + z3).sqrt();
    b1.max(b2)
}

/// C = 2 max{0, |ρ₁₄| − √(ρ₂₂ρ₃₃), |ρ₂₃| − √(ρ₁₁ρ₄₄)}.
pub fn concurrence_xstate(x: &XStateParams2) -> f64 {
    let root = |a: f64, b: f64| (a.max(0.0) * b.max(0.0)).sqrt();
    let first = x.rho14.abs() - root(x.rho22, x.rho33);
    let second = x.rho23.abs() - root(x.rho11, x.rho44);
    2.0 * first.max(second).max(0.0)
}

/// Maximal Bell signal 2√(Z₁+Z₂) from the two largest eigenvalues of TᵀT.
pub fn chsh_max(rho: &DensityOperator) -> Result<f64> {
    let t = Matrix3::from_fn({
        let t = rho.correlation_matrix()?;
        move |i, j| t[i][j]
    });
    let u = t.transpose() * t;
    let mut z: Vec<f64> = SymmetricEigen::new(u).eigenvalues.iter().copied().collect();
    z.sort_by(|a, b| b.total_cmp(a));
    Ok(2.0 * (z[0] + z[1]).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{modes, StateVector};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ghz_params() -> XStateParams3 {
        XStateParams3::real([0.5, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0])
            .unwrap()
    }

    fn bell() -> DensityOperator {
        StateVector::from_real(modes(["A", "B"]), &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])
            .unwrap()
            .density()
    }

    #[test]
    fn svetlichny_closed_form_examples() {
        assert_abs_diff_eq!(svetlichny_xstate(&ghz_params()), 4.0 * SQRT_2, epsilon = 1e-15);
        let x = XStateParams3::real([0.0; 4], [1.0, 0.0, 0.0, 0.0], [0.0; 4]).unwrap();
        assert_abs_diff_eq!(svetlichny_xstate(&x), 4.0, epsilon = 1e-15);
    }

    #[test]
    fn gte_closed_form_examples() {
        assert_abs_diff_eq!(gte_xstate(&ghz_params()), 1.0, epsilon = 1e-15);
        let x = XStateParams3::real([0.1, 0.2, 0.05, 0.15], [0.1, 0.1, 0.2, 0.1], [0.0; 4]).unwrap();
        assert_eq!(gte_xstate(&x), 0.0);
    }

    #[test]
    fn x_params_validation() {
        assert!(XStateParams3::real([0.5, 0.0, 0.0, 0.0], [0.4, 0.0, 0.0, 0.0], [0.0; 4]).is_err());
        assert!(XStateParams3::real([0.5, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0], [0.6, 0.0, 0.0, 0.0]).is_err());
        assert!(XStateParams2::new([0.5, 0.0, 0.0, 0.5], 0.6, 0.0).is_err());
        assert!(XStateParams2::new([0.5, 0.0, 0.0, 0.4], 0.0, 0.0).is_err());
    }

    #[test]
    fn non_x_matrix_is_rejected() {
        let s = StateVector::from_real(modes(["A", "B"]), &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0])
            .unwrap();
        let err = XStateParams2::from_density(&s.density()).unwrap_err();
        assert!(matches!(err, Error::NotXState { row: 0, col: 1, .. }));
    }

    #[test]
    fn x_matrix_round_trip() {
        let x = ghz_params();
        assert_eq!(XStateParams3::from_matrix(&x.to_matrix()).unwrap(), x);
    }

    #[test]
    fn bell_signal_examples() {
        let phi = bell();
        assert_abs_diff_eq!(chsh_max(&phi).unwrap(), 2.0 * SQRT_2, epsilon = 1e-12);
        let x = XStateParams2::from_density(&phi).unwrap();
        assert_abs_diff_eq!(chsh_xstate(&x), 2.0 * SQRT_2, epsilon = 1e-15);
        let zero = StateVector::basis(modes(["A", "B"]), "00").unwrap().density();
        assert_abs_diff_eq!(chsh_max(&zero).unwrap(), 2.0, epsilon = 1e-12);
        let d = XStateParams2::diagonal([0.3, 0.0, 0.0, 0.7]).unwrap();
        assert_abs_diff_eq!(chsh_xstate(&d), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn chsh_max_requires_two_qubits() {
        let rho = StateVector::basis(modes(["A", "B", "C"]), "000").unwrap().density();
        assert!(matches!(chsh_max(&rho), Err(Error::WrongQubitCount { .. })));
    }

    #[test]
    fn concurrence_examples() {
        let x = XStateParams2::from_density(&bell()).unwrap();
        assert_abs_diff_eq!(concurrence_xstate(&x), 1.0, epsilon = 1e-15);
        let d = XStateParams2::diagonal([0.25, 0.25, 0.25, 0.25]).unwrap();
        assert_eq!(concurrence_xstate(&d), 0.0);
    }

    #[test]
    fn dominant_coherence_tie_breaks_low() {
        let x = XStateParams3::real([0.25, 0.25, 0.0, 0.0], [0.25, 0.25, 0.0, 0.0], [0.1, 0.1, 0.0, 0.0])
            .unwrap();
        assert_eq!(x.dominant_coherence(), 0);
    }
}
