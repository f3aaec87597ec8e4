//! Brute-force maximization of the Svetlichny expectation over projective
//! spin measurements.
//!
//! The expectation tr(Sρ) is multilinear in the six unit vectors
//! a, a′, b, b′, c, c′, so for fixed others the optimal choice of one vector
//! is its normalized coefficient vector. Each restart runs this block ascent
//! from a uniformly random start until the gain per sweep drops below
//! [`ASCENT_TOL`]. The result is a lower bound on the true maximum.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::DensityOperator;

pub const DEFAULT_RESTARTS: usize = 64;
pub const ASCENT_TOL: f64 = 1e-15;
pub const MAX_SWEEPS: usize = 20_000;

pub type Tensor3 = [[[f64; 3]; 3]; 3];
pub type Vec3 = [f64; 3];

/// A direction on the unit sphere as polar and azimuthal angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn from_vector(v: Vec3) -> Self {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let theta = (v[2] / norm).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]).rem_euclid(2.0 * PI);
        Direction { theta, phi }
    }

    pub fn to_vector(self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// The six measurement directions a, a′, b, b′, c, c′.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementSettings {
    pub a: Direction,
    pub a_prime: Direction,
    pub b: Direction,
    pub b_prime: Direction,
    pub c: Direction,
    pub c_prime: Direction,
}

impl MeasurementSettings {
    pub fn from_vectors(v: &[Vec3; 6]) -> Self {
        MeasurementSettings {
            a: Direction::from_vector(v[0]),
            a_prime: Direction::from_vector(v[1]),
            b: Direction::from_vector(v[2]),
            b_prime: Direction::from_vector(v[3]),
            c: Direction::from_vector(v[4]),
            c_prime: Direction::from_vector(v[5]),
        }
    }

    pub fn vectors(&self) -> [Vec3; 6] {
        [
            self.a.to_vector(),
            self.a_prime.to_vector(),
            self.b.to_vector(),
            self.b_prime.to_vector(),
            self.c.to_vector(),
            self.c_prime.to_vector(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvetlichnyResult {
    pub value: f64,
    pub settings: MeasurementSettings,
    pub restarts_used: usize,
    pub converged: bool,
}

fn contract(t: &Tensor3, x: Option<&Vec3>, y: Option<&Vec3>, z: Option<&Vec3>) -> Vec3 {
    // Contract the two given slots, leaving the `None` slot free.
    let w = |v: Option<&Vec3>, i: usize| v.map_or(1.0, |v| v[i]);
    let mut out = [0.0; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let free = if x.is_none() {
                    i
                } else if y.is_none() {
                    j
                } else {
                    k
                };
                out[free] += t[i][j][k] * w(x, i) * w(y, j) * w(z, k);
            }
        }
    }
    out
}

fn dot(x: &Vec3, y: &Vec3) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn add(x: &Vec3, y: &Vec3, s: f64) -> Vec3 {
    [x[0] + s * y[0], x[1] + s * y[1], x[2] + s * y[2]]
}

/// tr(Sρ) for S = (A+A′)(BC′+B′C) + (A−A′)(BC−B′C′), from the full
/// three-body correlation tensor of ρ.
pub fn svetlichny_objective(t: &Tensor3, v: &[Vec3; 6]) -> f64 {
    let [a, ap, b, bp, c, cp] = v;
    let u = add(a, ap, 1.0);
    let w = add(a, ap, -1.0);
    let bc_p = contract(t, None, Some(b), Some(cp));
    let bp_c = contract(t, None, Some(bp), Some(c));
    let b_c = contract(t, None, Some(b), Some(c));
    let bp_cp = contract(t, None, Some(bp), Some(cp));
    dot(&u, &add(&bc_p, &bp_c, 1.0)) + dot(&w, &add(&b_c, &bp_cp, -1.0))
}

fn normalize_or_keep(g: Vec3, current: Vec3) -> Vec3 {
    let norm = dot(&g, &g).sqrt();
    if norm > 1e-300 {
        [g[0] / norm, g[1] / norm, g[2] / norm]
    } else {
        current
    }
}

/// Block-coordinate ascent from `start`; returns the local optimum, its
/// value, and whether it stopped on the tolerance.
pub fn ascend(t: &Tensor3, start: [Vec3; 6]) -> ([Vec3; 6], f64, bool) {
    let mut v = start;
    let mut value = svetlichny_objective(t, &v);
    for _ in 0..MAX_SWEEPS {
        let [a, ap, b, bp, c, cp] = v;
        // a and a′
        let x = add(&contract(t, None, Some(&b), Some(&cp)), &contract(t, None, Some(&bp), Some(&c)), 1.0);
        let y = add(&contract(t, None, Some(&b), Some(&c)), &contract(t, None, Some(&bp), Some(&cp)), -1.0);
        let a = normalize_or_keep(add(&x, &y, 1.0), a);
        let ap = normalize_or_keep(add(&x, &y, -1.0), ap);
        let u = add(&a, &ap, 1.0);
        let w = add(&a, &ap, -1.0);
        // b and b′
        let b = normalize_or_keep(
            add(&contract(t, Some(&u), None, Some(&cp)), &contract(t, Some(&w), None, Some(&c)), 1.0),
            b,
        );
        let bp = normalize_or_keep(
            add(&contract(t, Some(&u), None, Some(&c)), &contract(t, Some(&w), None, Some(&cp)), -1.0),
            bp,
        );
        // c and c′
        let c = normalize_or_keep(
            add(&contract(t, Some(&u), Some(&bp), None), &contract(t, Some(&w), Some(&b), None), 1.0),
            c,
        );
        let cp = normalize_or_keep(
            add(&contract(t, Some(&u), Some(&b), None), &contract(t, Some(&w), Some(&bp), None), -1.0),
            cp,
        );
        v = [a, ap, b, bp, c, cp];
        let next = svetlichny_objective(t, &v);
        let gain = next - value;
        value = next;
        if gain <= ASCENT_TOL * value.abs().max(1.0) {
            return (v, value, true);
        }
    }
    (v, value, false)
}

/// Uniformly random starting directions; restart `k` depends only on the
/// seed and `k`, so longer restart lists extend shorter ones.
pub fn random_starts(restarts: usize, seed: u64) -> Vec<[Vec3; 6]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..restarts)
        .map(|_| {
            let mut v = [[0.0; 3]; 6];
            for dir in v.iter_mut() {
                let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
                let phi: f64 = rng.gen_range(0.0..2.0 * PI);
                let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
                *dir = [sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta];
            }
            v
        })
        .collect()
}

/// Multi-start maximization of tr(Sρ) over all projective settings.
pub fn svetlichny_bruteforce(
    rho: &DensityOperator,
    restarts: usize,
    seed: u64,
) -> Result<SvetlichnyResult> {
    if restarts == 0 {
        return Err(Error::InvalidParameter("restart count must be positive".into()));
    }
    let t = rho.correlation_tensor3()?;
    let starts = random_starts(restarts, seed);
    let runs: Vec<([Vec3; 6], f64, bool)> = starts.into_par_iter().map(|s| ascend(&t, s)).collect();
    // first index wins ties so the result does not depend on scheduling
    let (best, value) = runs
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, r)| {
            if r.1 > bv {
                (i, r.1)
            } else {
                (bi, bv)
            }
        });
    let (vectors, _, converged) = runs[best];
    Ok(SvetlichnyResult {
        value,
        settings: MeasurementSettings::from_vectors(&vectors),
        restarts_used: restarts,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{modes, StateVector, C64};
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn ghz() -> DensityOperator {
        StateVector::from_real(
            modes(["A", "B", "C"]),
            &[FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, FRAC_1_SQRT_2],
        )
        .unwrap()
        .density()
    }

    // Explicit 8x8 Svetlichny operator built from Kronecker products.
    fn explicit_expectation(rho: &DensityOperator, v: &[Vec3; 6]) -> f64 {
        let i = C64::new(0.0, 1.0);
        let r = |x: f64| C64::new(x, 0.0);
        let obs = |n: &Vec3| {
            DMatrix::from_row_slice(2, 2, &[r(n[2]), r(n[0]) - i * n[1], r(n[0]) + i * n[1], r(-n[2])])
        };
        let [a, ap, b, bp, c, cp] = v.map(|n| obs(&n));
        let s = (&a + &ap).kronecker(&(b.kronecker(&cp) + bp.kronecker(&c)))
            + (&a - &ap).kronecker(&(b.kronecker(&c) - bp.kronecker(&cp)));
        (s * rho.matrix()).trace().re
    }

    #[test]
    fn objective_matches_explicit_operator() {
        let rho = ghz();
        let t = rho.correlation_tensor3().unwrap();
        for v in random_starts(10, 3) {
            assert_abs_diff_eq!(svetlichny_objective(&t, &v), explicit_expectation(&rho, &v), epsilon = 1e-12);
        }
    }

    #[test]
    fn ascent_never_decreases() {
        let t = ghz().correlation_tensor3().unwrap();
        for s in random_starts(8, 11) {
            let start = svetlichny_objective(&t, &s);
            let (_, end, _) = ascend(&t, s);
            assert!(end >= start - 1e-12);
        }
    }

    #[test]
    fn product_with_bell_pair_reaches_four() {
        // A = A' = σz turns the expression into 2⟨BC' + B'C⟩, which peaks at 4
        let rho = StateVector::from_real(
            modes(["A", "B", "C"]),
            &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0],
        )
        .unwrap()
        .density();
        let r = svetlichny_bruteforce(&rho, DEFAULT_RESTARTS, 0).unwrap();
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-9);
    }

    #[test]
    fn ghz_reaches_quantum_maximum() {
        let res = svetlichny_bruteforce(&ghz(), 64, 0).unwrap();
        assert_abs_diff_eq!(res.value, 4.0 * SQRT_2, epsilon = 1e-6);
        assert!(res.value <= 4.0 * SQRT_2 + 1e-9);
        assert_eq!(res.restarts_used, 64);
    }

    #[test]
    fn rejects_bad_input() {
        let two = StateVector::basis(modes(["A", "B"]), "00").unwrap().density();
        assert!(matches!(svetlichny_bruteforce(&two, 4, 0), Err(Error::WrongQubitCount { .. })));
        assert!(matches!(svetlichny_bruteforce(&ghz(), 0, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = svetlichny_bruteforce(&ghz(), 16, 42).unwrap();
        let b = svetlichny_bruteforce(&ghz(), 16, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn direction_round_trip() {
        for v in random_starts(4, 1).into_iter().flatten() {
            let back = Direction::from_vector(v).to_vector();
            for k in 0..3 {
                assert_abs_diff_eq!(back[k], v[k], epsilon = 1e-12);
            }
        }
    }
}
