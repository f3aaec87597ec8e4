//! Critical temperatures, parameter sweeps and monogamy relations.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::schwarzschild::{
    measures_catalog, svetlichny_formula, BruteForce, MeasuresCatalog, ReducedStateId,
    ScenarioParams,
};

/// Bisection bracket for the critical temperature, in units of ω.
pub const BISECTION_BRACKET: (f64, f64) = (1e-6, 1e3);
/// Bisection stops once the bracket is narrower than this (times ω).
pub const BISECTION_TOL: f64 = 1e-9;
pub const CRITICAL_AGREEMENT_TOL: f64 = 1e-6;
pub const MONOGAMY_TOL: f64 = 1e-12;

/// Temperature at which S(ρ_{A B_I C_I}) falls to the local bound 4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalTemperature {
    /// −ω / ln(2α√(2(1−α²)) − 1)
    pub closed_form: f64,
    /// Root of S(T) − 4 by bisection, when the bracket straddles it.
    pub bisection: Option<f64>,
}

impl CriticalTemperature {
    pub fn discrepancy(&self) -> Option<f64> {
        self.bisection.map(|b| (b - self.closed_form).abs())
    }

    pub fn agrees(&self) -> bool {
        self.discrepancy().map_or(true, |d| d <= CRITICAL_AGREEMENT_TOL)
    }
}

fn accessible_svetlichny(alpha: f64, omega: f64, temperature: f64) -> f64 {
    let params = ScenarioParams {
        alpha,
        omega,
        temperature,
    };
    svetlichny_formula(&params, ReducedStateId::ABICI).expect("tripartite id")
}

/// Bisection for S(T) = 4 on the fixed bracket; `None` if it is not straddled.
pub fn bisect_critical_temperature(alpha: f64, omega: f64) -> Option<f64> {
    let f = |t: f64| accessible_svetlichny(alpha, omega, t) - 4.0;
    let (mut lo, mut hi) = (BISECTION_BRACKET.0 * omega, BISECTION_BRACKET.1 * omega);
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return None;
    }
    while hi - lo > BISECTION_TOL * omega {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Critical Hawking temperature of the accessible Svetlichny value, or `None`
/// when 2α√(2(1−α²)) ≤ 1 and the state never violates the bound.
pub fn critical_temperature(alpha: f64, omega: f64) -> Result<Option<CriticalTemperature>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
    }
    let g = 2.0 * alpha * (2.0 * (1.0 - alpha) * (1.0 + alpha)).sqrt();
    if g <= 1.0 {
        return Ok(None);
    }
    Ok(Some(CriticalTemperature {
        closed_form: -omega / (g - 1.0).ln(),
        bisection: bisect_critical_temperature(alpha, omega),
    }))
}

/// Per-α² critical temperature over an α² grid inside (0, 1).
pub fn sudden_death_scan(
    omega: f64,
    alpha_sq_grid: &[f64],
) -> Result<Vec<(f64, Option<CriticalTemperature>)>> {
    if alpha_sq_grid.is_empty() {
        return Err(Error::InvalidGrid("empty alpha^2 grid".into()));
    }
    alpha_sq_grid
        .iter()
        .map(|&a2| {
            if !(a2 > 0.0 && a2 < 1.0) {
                return Err(Error::InvalidGrid(format!("alpha^2 = {a2} outside (0, 1)")));
            }
            Ok((a2, critical_temperature(a2.sqrt(), omega)?))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Relation {
    pub lhs: f64,
    pub rhs: f64,
}

impl Relation {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// C(ρ_ijk)² ≥ C(ρ_ij)² + C(ρ_ik)² for one focus mode i.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CkwCheck {
    pub focus: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

impl CkwCheck {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonogamyReport {
    /// C(AB_IC_I) + C(AB_IIC_II) = 2α√(1−α²)
    pub linear: Relation,
    /// Sum of the four squared A–B–C concurrences = 4α²(1−α²)
    pub quadratic: Relation,
    /// α²[C(AB_IC_I)² + C(AB_IIC_II)²] + (1−α²)[C(AB_IB_II)² + C(AC_IC_II)²]
    /// against the looser right-hand side 4α²(1−α²), which it never reaches for 0 < α < 1.
    pub weighted_loose: Relation,
    /// The same left-hand side against 4α⁴(1−α²), which it equals identically.
    pub weighted: Relation,
    pub ckw: [CkwCheck; 3],
    pub tolerance: f64,
}

impl MonogamyReport {
    pub fn linear_holds(&self) -> bool {
        self.linear.residual() <= self.tolerance
    }

    pub fn quadratic_holds(&self) -> bool {
        self.quadratic.residual() <= self.tolerance
    }

    pub fn weighted_holds(&self) -> bool {
        self.weighted.residual() <= self.tolerance
    }

    pub fn weighted_loose_holds(&self) -> bool {
        self.weighted_loose.residual() <= self.tolerance
    }

    pub fn ckw_holds(&self) -> bool {
        self.ckw.iter().all(|c| c.slack() >= -self.tolerance)
    }
}

pub fn monogamy_from_catalog(cat: &MeasuresCatalog, tolerance: f64) -> MonogamyReport {
    use ReducedStateId::*;
    let p = &cat.params;
    let a2 = p.alpha_sq();
    let b2 = p.beta() * p.beta();
    let c = |id| cat.tripartite(id).gte;
    let pair = |id| cat.pairwise(id).concurrence_matrix;
    let (c1, c2, c3, c4) = (c(ABICI), c(ABICII), c(ABIICI), c(ABIICII));
    let (cb, cc) = (c(ABIBII), c(ACICII));
    let weighted = a2 * (c1 * c1 + c4 * c4) + b2 * (cb * cb + cc * cc);
    let ckw_lhs = c1 * c1;
    let (ab, ac, bc) = (pair(ABI), pair(ACI), pair(BICI));
    MonogamyReport {
        linear: Relation {
            lhs: c1 + c4,
            rhs: 2.0 * p.alpha * p.beta(),
        },
        quadratic: Relation {
            lhs: c1 * c1 + c3 * c3 + c2 * c2 + c4 * c4,
            rhs: 4.0 * a2 * b2,
        },
        weighted_loose: Relation {
            lhs: weighted,
            rhs: 4.0 * a2 * b2,
        },
        weighted: Relation {
            lhs: weighted,
            rhs: 4.0 * a2 * a2 * b2,
        },
        ckw: [
            CkwCheck {
                focus: "A",
                lhs: ckw_lhs,
                rhs: ab * ab + ac * ac,
            },
            CkwCheck {
                focus: "B_I",
                lhs: ckw_lhs,
                rhs: ab * ab + bc * bc,
            },
            CkwCheck {
                focus: "C_I",
                lhs: ckw_lhs,
                rhs: ac * ac + bc * bc,
            },
        ],
        tolerance,
    }
}

pub fn check_monogamy(params: &ScenarioParams) -> Result<MonogamyReport> {
    Ok(monogamy_from_catalog(&measures_catalog(params, None)?, MONOGAMY_TOL))
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub alpha_sq: f64,
    pub omega: f64,
    pub temperature: f64,
    pub catalog: MeasuresCatalog,
    pub monogamy: MonogamyReport,
}

impl SweepRecord {
    pub fn evaluate(params: &ScenarioParams, brute: Option<BruteForce>) -> Result<Self> {
        let catalog = measures_catalog(params, brute)?;
        let monogamy = monogamy_from_catalog(&catalog, MONOGAMY_TOL);
        Ok(SweepRecord {
            alpha_sq: params.alpha_sq(),
            omega: params.omega,
            temperature: params.temperature,
            catalog,
            monogamy,
        })
    }
}

/// Records along a strictly increasing positive temperature grid, in grid order.
pub fn sweep_temperature(
    alpha: f64,
    omega: f64,
    t_grid: &[f64],
    brute: Option<BruteForce>,
) -> Result<Vec<SweepRecord>> {
    if t_grid.is_empty() {
        return Err(Error::InvalidGrid("empty temperature grid".into()));
    }
    if t_grid.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidGrid("temperatures must be positive and finite".into()));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("temperature grid must be strictly increasing".into()));
    }
    let params = t_grid
        .iter()
        .map(|&t| ScenarioParams::new(alpha, omega, t))
        .collect::<Result<Vec<_>>>()?;
    params
        .par_iter()
        .map(|p| SweepRecord::evaluate(p, brute))
        .collect()
}

/// Records along an α² grid at fixed temperature, in grid order.
pub fn sweep_alpha(
    temperature: f64,
    omega: f64,
    alpha_sq_grid: &[f64],
    brute: Option<BruteForce>,
) -> Result<Vec<SweepRecord>> {
    if alpha_sq_grid.is_empty() {
        return Err(Error::InvalidGrid("empty alpha^2 grid".into()));
    }
    if let Some(bad) = alpha_sq_grid.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::InvalidGrid(format!("alpha^2 = {bad} outside [0, 1]")));
    }
    let params = alpha_sq_grid
        .iter()
        .map(|&a2| ScenarioParams::from_alpha_sq(a2, omega, temperature))
        .collect::<Result<Vec<_>>>()?;
    params
        .par_iter()
        .map(|p| SweepRecord::evaluate(p, brute))
        .collect()
}

/// `n` points from `lo` to `hi` inclusive, linear or geometric.
pub fn grid(lo: f64, hi: f64, n: usize, log_scale: bool) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidGrid("step count must be at least 1".into()));
    }
    if !(lo.is_finite() && hi.is_finite()) || hi < lo || (n > 1 && hi == lo) {
        return Err(Error::InvalidGrid(format!("bad bounds [{lo}, {hi}]")));
    }
    if log_scale && !(lo > 0.0) {
        return Err(Error::InvalidGrid("log-scale grid needs positive bounds".into()));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            if k == n - 1 {
                return hi;
            }
            let f = k as f64 / last;
            if log_scale {
                (lo.ln() + f * (hi.ln() - lo.ln())).exp()
            } else {
                lo + f * (hi - lo)
            }
        })
        .collect())
}
