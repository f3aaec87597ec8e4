//! Hawking-degraded GHZ-like Dirac state shared by an inertial observer A and
//! two observers B, C hovering outside a Schwarzschild horizon.
//!
//! Each of B and C splits into an exterior mode (`B_I`, `C_I`) and an
//! interior anti-particle mode (`B_II`, `C_II`). The five-mode state is kept
//! in the order (A, B_I, B_II, C_I, C_II).

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::measures::{
    chsh_max, chsh_xstate, concurrence_xstate, gte_xstate, svetlichny_xstate, XStateParams2,
    XStateParams3,
};
use crate::quantum::{BasisPermutation, DensityOperator, Mode, StateVector, C64};
use crate::svetlichny::svetlichny_bruteforce;

pub const MODE_NAMES: [&str; 5] = ["A", "B_I", "B_II", "C_I", "C_II"];

pub fn all_modes() -> Vec<Mode> {
    MODE_NAMES.iter().map(|s| Mode::from(*s)).collect()
}

/// T = 1/(8πM).
pub fn hawking_temperature(mass: f64) -> Result<f64> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::InvalidParameter(format!("black hole mass must be positive, got {mass}")));
    }
    Ok(1.0 / (8.0 * PI * mass))
}

/// Fermi-Dirac weights p = (1+e^{−ω/T})⁻¹, q = (1+e^{ω/T})⁻¹ and √(pq).
///
/// Evaluated through e^{−ω/T} only, so T → 0 gives p = 1, q = 0 without
/// overflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalWeights {
    pub p: f64,
    pub q: f64,
    pub sqrt_pq: f64,
}

impl ThermalWeights {
    pub fn new(omega: f64, temperature: f64) -> Self {
        let x = omega / temperature;
        let e = (-x).exp();
        ThermalWeights {
            p: 1.0 / (1.0 + e),
            q: e / (1.0 + e),
            sqrt_pq: (-0.5 * x).exp() / (1.0 + e),
        }
    }

    /// pq = (e^{ω/T} + e^{−ω/T} + 2)⁻¹
    pub fn pq(&self) -> f64 {
        self.sqrt_pq * self.sqrt_pq
    }

    /// (p − q)² = (e^{ω/T}+1)⁻²(e^{ω/T}−1)²
    pub fn contrast_sq(&self) -> f64 {
        (self.p - self.q).powi(2)
    }
}

/// Kruskal vacuum amplitudes cos η, sin η.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeAmplitudes {
    pub omega: f64,
    pub temperature: f64,
    pub cos_eta: f64,
    pub sin_eta: f64,
}

impl ModeAmplitudes {
    pub fn new(omega: f64, temperature: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        if !(temperature > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        let x = omega / temperature;
        let e = (-x).exp();
        let root = (1.0 + e).sqrt();
        Ok(ModeAmplitudes {
            omega,
            temperature,
            cos_eta: 1.0 / root,
            sin_eta: (-0.5 * x).exp() / root,
        })
    }

    pub fn from_mass(omega: f64, mass: f64) -> Result<Self> {
        Self::new(omega, hawking_temperature(mass)?)
    }
}

/// State parameter α, frequency ω and Hawking temperature T.
///
/// `temperature == 0` is accepted and evaluated as the analytic T → 0 limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioParams {
    pub alpha: f64,
    pub omega: f64,
    pub temperature: f64,
}

impl ScenarioParams {
    pub fn new(alpha: f64, omega: f64, temperature: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        if !(temperature >= 0.0) || temperature.is_infinite() {
            return Err(Error::InvalidParameter(format!(
                "temperature must be non-negative and finite, got {temperature}"
            )));
        }
        Ok(ScenarioParams {
            alpha,
            omega,
            temperature,
        })
    }

    pub fn from_alpha_sq(alpha_sq: f64, omega: f64, temperature: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::InvalidParameter(format!(
                "alpha^2 must lie in [0, 1], got {alpha_sq}"
            )));
        }
        Self::new(alpha_sq.sqrt(), omega, temperature)
    }

    pub fn from_mass(alpha: f64, omega: f64, mass: f64) -> Result<Self> {
        Self::new(alpha, omega, hawking_temperature(mass)?)
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha * self.alpha
    }

    /// √(1 − α²), computed from α directly.
    pub fn beta(&self) -> f64 {
        ((1.0 - self.alpha) * (1.0 + self.alpha)).max(0.0).sqrt()
    }

    pub fn weights(&self) -> ThermalWeights {
        ThermalWeights::new(self.omega, self.temperature)
    }
}

/// Named reductions of the five-mode state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReducedStateId {
    ABICI,
    ABICII,
    ABIICI,
    ABIICII,
    ABIBII,
    ACICII,
    BIBII,
    CICII,
    ABI,
    ACI,
    BICI,
    BIICII,
    ABII,
    ACII,
    BICII,
    BIICI,
}

impl ReducedStateId {
    pub const TRIPARTITE: [ReducedStateId; 6] = [
        ReducedStateId::ABICI,
        ReducedStateId::ABICII,
        ReducedStateId::ABIICI,
        ReducedStateId::ABIICII,
        ReducedStateId::ABIBII,
        ReducedStateId::ACICII,
    ];

    pub const PAIRWISE: [ReducedStateId; 10] = [
        ReducedStateId::BIBII,
        ReducedStateId::CICII,
        ReducedStateId::ABI,
        ReducedStateId::ACI,
        ReducedStateId::BICI,
        ReducedStateId::BIICII,
        ReducedStateId::ABII,
        ReducedStateId::ACII,
        ReducedStateId::BICII,
        ReducedStateId::BIICI,
    ];

    /// Reductions whose partial-trace matrix is already in X form.
    pub const STANDARD_X: [ReducedStateId; 4] = [
        ReducedStateId::ABICI,
        ReducedStateId::ABICII,
        ReducedStateId::ABIICI,
        ReducedStateId::ABIICII,
    ];

    pub fn all() -> impl Iterator<Item = ReducedStateId> {
        Self::TRIPARTITE.into_iter().chain(Self::PAIRWISE)
    }

    pub fn mode_names(self) -> &'static [&'static str] {
        use ReducedStateId::*;
        match self {
            ABICI => &["A", "B_I", "C_I"],
            ABICII => &["A", "B_I", "C_II"],
            ABIICI => &["A", "B_II", "C_I"],
            ABIICII => &["A", "B_II", "C_II"],
            ABIBII => &["A", "B_I", "B_II"],
            ACICII => &["A", "C_I", "C_II"],
            BIBII => &["B_I", "B_II"],
            CICII => &["C_I", "C_II"],
            ABI => &["A", "B_I"],
            ACI => &["A", "C_I"],
            BICI => &["B_I", "C_I"],
            BIICII => &["B_II", "C_II"],
            ABII => &["A", "B_II"],
            ACII => &["A", "C_II"],
            BICII => &["B_I", "C_II"],
            BIICI => &["B_II", "C_I"],
        }
    }

    pub fn modes(self) -> Vec<Mode> {
        self.mode_names().iter().map(|s| Mode::from(*s)).collect()
    }

    pub fn is_tripartite(self) -> bool {
        self.mode_names().len() == 3
    }

    /// Column tag such as `A_BI_CII`.
    pub fn tag(self) -> String {
        self.mode_names()
            .iter()
            .map(|m| m.replace('_', ""))
            .collect::<Vec<_>>()
            .join("_")
    }

    /// The id obtained by exchanging Bob's and Charlie's modes.
    pub fn mirrored(self) -> ReducedStateId {
        use ReducedStateId::*;
        match self {
            ABICI => ABICI,
            ABICII => ABIICI,
            ABIICI => ABICII,
            ABIICII => ABIICII,
            ABIBII => ACICII,
            ACICII => ABIBII,
            BIBII => CICII,
            CICII => BIBII,
            ABI => ACI,
            ACI => ABI,
            BICI => BICI,
            BIICII => BIICII,
            ABII => ACII,
            ACII => ABII,
            BICII => BIICI,
            BIICI => BICII,
        }
    }

    /// Basis ordering in which [`closed_form_elements`] is written.
    ///
    /// For A B_I B_II (and its mirror) this is |000⟩, |100⟩, |010⟩, |001⟩,
    /// |101⟩, |111⟩, |110⟩, |011⟩, which puts the matrix in X form; all
    /// other ids use the standard ordering.
    pub fn closed_form_basis(self) -> BasisPermutation {
        match self {
            ReducedStateId::ABIBII | ReducedStateId::ACICII => BasisPermutation::from_bitstrings(&[
                "000", "100", "010", "001", "101", "111", "110", "011",
            ])
            .expect("fixed ordering is a permutation"),
            id => BasisPermutation::identity(1 << id.mode_names().len()),
        }
    }
}

impl std::fmt::Display for ReducedStateId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.tag())
    }
}

impl std::str::FromStr for ReducedStateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReducedStateId::all()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown reduced state `{s}`")))
    }
}

/// The five-mode state over (A, B_I, B_II, C_I, C_II).
pub fn build_state(params: &ScenarioParams) -> Result<StateVector> {
    let w = params.weights();
    let alpha = params.alpha;
    let mut amps = vec![C64::new(0.0, 0.0); 32];
    let mut set = |bits: &str, v: f64| {
        let idx = usize::from_str_radix(bits, 2).expect("binary literal");
        amps[idx] = C64::new(v, 0.0);
    };
    set("01111", alpha * w.q);
    set("11010", params.beta());
    set("00011", alpha * w.sqrt_pq);
    set("01100", alpha * w.sqrt_pq);
    set("00000", alpha * w.p);
    StateVector::new(all_modes(), amps)
}

/// Partial trace of the five-mode state onto the id's modes, standard basis.
pub fn reduced_state(params: &ScenarioParams, id: ReducedStateId) -> Result<DensityOperator> {
    build_state(params)?.density().partial_trace(&id.modes())
}

fn diag4(d: [f64; 4]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&d))
}

fn x8(n: [f64; 4], m: [f64; 4], c: [f64; 4]) -> DMatrix<f64> {
    let mut mat = DMatrix::zeros(8, 8);
    for i in 0..4 {
        mat[(i, i)] = n[i];
        mat[(7 - i, 7 - i)] = m[i];
        mat[(i, 7 - i)] = c[i];
        mat[(7 - i, i)] = c[i];
    }
    mat
}

/// Explicit matrix elements of each reduction, written in the basis given by
/// [`ReducedStateId::closed_form_basis`].
pub fn closed_form_elements(params: &ScenarioParams, id: ReducedStateId) -> DMatrix<f64> {
    use ReducedStateId::*;
    let w = params.weights();
    let (p, q, pq, spq) = (w.p, w.q, w.pq(), w.sqrt_pq);
    let a2 = params.alpha_sq();
    let b2 = 1.0 - a2;
    let s = params.alpha * params.beta();
    let n = [a2 * p * p, a2 * pq, a2 * pq, a2 * q * q];
    match id {
        ABICI => x8(n, [b2, 0.0, 0.0, 0.0], [s * p, 0.0, 0.0, 0.0]),
        ABICII => x8(n, [0.0, b2, 0.0, 0.0], [0.0, s * spq, 0.0, 0.0]),
        ABIICI => x8(n, [0.0, 0.0, b2, 0.0], [0.0, 0.0, s * spq, 0.0]),
        ABIICII => x8(n, [0.0, 0.0, 0.0, b2], [0.0, 0.0, 0.0, s * q]),
        ABIBII | ACICII => x8(
            [a2 * p, 0.0, 0.0, 0.0],
            [a2 * q, b2, 0.0, 0.0],
            [a2 * spq, 0.0, 0.0, 0.0],
        ),
        BIBII | CICII => {
            let mut m = diag4([a2 * p, 0.0, b2, a2 * q]);
            m[(0, 3)] = a2 * spq;
            m[(3, 0)] = a2 * spq;
            m
        }
        ABI | ACI => diag4([a2 * p, a2 * q, 0.0, b2]),
        BICI => diag4([a2 * p * p, a2 * pq, a2 * pq, a2 * q * q + b2]),
        BIICII => diag4([a2 * p * p + b2, a2 * pq, a2 * pq, a2 * q * q]),
        ABII | ACII => diag4([a2 * p, a2 * q, b2, 0.0]),
        BICII => diag4([a2 * p * p, a2 * pq, a2 * pq + b2, a2 * q * q]),
        // (B_II, C_I) is the (C_II, B_I) ordering of B_I C_II with factors swapped
        BIICI => diag4([a2 * p * p, a2 * pq + b2, a2 * pq, a2 * q * q]),
    }
}

/// Svetlichny value from the closed-form expressions in α and T.
pub fn svetlichny_formula(params: &ScenarioParams, id: ReducedStateId) -> Option<f64> {
    use ReducedStateId::*;
    let w = params.weights();
    let a2 = params.alpha_sq();
    let lead = 8.0 * params.alpha * SQRT_2 * params.beta();
    let c2 = w.contrast_sq();
    Some(match id {
        ABICI => (lead * w.p).max(4.0 * (a2 * c2 + a2 - 1.0).abs()),
        ABICII | ABIICI => (lead * w.sqrt_pq).max(4.0 * (a2 * c2 - a2 + 1.0).abs()),
        ABIICII => (lead * w.q).max(4.0 * (a2 * c2 + a2 - 1.0).abs()),
        ABIBII | ACICII => {
            (8.0 * SQRT_2 * a2 * w.sqrt_pq).max(4.0 * (1.0 - 2.0 * a2 * w.q).abs())
        }
        _ => return None,
    })
}

/// Genuine tripartite concurrence from the closed-form expressions.
pub fn gte_formula(params: &ScenarioParams, id: ReducedStateId) -> Option<f64> {
    use ReducedStateId::*;
    let w = params.weights();
    let lead = 2.0 * params.alpha * params.beta();
    Some(match id {
        ABICI => lead * w.p,
        ABICII | ABIICI => lead * w.sqrt_pq,
        ABIICII => lead * w.q,
        ABIBII | ACICII => 2.0 * params.alpha_sq() * w.sqrt_pq,
        _ => return None,
    })
}

/// Alternate two-branch form of the B_I B_II Bell signal:
/// max{4√2 α²√(pq), 2√((2α²−1)² + 4α²√(pq))}.
///
/// The second branch differs from the eigenvalue route, which gives
/// 2√((2α²−1)² + 4α⁴pq); it is kept only for comparison.
pub fn bell_bibii_alternate(params: &ScenarioParams) -> f64 {
    let w = params.weights();
    let a2 = params.alpha_sq();
    let first = 4.0 * SQRT_2 * a2 * w.sqrt_pq;
    let second = 2.0 * ((2.0 * a2 - 1.0).powi(2) + 4.0 * a2 * w.sqrt_pq).sqrt();
    first.max(second)
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// Three-qubit X parameters of a tripartite reduction in its closed-form basis.
pub fn tripartite_x_params(params: &ScenarioParams, id: ReducedStateId) -> Result<XStateParams3> {
    XStateParams3::from_matrix(&to_complex(&closed_form_elements(params, id)))
}

pub fn pairwise_x_params(params: &ScenarioParams, id: ReducedStateId) -> Result<XStateParams2> {
    XStateParams2::from_matrix(&to_complex(&closed_form_elements(params, id)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripartiteMeasures {
    pub id: ReducedStateId,
    /// Closed-form Svetlichny value.
    pub svetlichny: f64,
    /// X-state formula applied to the partial-trace matrix (re-ordered into
    /// the closed-form basis where needed).
    pub svetlichny_matrix: f64,
    pub svetlichny_bruteforce: Option<f64>,
    pub gte: f64,
    pub gte_matrix: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairwiseMeasures {
    pub id: ReducedStateId,
    /// X-state eigenvalue formula on the closed-form matrix.
    pub bell: f64,
    /// Horodecki eigenvalue route on the partial-trace matrix.
    pub bell_matrix: f64,
    pub concurrence: f64,
    pub concurrence_matrix: f64,
}

/// Every Svetlichny value, GTE, Bell signal and concurrence at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuresCatalog {
    pub params: ScenarioParams,
    pub tripartite: Vec<TripartiteMeasures>,
    pub pairwise: Vec<PairwiseMeasures>,
    /// Printed form of the B_I B_II Bell signal, for comparison.
    pub bell_bibii_alternate: f64,
}

/// Brute-force options for the catalog; `None` skips the optimizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub restarts: usize,
    pub seed: u64,
}

impl MeasuresCatalog {
    pub fn tripartite(&self, id: ReducedStateId) -> &TripartiteMeasures {
        self.tripartite
            .iter()
            .find(|t| t.id == id)
            .expect("catalog covers every tripartite id")
    }

    pub fn pairwise(&self, id: ReducedStateId) -> &PairwiseMeasures {
        self.pairwise
            .iter()
            .find(|t| t.id == id)
            .expect("catalog covers every pairwise id")
    }
}

pub fn measures_catalog(params: &ScenarioParams, brute: Option<BruteForce>) -> Result<MeasuresCatalog> {
    let state = build_state(params)?.density();
    let mut tripartite = Vec::with_capacity(6);
    for id in ReducedStateId::TRIPARTITE {
        let rho = state.partial_trace(&id.modes())?;
        let x = XStateParams3::from_matrix(&rho.permute_basis(&id.closed_form_basis())?)?;
        let bf = match brute {
            Some(b) => Some(svetlichny_bruteforce(&rho, b.restarts, b.seed)?.value),
            None => None,
        };
        tripartite.push(TripartiteMeasures {
            id,
            svetlichny: svetlichny_formula(params, id).expect("tripartite id"),
            svetlichny_matrix: svetlichny_xstate(&x),
            svetlichny_bruteforce: bf,
            gte: gte_formula(params, id).expect("tripartite id"),
            gte_matrix: gte_xstate(&x),
        });
    }
    let mut pairwise = Vec::with_capacity(10);
    for id in ReducedStateId::PAIRWISE {
        let rho = state.partial_trace(&id.modes())?;
        let closed = pairwise_x_params(params, id)?;
        let from_matrix = XStateParams2::from_density(&rho)?;
        pairwise.push(PairwiseMeasures {
            id,
            bell: chsh_xstate(&closed),
            bell_matrix: chsh_max(&rho)?,
            concurrence: concurrence_xstate(&closed),
            concurrence_matrix: concurrence_xstate(&from_matrix),
        });
    }
    Ok(MeasuresCatalog {
        params: *params,
        tripartite,
        pairwise,
        bell_bibii_alternate: bell_bibii_alternate(params),
    })
}
