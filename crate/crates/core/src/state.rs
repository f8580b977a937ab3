//! Validated density matrices and the state families used in the experiments.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, CMat, Complex, HermEig, ONE, ZERO};

/// Tolerance for the physicality checks applied at construction.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// An `n`-qubit density matrix that is Hermitian, unit-trace and positive
/// semidefinite (each within [`PHYSICAL_TOL`]).
#[derive(Clone, Debug, PartialEq)]
pub struct QState {
    n_qubits: usize,
    rho: CMat,
}

impl QState {
    /// Validates `rho` and wraps it. Unphysical input is rejected, never
    /// repaired.
    pub fn new(n_qubits: usize, rho: CMat) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 6 {
            return Err(Error::InvalidParameter(format!(
                "register of {n_qubits} qubits is not supported"
            )));
        }
        let dim = 1usize << n_qubits;
        if rho.rows() != dim || rho.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {n_qubits} qubits",
                rho.rows(),
                rho.cols()
            )));
        }
        if !rho.is_finite() {
            return Err(Error::NonFinite);
        }
        let herr = rho.hermiticity_error();
        if herr > PHYSICAL_TOL {
            return Err(Error::NotHermitian(herr));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > PHYSICAL_TOL || tr.im.abs() > PHYSICAL_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        let eig = herm_eig(&rho)?;
        let min = eig.values[0];
        if min < -PHYSICAL_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(QState { n_qubits, rho })
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized first.
    pub fn from_pure(psi: &[Complex]) -> Result<Self> {
        let dim = psi.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "state vector of length {dim} is not a qubit register"
            )));
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter("state vector has zero norm".into()));
        }
        let v: Vec<Complex> = psi.iter().map(|z| z / norm).collect();
        QState::new(dim.trailing_zeros() as usize, CMat::outer(&v, &v))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn rho(&self) -> &CMat {
        &self.rho
    }

    pub fn into_rho(self) -> CMat {
        self.rho
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ.
        self.rho.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Marginal on the listed qubits (ascending order in the result).
    pub fn reduce(&self, keep: &[usize]) -> Result<QState> {
        let r = crate::linalg::partial_trace(&self.rho, self.n_qubits, keep)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        QState::new(kept.len(), r)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&StateDoc::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: StateDoc = serde_json::from_str(s)?;
        doc.try_into()
    }
}

/// On-disk layout: `{"n_qubits": n, "rho": [[[re, im], ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct StateDoc {
    n_qubits: usize,
    rho: Vec<Vec<[f64; 2]>>,
}

impl From<&QState> for StateDoc {
    fn from(s: &QState) -> Self {
        let d = s.dim();
        let rho = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| [s.rho[(i, j)].re, s.rho[(i, j)].im])
                    .collect()
            })
            .collect();
        StateDoc {
            n_qubits: s.n_qubits,
            rho,
        }
    }
}

impl TryFrom<StateDoc> for QState {
    type Error = Error;

    fn try_from(doc: StateDoc) -> Result<Self> {
        let rows = doc.rho.len();
        let mut data = Vec::with_capacity(rows * rows);
        for row in &doc.rho {
            if row.len() != rows {
                return Err(Error::DimensionMismatch(
                    "density matrix rows are ragged".into(),
                ));
            }
            data.extend(row.iter().map(|&[re, im]| Complex::new(re, im)));
        }
        QState::new(doc.n_qubits, CMat::from_vec(rows, rows, data)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `cos α |00⟩ + sin α |11⟩`
    BellAlpha,
    /// `cos β |000⟩ + sin β |111⟩`
    GhzBeta,
}

impl FamilyKind {
    pub fn n_qubits(self) -> usize {
        match self {
            FamilyKind::BellAlpha => 2,
            FamilyKind::GhzBeta => 3,
        }
    }
}

/// A point of the one-parameter family `cos θ |0…0⟩ + sin θ |1…1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateFamily {
    pub kind: FamilyKind,
    pub angle: f64,
}

impl StateFamily {
    pub fn new(kind: FamilyKind, angle: f64) -> Result<Self> {
        if !(0.0..=TAU).contains(&angle) {
            return Err(Error::InvalidParameter(format!(
                "family angle {angle} outside [0, 2π]"
            )));
        }
        Ok(StateFamily { kind, angle })
    }

    pub fn bell() -> Self {
        StateFamily {
            kind: FamilyKind::BellAlpha,
            angle: std::f64::consts::FRAC_PI_4,
        }
    }

    pub fn ghz() -> Self {
        StateFamily {
            kind: FamilyKind::GhzBeta,
            angle: std::f64::consts::FRAC_PI_4,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.kind.n_qubits()
    }
}

pub fn make_state(family: StateFamily) -> QState {
    let n = family.n_qubits();
    let dim = 1 << n;
    let mut psi = vec![ZERO; dim];
    psi[0] = Complex::new(family.angle.cos(), 0.0);
    psi[dim - 1] = Complex::new(family.angle.sin(), 0.0);
    QState {
        n_qubits: n,
        rho: CMat::outer(&psi, &psi),
    }
}

/// `(1 − ε)/2ⁿ · I + ε |0…0⟩⟨0…0|`.
pub fn pseudopure(epsilon: f64, n_qubits: usize) -> Result<QState> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "polarization {epsilon} outside [0, 1]"
        )));
    }
    if n_qubits == 0 || n_qubits > 6 {
        return Err(Error::InvalidParameter(format!("{n_qubits} qubits")));
    }
    let dim = 1usize << n_qubits;
    let mut rho = CMat::identity(dim).scale_re((1.0 - epsilon) / dim as f64);
    rho[(0, 0)] += ONE * epsilon;
    QState::new(n_qubits, rho)
}

pub fn purity(s: &QState) -> f64 {
    s.purity()
}

/// Eigenvalues of a unit-trace state at or below this are treated as exact
/// zeros when restricting to its support.
const SUPPORT_FLOOR: f64 = 1e-13;

/// Uhlmann–Jozsa fidelity, squared convention: `(tr √(√a b √a))²`.
///
/// Evaluated in the support of whichever argument has lower numerical rank:
/// with `√ρ = A A†`, `A = V √p`, the nonzero spectrum of `√ρ σ √ρ` is that of
/// `A† σ A`. Round-off eigenvalues of a rank-deficient `√ρ σ √ρ` would
/// otherwise contribute `O(√ε)` to the trace.
pub fn fidelity(a: &QState, b: &QState) -> Result<f64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::DimensionMismatch(format!(
            "fidelity between {}- and {}-qubit states",
            a.n_qubits, b.n_qubits
        )));
    }
    let ea = herm_eig(&a.rho)?;
    let eb = herm_eig(&b.rho)?;
    let rank = |e: &HermEig| e.values.iter().filter(|&&p| p > SUPPORT_FLOOR).count();
    let (eig, other) = if rank(&ea) <= rank(&eb) {
        (&ea, &b.rho)
    } else {
        (&eb, &a.rho)
    };

    let d = a.dim();
    let support: Vec<usize> = (0..d).filter(|&k| eig.values[k] > SUPPORT_FLOOR).collect();
    let mut half = CMat::zeros(d, support.len());
    for (col, &k) in support.iter().enumerate() {
        let w = eig.values[k].sqrt();
        for i in 0..d {
            half[(i, col)] = eig.vectors[(i, k)] * w;
        }
    }
    let inner = (&(&half.dagger() * other) * &half).hermitian_part();
    let root_trace: f64 = herm_eig(&inner)?
        .values
        .iter()
        .map(|&m| m.max(0.0).sqrt())
        .sum();
    Ok(root_trace.powi(2).clamp(0.0, 1.0))
}
