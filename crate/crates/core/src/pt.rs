//! The single-qubit PT-symmetric Hamiltonian `H = σx + i r σz` and its
//! non-unitary propagator `exp(−i H t)`.
//!
//! `H² = (1 − r²) I`, so the exponential has a closed form in each regime:
//!
//! * unbroken (`r < 1`): `cos(ωt) I − i sin(ωt)/ω H`, `ω = √(1 − r²)`
//! * exceptional (`r = 1`): `I − i t H`, exact because `H` is nilpotent
//! * broken (`r > 1`): `cosh(κt) I − i sinh(κt)/κ H`, `κ = √(r² − 1)`

use crate::error::{Error, Result};
use crate::linalg::{embed_single, CMat, Complex, I, ONE};
use crate::state::QState;

/// Distance from `r = 1` within which the exceptional-point closed form is used.
pub const EXCEPTIONAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Unbroken,
    Exceptional,
    Broken,
}

/// Non-hermiticity `r` together with the quantities derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PTParams {
    r: f64,
    regime: Regime,
}

impl PTParams {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "non-hermiticity r = {r} must be finite and non-negative"
            )));
        }
        let regime = if (r - 1.0).abs() <= EXCEPTIONAL_TOL {
            Regime::Exceptional
        } else if r < 1.0 {
            Regime::Unbroken
        } else {
            Regime::Broken
        };
        Ok(PTParams { r, regime })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Energy gap `2√(1 − r²)`; zero outside the unbroken regime.
    pub fn gap(&self) -> f64 {
        match self.regime {
            Regime::Unbroken => 2.0 * self.omega(),
            _ => 0.0,
        }
    }

    /// Growth rate `√(r² − 1)`; zero outside the broken regime.
    pub fn kappa(&self) -> f64 {
        match self.regime {
            Regime::Broken => ((self.r - 1.0) * (self.r + 1.0)).sqrt(),
            _ => 0.0,
        }
    }

    /// Oscillation frequency `√(1 − r²)` of the unbroken regime.
    pub(crate) fn omega(&self) -> f64 {
        ((1.0 - self.r) * (1.0 + self.r)).max(0.0).sqrt()
    }

    /// Period `2π/g` of the unbroken dynamics.
    pub fn period(&self) -> Option<f64> {
        match self.regime {
            Regime::Unbroken => Some(std::f64::consts::TAU / self.gap()),
            _ => None,
        }
    }
}

pub fn h_pt(r: f64) -> CMat {
    let ir = Complex::new(0.0, r);
    CMat::from_rows(&[&[ir, ONE], &[ONE, -ir]])
}

// a·I − i·b·H for H = [[ir, 1], [1, −ir]].
fn identity_plus_h(r: f64, a: f64, b: f64) -> CMat {
    let ib = I * b;
    CMat::from_rows(&[
        &[Complex::new(a + b * r, 0.0), -ib],
        &[-ib, Complex::new(a - b * r, 0.0)],
    ])
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "evolution time t = {t} must be finite and non-negative"
        )));
    }
    Ok(())
}

/// `exp(−i H_PT t)` in closed form.
pub fn u_pt(r: f64, t: f64) -> Result<CMat> {
    let p = PTParams::new(r)?;
    check_time(t)?;
    let u = match p.regime() {
        Regime::Unbroken => {
            let w = p.omega();
            identity_plus_h(r, (w * t).cos(), (w * t).sin() / w)
        }
        Regime::Exceptional => identity_plus_h(r, 1.0, t),
        Regime::Broken => {
            let k = p.kappa();
            identity_plus_h(r, (k * t).cosh(), (k * t).sinh() / k)
        }
    };
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(u)
}

/// `u_pt(r, t)` up to a positive scalar, finite for every `t`. In the broken
/// regime this divides by `cosh(κt)`, which cancels after normalization.
pub(crate) fn u_pt_direction(p: PTParams, t: f64) -> CMat {
    let r = p.r();
    match p.regime() {
        Regime::Unbroken => {
            let w = p.omega();
            identity_plus_h(r, (w * t).cos(), (w * t).sin() / w)
        }
        Regime::Exceptional => identity_plus_h(r, 1.0, t),
        Regime::Broken => {
            let k = p.kappa();
            identity_plus_h(r, 1.0, (k * t).tanh() / k)
        }
    }
}

/// Applies `exp(−i H_PT t)` to one qubit and renormalizes:
/// `U ρ U† / tr(U ρ U†)`.
pub fn evolve_local(state: &QState, target_qubit: usize, r: f64, t: f64) -> Result<QState> {
    let p = PTParams::new(r)?;
    check_time(t)?;
    let n = state.n_qubits();
    let u = embed_single(&u_pt_direction(p, t), target_qubit, n)?;
    let evolved = state.rho().conjugate_by(&u)?;
    let norm = evolved.trace().re;
    if !(norm > 1e-300) || !norm.is_finite() {
        return Err(Error::VanishingNorm(norm));
    }
    QState::new(n, evolved.hermitian_part().scale_re(1.0 / norm))
}
