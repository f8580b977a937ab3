//! Relative-entropy coherence in the computational basis, split into the part
//! carried by individual qubits (local) and the remainder (global).
//!
//! All entropies are in bits.

use crate::error::Result;
use crate::linalg::{herm_eig, kron_all};
use crate::state::QState;

/// Eigenvalues at or below this are dropped from entropy sums.
pub const EIGEN_FLOOR: f64 = 1e-12;

const ROUNDOFF: f64 = 1e-9;

fn shannon_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    -probs
        .into_iter()
        .filter(|&p| p > EIGEN_FLOOR)
        .map(|p| p * p.log2())
        .sum::<f64>()
}

/// Von Neumann entropy `−tr ρ log₂ ρ`.
pub fn vn_entropy(s: &QState) -> Result<f64> {
    let eig = herm_eig(s.rho())?;
    Ok(shannon_bits(eig.values).max(0.0))
}

/// `S(diag ρ) − S(ρ)`.
pub fn c_total(s: &QState) -> Result<f64> {
    let diag = shannon_bits(s.rho().diag_re());
    Ok(diag - vn_entropy(s)?)
}

fn marginals(s: &QState) -> Result<Vec<QState>> {
    (0..s.n_qubits()).map(|q| s.reduce(&[q])).collect()
}

/// Local coherence from its definition: total coherence of the product of
/// single-qubit marginals `ρ₁ ⊗ ρ₂ ⊗ …`.
pub fn c_local_product(s: &QState) -> Result<f64> {
    let margs = marginals(s)?;
    let product = kron_all(margs.iter().map(|m| m.rho()));
    c_total(&QState::new(s.n_qubits(), product)?)
}

/// Local coherence as the sum of the marginals' total coherences (entropy is
/// additive over tensor products).
pub fn c_local_sum(s: &QState) -> Result<f64> {
    marginals(s)?.iter().map(c_total).sum()
}

pub fn c_local(s: &QState) -> Result<f64> {
    c_local_product(s)
}

pub fn c_global(s: &QState) -> Result<f64> {
    Ok(c_total(s)? - c_local(s)?)
}

/// `(C_T, C_G, C_L)` at one instant. `c_total == c_global + c_local` up to
/// round-off; values in `[−1e-9, 0)` are reported as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceTriple {
    pub c_total: f64,
    pub c_global: f64,
    pub c_local: f64,
}

fn clamp_roundoff(x: f64) -> f64 {
    if (-ROUNDOFF..0.0).contains(&x) {
        0.0
    } else {
        x
    }
}

pub fn coherence_triple(s: &QState) -> Result<CoherenceTriple> {
    let total = c_total(s)?;
    let local = c_local(s)?;
    Ok(CoherenceTriple {
        c_total: clamp_roundoff(total),
        c_global: clamp_roundoff(total - local),
        c_local: clamp_roundoff(local),
    })
}
