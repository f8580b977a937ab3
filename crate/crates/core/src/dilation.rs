//! Ancilla dilation of the PT propagator.
//!
//! The circuit prepares the ancilla with `V(θ)`, applies `U₁(φ)` to the
//! target when the ancilla is `|0⟩` and `U₂ = σz` when it is `|1⟩`, then a
//! Hadamard on the ancilla. Projecting the ancilla on `|0⟩` leaves
//! `(cos θ U₁ + sin θ U₂)/√2` acting on the work register, and the angles are
//! chosen so that `cos θ U₁ + sin θ σz = c · exp(−i H_PT t)` for a positive
//! scalar `c`.
//!
//! The ancilla is appended as the last (least significant) qubit.

use crate::error::{Error, Result};
use crate::linalg::{embed_single, pauli_x, pauli_z, CMat, Complex, ONE};
use crate::pt::{PTParams, Regime};
use crate::state::QState;

const MIN_SUCCESS_PROBABILITY: f64 = 1e-12;

/// Circuit angles for one `(r, t)` point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilationAngles {
    pub theta: f64,
    pub phi: f64,
    /// `c` in `cos θ U₁(φ) + sin θ σz = c · u_pt(r, t)`.
    pub success_scale: f64,
}

/// Closed-form `(cos θ, sin θ, cos φ, sin φ, c)`.
///
/// Each regime is written so that no difference of nearly equal quantities
/// appears: `1 − r² cos(gt) = (1 − r²) + 2r² sin²(gt/2)` and the broken forms
/// are divided through by `cosh²(κt)`.
pub fn closed_form(r: f64, t: f64) -> Result<[f64; 5]> {
    let p = PTParams::new(r)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "evolution time t = {t} must be finite and non-negative"
        )));
    }
    let r2 = r * r;
    let out = match p.regime() {
        Regime::Unbroken => {
            let w = p.omega();
            let one_minus_r2 = (1.0 - r) * (1.0 + r);
            let (s, c) = (w * t).sin_cos();
            // 1 − r² cos(gt) and 1 − r² cos²(gt/2)
            let den_theta = one_minus_r2 + 2.0 * r2 * s * s;
            let den_phi = one_minus_r2 + r2 * s * s;
            if den_theta <= 0.0 || den_phi <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "degenerate dilation angles at r = {r}, t = {t}"
                )));
            }
            let dt = den_theta.sqrt();
            let dp = den_phi.sqrt();
            [dp / dt, r * s / dt, w * c / dp, -s / dp, w / dt]
        }
        Regime::Exceptional => {
            let dt = (1.0 + 2.0 * t * t).sqrt();
            let dp = (1.0 + t * t).sqrt();
            [dp / dt, t / dt, 1.0 / dp, -t / dp, 1.0 / dt]
        }
        Regime::Broken => {
            let k = p.kappa();
            let th = (k * t).tanh();
            let r2m1 = (r - 1.0) * (r + 1.0);
            // (r² cosh(2κt) − 1)/cosh² and (r² cosh² − 1)/cosh²
            let den_theta = r2m1 + (r2 + 1.0) * th * th;
            let den_phi = r2m1 + th * th;
            let dt = den_theta.sqrt();
            let dp = den_phi.sqrt();
            let sech = 1.0 / (k * t).cosh();
            [dp / dt, r * th / dt, k / dp, -th / dp, k * sech / dt]
        }
    };
    Ok(out)
}

pub fn dilation_angles(r: f64, t: f64) -> Result<DilationAngles> {
    let [ct, st, cp, sp, scale] = closed_form(r, t)?;
    Ok(DilationAngles {
        theta: st.atan2(ct),
        phi: sp.atan2(cp),
        success_scale: scale,
    })
}

/// Ancilla preparation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
pub fn gate_v(theta: f64) -> CMat {
    let (s, c) = theta.sin_cos();
    CMat::from_rows(&[
        &[Complex::new(c, 0.0), Complex::new(-s, 0.0)],
        &[Complex::new(s, 0.0), Complex::new(c, 0.0)],
    ])
}

/// `[[cos φ, i sin φ], [i sin φ, cos φ]]`.
pub fn gate_u1(phi: f64) -> CMat {
    let (s, c) = phi.sin_cos();
    CMat::from_rows(&[
        &[Complex::new(c, 0.0), Complex::new(0.0, s)],
        &[Complex::new(0.0, s), Complex::new(c, 0.0)],
    ])
}

pub fn gate_u2() -> CMat {
    pauli_z()
}

pub fn gate_hadamard() -> CMat {
    (&pauli_x() + &pauli_z()).scale_re(std::f64::consts::FRAC_1_SQRT_2)
}

#[derive(Clone, Debug)]
pub struct CircuitOutcome {
    /// Work-register state after postselecting the ancilla on `|0⟩`.
    pub postselected_state: QState,
    pub success_probability: f64,
    pub angles: DilationAngles,
}

fn projector(bit: usize) -> CMat {
    let mut p = CMat::zeros(2, 2);
    p[(bit, bit)] = ONE;
    p
}

/// The full `(n + 1)`-qubit circuit unitary, ancilla last.
pub fn circuit_unitary(
    n_work: usize,
    target_qubit: usize,
    angles: &DilationAngles,
) -> Result<CMat> {
    let n = n_work + 1;
    let anc = n_work;
    let work_id = CMat::identity(1 << n_work);

    let v = embed_single(&gate_v(angles.theta), anc, n)?;
    let u1 = embed_single(&gate_u1(angles.phi), target_qubit, n_work)?;
    let u2 = embed_single(&gate_u2(), target_qubit, n_work)?;
    let c_u1 = &u1.kron(&projector(0)) + &work_id.kron(&projector(1));
    let c_u2 = &work_id.kron(&projector(0)) + &u2.kron(&projector(1));
    let h = embed_single(&gate_hadamard(), anc, n)?;

    Ok(&(&(&h * &c_u2) * &c_u1) * &v)
}

/// Simulates the dilation circuit on `work ⊗ |0⟩⟨0|` and postselects the
/// ancilla on `|0⟩`.
pub fn run_dilation(work: &QState, target_qubit: usize, r: f64, t: f64) -> Result<CircuitOutcome> {
    let n_work = work.n_qubits();
    if target_qubit >= n_work {
        return Err(Error::QubitOutOfRange {
            index: target_qubit,
            n_qubits: n_work,
        });
    }
    let angles = dilation_angles(r, t)?;
    let u = circuit_unitary(n_work, target_qubit, &angles)?;

    let full = work.rho().kron(&projector(0));
    let evolved = full.conjugate_by(&u)?;

    // ⟨0|_anc ρ |0⟩_anc, ancilla being the least significant bit.
    let dim = work.dim();
    let mut kept = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            kept[(i, j)] = evolved[(2 * i, 2 * j)];
        }
    }
    let p0 = kept.trace().re;
    if !(p0 >= MIN_SUCCESS_PROBABILITY) {
        return Err(Error::PostselectionFailed(p0));
    }
    let state = QState::new(n_work, kept.hermitian_part().scale_re(1.0 / p0))?;
    Ok(CircuitOutcome {
        postselected_state: state,
        success_probability: p0.min(1.0),
        angles,
    })
}

/// `cos θ U₁(φ) + sin θ σz`, the operator the postselected branch applies
/// (up to the Hadamard's `1/√2`).
pub fn effective_operator(angles: &DilationAngles) -> CMat {
    let (st, ct) = angles.theta.sin_cos();
    &gate_u1(angles.phi).scale_re(ct) + &gate_u2().scale_re(st)
}
