mod common;

use proptest::prelude::*;
use ptcoh::linalg::{CMat, I};
use ptcoh::pt::{evolve_local, h_pt, u_pt, PTParams};
use ptcoh::state::{make_state, StateFamily};

const ORACLE_R: [f64; 8] = [0.0, 0.6, 0.8, 0.99, 1.0, 1.01, 1.4, 2.0];

fn oracle(r: f64, t: f64) -> CMat {
    common::expm(&h_pt(r).scale(-I * t))
}

#[test]
fn closed_form_matches_series_exponential() {
    for r in ORACLE_R {
        for t in [0.0, 0.1, 1.0, 4.0] {
            let err = common::relative_frobenius(&u_pt(r, t).unwrap(), &oracle(r, t));
            assert!(err <= 1e-10, "r={r} t={t}: {err:e}");
        }
    }
}

#[test]
fn continuous_across_the_exceptional_point() {
    let delta = 1e-6;
    for t in [0.5, 1.0] {
        let at = u_pt(1.0, t).unwrap();
        for r in [1.0 - delta, 1.0 + delta] {
            let gap = (&u_pt(r, t).unwrap() - &at).frobenius_norm();
            assert!(gap <= 1e-5, "r={r} t={t}: {gap:e}");
        }
    }
}

#[test]
fn continuity_gap_at_later_times_is_first_order_in_delta() {
    // ‖∂U/∂r‖ at r=1 grows like t³/3, so at t=4 a 1e-6 step moves U by
    // about 5e-5. Check the difference scales linearly with δ instead.
    let t = 4.0;
    let at = u_pt(1.0, t).unwrap();
    let gap = |d: f64| (&u_pt(1.0 - d, t).unwrap() - &at).frobenius_norm();
    let (g1, g2) = (gap(1e-6), gap(1e-7));
    assert!(g1 > 1e-5, "{g1:e}");
    assert!((g1 / g2 - 10.0).abs() < 0.1, "{g1:e} / {g2:e}");
    let slope = {
        let h = 1e-4;
        (&oracle(1.0 - h, t) - &oracle(1.0 + h, t)).frobenius_norm() / (2.0 * h)
    };
    assert!(
        (g1 / 1e-6 - slope).abs() <= 1e-3 * slope,
        "{} vs {slope}",
        g1 / 1e-6
    );
}

#[test]
fn unbroken_propagator_returns_to_minus_identity() {
    for r in [0.0, 0.3, 0.6, 0.8, 0.99] {
        let p = PTParams::new(r).unwrap();
        let u = u_pt(r, p.period().unwrap()).unwrap();
        assert!(
            u.max_abs_diff(&CMat::identity(2).scale_re(-1.0)) <= 1e-10,
            "r={r}"
        );
    }
}

#[test]
fn evolution_is_periodic_in_the_unbroken_phase() {
    let bell = make_state(StateFamily::bell());
    for r in [0.3, 0.6, 0.8] {
        let period = 2.0 * std::f64::consts::PI / PTParams::new(r).unwrap().gap();
        for t in [0.1, 0.9, 2.3] {
            let a = evolve_local(&bell, 0, r, t).unwrap();
            let b = evolve_local(&bell, 0, r, t + period).unwrap();
            assert!(a.rho().max_abs_diff(b.rho()) <= 1e-10);
        }
    }
}

#[test]
fn evolution_matches_oracle_propagator() {
    let ghz = make_state(StateFamily::ghz());
    for r in ORACLE_R {
        for target in 0..3 {
            let t = 1.7;
            let u = ptcoh::linalg::embed_single(&oracle(r, t), target, 3).unwrap();
            let w = ghz.rho().conjugate_by(&u).unwrap();
            let expected = w.scale_re(1.0 / w.trace().re);
            let got = evolve_local(&ghz, target, r, t).unwrap();
            assert!(
                got.rho().max_abs_diff(&expected) <= 1e-10,
                "r={r} target={target}"
            );
        }
    }
}

proptest! {
    #[test]
    fn determinant_is_one(r in 0.0f64..3.0, t in 0.0f64..10.0) {
        let u = u_pt(r, t).unwrap();
        let det = u.det().unwrap();
        let scale = u.frobenius_norm().powi(2).max(1.0);
        prop_assert!((det - ptcoh::linalg::ONE).norm() <= 1e-10 * scale, "det {det}");
    }

    #[test]
    fn pure_input_stays_pure(r in 0.0f64..3.0, t in 0.0f64..25.0, target in 0usize..2) {
        let s = evolve_local(&make_state(StateFamily::bell()), target, r, t).unwrap();
        prop_assert!((s.purity() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn hamiltonian_squares_to_scalar(r in 0.0f64..3.0) {
        let h = h_pt(r);
        let want = CMat::identity(2).scale_re(1.0 - r * r);
        prop_assert!((&h * &h).max_abs_diff(&want) <= 1e-12 * (1.0 + r * r));
    }
}
