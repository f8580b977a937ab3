mod common;

use ptcoh::linalg::{herm_eig, CMat};
use ptcoh::state::{fidelity, make_state, pseudopure, purity, FamilyKind, QState, StateFamily};
use rand::Rng;

fn random_unitary(rng: &mut rand_chacha::ChaCha8Rng, d: usize) -> CMat {
    let g = CMat::from_vec(
        d,
        d,
        (0..d * d).map(|_| common::gaussian_complex(rng)).collect(),
    )
    .unwrap();
    herm_eig(&(&g + &g.dagger())).unwrap().vectors
}

#[test]
fn family_states_are_pure_and_physical() {
    let mut rng = common::rng(11);
    for _ in 0..200 {
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        for kind in [FamilyKind::BellAlpha, FamilyKind::GhzBeta] {
            let s = make_state(StateFamily::new(kind, angle).unwrap());
            assert!((purity(&s) - 1.0).abs() <= 1e-12);
            QState::new(s.n_qubits(), s.rho().clone()).unwrap();
        }
    }
}

#[test]
fn purity_bounds() {
    let mut rng = common::rng(12);
    for k in 0..300 {
        let n = 1 + k % 3;
        let s = common::random_mixed(&mut rng, n, 1 + k % (1 << n));
        let p = purity(&s);
        assert!(p >= 1.0 / (1 << n) as f64 - 1e-12 && p <= 1.0 + 1e-9, "{p}");
    }
    for n in 1..=3 {
        let mixed = pseudopure(0.0, n).unwrap();
        assert!((purity(&mixed) - 1.0 / (1 << n) as f64).abs() <= 1e-15);
    }
}

#[test]
fn fidelity_is_symmetric_and_unitarily_invariant() {
    let mut rng = common::rng(13);
    for k in 0..200 {
        let n = 1 + k % 3;
        let a = common::random_mixed(&mut rng, n, 1 + k % 3);
        let b = common::random_mixed(&mut rng, n, 1 + (k / 3) % 3);
        let fab = fidelity(&a, &b).unwrap();
        let fba = fidelity(&b, &a).unwrap();
        assert!((fab - fba).abs() <= 1e-8, "{fab} vs {fba}");
        assert!((0.0..=1.0).contains(&fab));

        let u = random_unitary(&mut rng, 1 << n);
        let ua = QState::new(n, a.rho().conjugate_by(&u).unwrap().hermitian_part()).unwrap();
        let ub = QState::new(n, b.rho().conjugate_by(&u).unwrap().hermitian_part()).unwrap();
        assert!((fidelity(&ua, &ub).unwrap() - fab).abs() <= 1e-8);
    }
}

#[test]
fn pure_state_fidelity_is_squared_overlap() {
    let mut rng = common::rng(14);
    for _ in 0..100 {
        let a = common::random_pure(&mut rng, 2);
        let b = common::random_pure(&mut rng, 2);
        // tr(ρσ) equals |⟨ψ|φ⟩|² for pure states.
        let overlap = (a.rho() * b.rho()).trace().re;
        assert!((fidelity(&a, &b).unwrap() - overlap).abs() <= 1e-8);
    }
}

#[test]
fn json_round_trip_is_exact() {
    let mut rng = common::rng(15);
    for k in 0..50 {
        let s = common::random_mixed(&mut rng, 1 + k % 3, 2);
        let back = QState::from_json(&s.to_json().unwrap()).unwrap();
        assert_eq!(back.rho().as_slice(), s.rho().as_slice());
    }
}

#[test]
fn unphysical_matrices_are_rejected() {
    let mut m = make_state(StateFamily::bell()).into_rho();
    m[(0, 0)].re += 0.1;
    assert!(QState::new(2, m.clone()).is_err());
    m[(0, 0)].re -= 0.1;
    m[(0, 3)].im += 0.1;
    assert!(QState::new(2, m).is_err());
    let negative = CMat::from_real_diag(&[1.2, -0.2]);
    assert!(QState::new(1, negative).is_err());
}
