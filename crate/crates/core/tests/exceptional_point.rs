//! Behaviour at the exceptional point `r = 1`, where convergence is
//! algebraic rather than exponential.

use ptcoh::coherence::{c_global, c_local, coherence_triple};
use ptcoh::pt::evolve_local;
use ptcoh::state::{make_state, FamilyKind, StateFamily};

fn bell(alpha: f64) -> ptcoh::state::QState {
    make_state(StateFamily::new(FamilyKind::BellAlpha, alpha).unwrap())
}

fn ghz(beta: f64) -> ptcoh::state::QState {
    make_state(StateFamily::new(FamilyKind::GhzBeta, beta).unwrap())
}

#[test]
fn bell_alpha_zero_never_has_global_coherence() {
    let s = bell(0.0);
    for k in 0..=500 {
        let e = evolve_local(&s, 0, 1.0, k as f64 * 0.05).unwrap();
        assert!(c_global(&e).unwrap().abs() <= 1e-9);
    }
}

#[test]
fn ghz_local_coherence_approaches_one_algebraically() {
    // The propagator is I − itH, so the state approaches its limit with
    // O(1/t) corrections; 1 − C_L shrinks roughly like 1/t².
    for beta in [0.1, std::f64::consts::FRAC_PI_4, 1.0, 2.0] {
        let s = ghz(beta);
        let gap = |t: f64| 1.0 - c_local(&evolve_local(&s, 0, 1.0, t).unwrap()).unwrap();
        let (g25, g50, g100) = (gap(25.0), gap(50.0), gap(100.0));
        assert!(g25 > 0.0 && g50 > 0.0 && g100 > 0.0);
        assert!(
            g50 < g25 && g100 < g50,
            "β={beta}: {g25:e} {g50:e} {g100:e}"
        );
        let ratio = g50 / g100;
        assert!((3.0..5.0).contains(&ratio), "β={beta}: ratio {ratio}");
        assert!(g25 > 1e-3 && g25 < 1.3e-3, "β={beta}: {g25:e}");
        assert!(gap(400.0) < 1e-4);
    }
}

#[test]
fn bell_local_coherence_at_late_times_depends_on_alpha() {
    let values: Vec<(f64, f64)> = [0.1, 0.5, std::f64::consts::FRAC_PI_4, 1.0, 2.0]
        .iter()
        .map(|&a| {
            (
                a,
                coherence_triple(&evolve_local(&bell(a), 0, 1.0, 25.0).unwrap())
                    .unwrap()
                    .c_local,
            )
        })
        .collect();
    let lo = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let hi = values.iter().map(|v| v.1).fold(0.0, f64::max);
    for (a, v) in &values {
        println!("α = {a:.4}: C_L(t=25) = {v:.6}");
    }
    assert!(hi - lo > 0.5, "spread {}", hi - lo);
}
