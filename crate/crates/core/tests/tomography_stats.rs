mod common;

use ptcoh::state::{fidelity, make_state, pseudopure, StateFamily};
use ptcoh::tomography::{
    add_noise, all_pauli_labels, gaussian_noise, measure_paulis, reconstruct, MeasurementRecord,
};
use rand::Rng;

fn full_record(s: &ptcoh::state::QState) -> MeasurementRecord {
    let labels = all_pauli_labels(s.n_qubits(), false);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    measure_paulis(s, &refs).unwrap()
}

#[test]
fn noise_has_requested_spread_and_is_reproducible() {
    let sigma = 0.01;
    let xs = gaussian_noise(sigma, 42, 10_000).unwrap();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    assert!(
        (var.sqrt() / sigma - 1.0).abs() <= 0.05,
        "std {}",
        var.sqrt()
    );
    assert!(mean.abs() <= 5.0 * sigma / 100.0);
    assert_eq!(xs, gaussian_noise(sigma, 42, 10_000).unwrap());
    assert_ne!(xs, gaussian_noise(sigma, 43, 10_000).unwrap());
}

#[test]
fn noiseless_reconstruction_is_exact() {
    let mut rng = common::rng(31);
    for k in 0..60 {
        let n = 1 + k % 3;
        let truth = common::random_mixed(&mut rng, n, 1 + k % (1 << n));
        let result = reconstruct(&full_record(&truth)).unwrap();
        assert!(result.residual <= 1e-10, "{}", result.residual);
        assert!(result.state.rho().max_abs_diff(truth.rho()) <= 1e-10);
    }
}

#[test]
fn pseudopure_states_reconstruct() {
    for eps in [0.0, 0.1, 0.5, 1.0] {
        let truth = pseudopure(eps, 3).unwrap();
        let result = reconstruct(&full_record(&truth)).unwrap();
        assert!(fidelity(&result.state, &truth).unwrap() >= 1.0 - 1e-9);
    }
}

#[test]
fn residual_grows_with_noise() {
    let truth = make_state(StateFamily::ghz());
    let clean = full_record(&truth);
    let mean_residual = |sigma: f64| {
        (0..20u64)
            .map(|seed| {
                reconstruct(&add_noise(&clean, sigma, seed).unwrap())
                    .unwrap()
                    .residual
            })
            .sum::<f64>()
            / 20.0
    };
    let levels = [0.001, 0.01, 0.05, 0.2];
    let residuals: Vec<f64> = levels.iter().map(|&s| mean_residual(s)).collect();
    assert!(residuals.windows(2).all(|w| w[0] < w[1]), "{residuals:?}");
}

#[test]
fn reconstruction_is_deterministic_and_always_physical() {
    let mut rng = common::rng(32);
    let truth = make_state(StateFamily::bell());
    let clean = full_record(&truth);
    for seed in 0..50 {
        let noisy = add_noise(&clean, 0.3, seed).unwrap();
        let a = reconstruct(&noisy).unwrap();
        let b = reconstruct(&noisy).unwrap();
        assert_eq!(a.state.rho().as_slice(), b.state.rho().as_slice());
        ptcoh::state::QState::new(2, a.state.rho().clone()).unwrap();
    }
    // Wildly inconsistent data still lands on a valid state.
    let values: Vec<f64> = (0..15).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let rec = MeasurementRecord::new(all_pauli_labels(2, false), values).unwrap();
    let out = reconstruct(&rec).unwrap();
    assert!((out.state.rho().trace().re - 1.0).abs() <= 1e-12);
}

#[test]
fn median_fidelity_under_readout_noise() {
    for fam in [StateFamily::bell(), StateFamily::ghz()] {
        let truth = make_state(fam);
        let clean = full_record(&truth);
        let mut fs: Vec<f64> = (0..100u64)
            .map(|seed| {
                fidelity(
                    &reconstruct(&add_noise(&clean, 0.01, seed).unwrap())
                        .unwrap()
                        .state,
                    &truth,
                )
                .unwrap()
            })
            .collect();
        fs.sort_by(f64::total_cmp);
        assert!(fs[50] >= 0.98, "{}", fs[50]);
    }
}

#[test]
fn record_json_round_trip() {
    let rec = add_noise(&full_record(&make_state(StateFamily::ghz())), 0.02, 9).unwrap();
    let back = MeasurementRecord::from_json(&rec.to_json().unwrap()).unwrap();
    assert_eq!(back, rec);
}
