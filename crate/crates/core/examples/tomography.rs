// Pauli tomography of a pseudopure GHZ-type state with readout noise.
//
// `cargo run --example tomography`

use ptcoh::linalg::CMat;
use ptcoh::state::{fidelity, make_state, QState, StateFamily};
use ptcoh::tomography::{add_noise, all_pauli_labels, measure_paulis, reconstruct};

pub fn run_example() -> ptcoh::Result<()> {
    // (1 − ε) I/8 + ε |GHZ⟩⟨GHZ|
    let eps = 0.9;
    let ghz = make_state(StateFamily::ghz());
    let mixed = &CMat::identity(8).scale_re((1.0 - eps) / 8.0) + &ghz.rho().scale_re(eps);
    let truth = QState::new(3, mixed)?;

    let labels = all_pauli_labels(3, false);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let clean = measure_paulis(&truth, &refs)?;
    println!("{} Pauli expectation values", clean.values.len());

    for sigma in [0.0, 0.01, 0.05, 0.1] {
        let mut fids: Vec<f64> = (0..20)
            .map(|seed| {
                let rec = add_noise(&clean, sigma, seed)?;
                fidelity(&reconstruct(&rec)?.state, &truth)
            })
            .collect::<ptcoh::Result<_>>()?;
        fids.sort_by(f64::total_cmp);
        println!(
            "  σ = {sigma:.2}: median fidelity {:.5}, worst {:.5}",
            fids[10], fids[0]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ptcoh::Result<()> {
    run_example()
}
