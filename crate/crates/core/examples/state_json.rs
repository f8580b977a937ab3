// Building a custom state, measuring its coherence split, and saving it in
// the JSON layout the `ptcoh state` command reads.
//
// `cargo run --example state_json`

use ptcoh::coherence::coherence_triple;
use ptcoh::linalg::Complex;
use ptcoh::pt::evolve_local;
use ptcoh::state::QState;

pub fn run_example() -> ptcoh::Result<()> {
    // (|00⟩ + |01⟩ + i|11⟩)/√3
    let psi = [
        Complex::new(1.0, 0.0),
        Complex::new(1.0, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(0.0, 1.0),
    ];
    let s = QState::from_pure(&psi)?;
    let c = coherence_triple(&s)?;
    println!(
        "initial: C_T {:.6} = C_G {:.6} + C_L {:.6}",
        c.c_total, c.c_global, c.c_local
    );

    let later = evolve_local(&s, 1, 1.2, 3.0)?;
    let json = later.to_json()?;
    let back = QState::from_json(&json)?;
    assert_eq!(back.rho().as_slice(), later.rho().as_slice());
    let c = coherence_triple(&back)?;
    println!(
        "after r = 1.2, t = 3 on qubit 2: C_T {:.6}, C_G {:.6}, C_L {:.6}",
        c.c_total, c.c_global, c.c_local
    );
    println!("{json}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> ptcoh::Result<()> {
    run_example()
}
