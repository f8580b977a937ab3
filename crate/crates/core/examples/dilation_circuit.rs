// Realizing the non-unitary propagator with one ancilla and postselection,
// and checking the result against direct evolution.
//
// `cargo run --example dilation_circuit`

use ptcoh::dilation::{dilation_angles, run_dilation};
use ptcoh::linalg::trace_distance;
use ptcoh::pt::evolve_local;
use ptcoh::state::{make_state, StateFamily};

pub fn run_example() -> ptcoh::Result<()> {
    let bell = make_state(StateFamily::bell());
    println!("    r      t    θ         φ         c        p_success  distance");
    for r in [0.6, 1.0, 1.4] {
        for t in [0.5, 2.0, 8.0] {
            let a = dilation_angles(r, t)?;
            let out = run_dilation(&bell, 0, r, t)?;
            let direct = evolve_local(&bell, 0, r, t)?;
            let d = trace_distance(out.postselected_state.rho(), direct.rho())?;
            println!(
                "  {r:4.1}  {t:5.1}  {:+.5}  {:+.5}  {:.5}  {:.3e}  {d:.1e}",
                a.theta, a.phi, a.success_scale, out.success_probability
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ptcoh::Result<()> {
    run_example()
}
