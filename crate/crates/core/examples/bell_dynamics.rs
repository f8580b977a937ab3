// Bell-state coherence in the unbroken, exceptional and broken regimes.
//
// `cargo run --example bell_dynamics`

use ptcoh::pt::PTParams;
use ptcoh::state::StateFamily;
use ptcoh::sweep::{is_frozen, run_time_sweep, SweepSpec};

pub fn run_example() -> ptcoh::Result<()> {
    for r in [0.6, 1.0, 1.4] {
        let spec = SweepSpec::new(StateFamily::bell(), r);
        let series = run_time_sweep(&spec)?;
        let params = PTParams::new(r)?;
        println!("r = {r} ({:?}), t ∈ [0, {}]", params.regime(), spec.t_max);
        if let Some(p) = params.period() {
            println!("  coherence period 2π/g = {:.6}", p / 2.0);
        }
        for k in (0..series.len()).step_by(series.len() / 5) {
            let c = series.triples[k];
            println!(
                "  t = {:5.2}  C_T = {:.6}  C_G = {:.6}  C_L = {:.6}",
                series.times[k], c.c_total, c.c_global, c.c_local
            );
        }
        println!(
            "  frozen over the last 20%: C_T {}, C_G {}",
            is_frozen(&series.times, &series.c_total()),
            is_frozen(&series.times, &series.c_global())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ptcoh::Result<()> {
    run_example()
}
