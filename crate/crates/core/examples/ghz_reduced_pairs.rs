// GHZ-state coherence and its two-qubit marginals under a PT operation on
// qubit 1. The pair (2, 3) never gains local coherence.
//
// `cargo run --example ghz_reduced_pairs`

use ptcoh::state::StateFamily;
use ptcoh::sweep::{run_time_sweep, SweepSpec};

pub fn run_example() -> ptcoh::Result<()> {
    for r in [0.6, 1.4] {
        let full = run_time_sweep(&SweepSpec::new(StateFamily::ghz(), r))?;
        let last = full.triples.last().copied().unwrap();
        println!(
            "r = {r}: full state at t = {:.1}: C_T {:.6}, C_G {:.6}, C_L {:.6}",
            full.times.last().unwrap(),
            last.c_total,
            last.c_global,
            last.c_local
        );
        for (name, pair) in [("12", [0, 1]), ("13", [0, 2]), ("23", [1, 2])] {
            let mut spec = SweepSpec::new(StateFamily::ghz(), r);
            spec.reduced_pair = Some(pair);
            let series = run_time_sweep(&spec)?;
            let max = |v: Vec<f64>| v.into_iter().fold(0.0, f64::max);
            println!(
                "  ρ{name}: max C_L {:.6}, max C_G {:.6}",
                max(series.c_local()),
                max(series.c_global())
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ptcoh::Result<()> {
    run_example()
}
