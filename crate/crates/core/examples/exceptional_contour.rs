// Coherence over (state angle, time) at the exceptional point r = 1,
// printed as a coarse text map of local coherence.
//
// `cargo run --release --example exceptional_contour`

use ptcoh::state::FamilyKind;
use ptcoh::sweep::run_contour;

const SHADES: &[u8] = b" .:-=+*#%@";

fn shade(v: f64, max: f64) -> char {
    let k = ((v / max).clamp(0.0, 1.0) * (SHADES.len() - 1) as f64).round() as usize;
    SHADES[k] as char
}

pub fn run_example() -> ptcoh::Result<()> {
    for (kind, max) in [(FamilyKind::BellAlpha, 2.0), (FamilyKind::GhzBeta, 1.0)] {
        let grid = run_contour(kind, 1.0, 24, 25.0, 0.5)?;
        println!("{kind:?}: C_L, rows = angle 0..2π, columns = t 0..25");
        for (angle, row) in grid.angles.iter().zip(&grid.c_local) {
            let line: String = row.iter().map(|&v| shade(v, max)).collect();
            println!("  {angle:5.2} |{line}|");
        }
        let col0 = grid.c_global[0].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        println!("  max |C_G| at angle 0: {col0:.1e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ptcoh::Result<()> {
    run_example()
}
