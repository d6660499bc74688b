//! The invariant line and a family of invariant circles of the golden map.

use mobius_lab::geometry::{invariant_circle, invariant_line, separation_l};
use mobius_lab::presets;

fn main() -> mobius_lab::Result<()> {
    let m = presets::golden();
    let line = invariant_line(&m)?;
    println!("α = {:.6}, β = {:.6}", line.alpha(), line.beta());
    println!("line through {:.6} along {:.6}", line.point(), line.direction());
    println!("L = {:.9}", separation_l(&m)?);
    println!("pole {} and f(∞) = {} both lie on it", m.pole(), m.image_of_infinity());

    for r in [0.1, 0.5, 2.0, 10.0] {
        let c = invariant_circle(&m, r)?;
        let mirror = invariant_circle(&m, 1.0 / r)?;
        let z = c.sample(0.3);
        let drift = c.relative_offset(m.apply_finite(z).expect("finite"));
        let reflected = mirror.relative_offset(line.reflect(z));
        println!(
            "r = {r:>4}: center {:.4}, radius {:.4}, |f(z)| off circle {drift:.1e}, mirror off {reflected:.1e}",
            c.center(),
            c.radius()
        );
    }
    Ok(())
}
