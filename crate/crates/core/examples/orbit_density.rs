//! Orbits of an irrational rotation never close up but come back
//! arbitrarily close. First returns of the golden map land on Fibonacci
//! numbers.

use mobius_lab::orbit::{density_witness, detect_periodic_orbit, first_return, iterate_orbit};
use mobius_lab::{mobius::POLE_TOL, presets, SpherePoint};

fn main() -> mobius_lab::Result<()> {
    let golden = presets::golden();
    let a1 = golden.apply(SpherePoint::from(0.0));
    for k in 1..=5 {
        let radius = 10f64.powi(-k);
        let (n, dist) = first_return(&golden, a1, radius, 10_000_000)?;
        println!("first return within {radius:.0e}: n = {n:>7} (|fⁿ(a) - a| = {dist:.3e})");
    }
    println!("periodic? {:?}", detect_periodic_orbit(&golden, a1, 1e-12, 100_000));

    // trace-half sends the real line to itself; the orbit of 0 visits every
    // neighbourhood of 10
    let m = presets::trace_half();
    let n = density_witness(&m, 0.0.into(), 10.0.into(), 0.1, 1_000_000)?;
    let orbit = iterate_orbit(&m, 0.0.into(), n, POLE_TOL);
    println!("trace-half: |fⁿ(0) - 10| < 0.1 first at n = {n}, value {}", orbit.samples[n as usize]);
    Ok(())
}
