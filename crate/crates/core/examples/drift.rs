//! Finite-order maps: every solution is periodic, yet the drift
//! d_n = d₀ + nε walks away from each of them linearly.

use mobius_lab::hyers_ulam::{drift_experiment, finite_order_presets};
use mobius_lab::Complex;

fn main() -> mobius_lab::Result<()> {
    let eps = 1e-2;
    let b0 = Complex::new(0.5, 1.5);
    for preset in finite_order_presets() {
        let report = drift_experiment(&preset.map, b0, eps, b0.into(), 5_000, &[1.0, 10.0])?;
        let tail = report.trace.last().expect("trace");
        println!(
            "{}: period {:?}, s_{} = {:.4} ((n-1)ε = {:.4}), crosses 1 at {:?}, 10 at {:?}",
            preset.name,
            report.true_orbit_period,
            tail.n,
            tail.sep,
            (tail.n as f64 - 1.0) * eps,
            report.crossing(1.0),
            report.crossing(10.0)
        );
    }
    Ok(())
}
