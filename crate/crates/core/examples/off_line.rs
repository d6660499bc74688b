//! True solutions on an invariant circle against a pseudo-orbit on the
//! invariant line: the gap reaches L = |α - β|/2 again and again.
//!
//! In the circle coordinate h both orbits turn by the same angle each step,
//! so the start phase matters. From a₀ = 0 (h = -1) a start at h = r stays
//! opposite and never comes within L; a start at h = -r is in phase.

use mobius_lab::geometry::{circle_conjugator, separation_l};
use mobius_lab::hyers_ulam::{build_periodic_pseudo_orbit, off_line_experiment};
use mobius_lab::{presets, Complex};

fn main() -> mobius_lab::Result<()> {
    let m = presets::golden();
    let l = separation_l(&m)?;
    let h = circle_conjugator(&m)?;
    let po = build_periodic_pseudo_orbit(&m, 0.0.into(), 1e-3, 10_000_000)?;
    println!("L = {l:.6}, h(a₀) = {}", h.apply_finite(Complex::new(0.0, 0.0)));

    for r in [0.1, 0.5, 0.9] {
        for (label, phase) in [("opposite", 1.0), ("in phase", -1.0)] {
            let b0 = h.invert_finite(Complex::new(phase * r, 0.0)).into();
            let report = off_line_experiment(&m, r, &po, b0, 100_000, &[l])?;
            println!(
                "r = {r}, {label:>8}: {:>6} of 100001 indices with s_n >= L ({:.1}%)",
                report.count_at_least_l.unwrap_or(0),
                100.0 * report.fraction_at_least_l.unwrap_or(0.0),
            );
        }
    }
    Ok(())
}
