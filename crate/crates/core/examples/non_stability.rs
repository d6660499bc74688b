//! A bounded ε-pseudo-orbit on the invariant line that no true solution
//! stays close to.
//!
//!     cargo run --release --example non_stability -- [eps] [trace.csv]

use mobius_lab::hyers_ulam::{build_periodic_pseudo_orbit, separation_experiment};
use mobius_lab::presets;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let eps: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1e-3);
    let m = presets::golden();

    let po = build_periodic_pseudo_orbit(&m, 0.0.into(), eps, 10_000_000)?;
    let values = po.value_set().expect("loop");
    let bound = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("loop of {} points, |a_n| <= {bound:.3}, defect {eps:e}/2", values.len());

    let thresholds = [1.0, 10.0, 100.0, 1e3, 1e4];
    let report = separation_experiment(&m, &po, 0.0.into(), 1_000_000, &thresholds)?;
    for c in &report.crossings {
        println!("s_n > {:>7}: first at {:?}", c.threshold, c.first_index);
    }
    println!("max separation {:.3e} at n = {}", report.max_separation, report.max_separation_index);

    if let Some(path) = args.next() {
        report.write_trace_csv(std::fs::File::create(&path)?)?;
        println!("trace written to {path}");
    }
    Ok(())
}
