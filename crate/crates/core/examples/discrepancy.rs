//! Star discrepancy of kθ/2π mod 1 for the golden rotation against a
//! rational one.

use mobius_lab::orbit::star_discrepancy;
use mobius_lab::presets;

fn main() -> mobius_lab::Result<()> {
    let golden = presets::golden().rotation_angle()?;
    let sixth = presets::q().rotation_angle()?;
    println!("{:>8} {:>12} {:>12} {:>12}", "N", "golden", "5 ln N / N", "q (1/6)");
    for n in [10u64, 100, 1_000, 10_000, 100_000, 1_000_000] {
        let bound = 5.0 * (n as f64).ln() / n as f64;
        println!(
            "{n:>8} {:>12.3e} {bound:>12.3e} {:>12.3e}",
            star_discrepancy(golden, n),
            star_discrepancy(sixth, n)
        );
    }
    Ok(())
}
