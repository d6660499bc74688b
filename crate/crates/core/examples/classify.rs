//! Classify the bundled maps and a couple of literals.
//!
//!     cargo run --example classify

use mobius_lab::{presets, MapClass, RawMobius};

fn main() -> mobius_lab::Result<()> {
    for name in presets::NAMES {
        let m = presets::by_name(name)?;
        let fp = m.fixed_points()?;
        print!("{name:>10}  trace {:+.6}  {}  α = {:.6}", m.trace().re, m.classify(), fp.alpha);
        if m.classify() == MapClass::Elliptic {
            let nf = m.normal_form()?;
            print!("  θ = {:.6}  {:?}", nf.angle, nf.verdict);
        }
        println!();
    }

    // not normalised on input; normalize divides by sqrt(ad - bc)
    let hyperbolic = RawMobius::real(3.0, -1.0, 1.0, 0.0).normalize()?;
    let parabolic = RawMobius::real(2.0, 0.0, 2.0, 2.0).normalize()?;
    println!("\n(3z - 1)/z   -> {}", hyperbolic.classify());
    println!("2z/(2z + 2)  -> {}", parabolic.classify());

    let affine = RawMobius::real(2.0, 1.0, 0.0, 0.5).normalize()?;
    println!("2z + 1 over 0.5 -> {:?}", affine.fixed_points().unwrap_err().to_string());
    Ok(())
}
