//! Points of the Riemann sphere: the chordal metric and JSON form.

use mobius_lab::sphere::{arc_distance, chordal_distance};
use mobius_lab::{Complex, SpherePoint};

fn main() -> mobius_lab::Result<()> {
    let pts = [
        SpherePoint::from(0.0),
        SpherePoint::new(1.0, 0.0)?,
        SpherePoint::new(0.0, -1.0)?,
        SpherePoint::new(1e12, 0.0)?,
        SpherePoint::INFINITY,
    ];
    for p in pts {
        let row: Vec<String> = pts.iter().map(|&q| format!("{:.4}", chordal_distance(p, q))).collect();
        println!("{:>8}  {}", p.to_string(), row.join("  "));
    }
    println!("json: {}", serde_json::to_string(&pts).expect("serialize"));

    let quarter = arc_distance(Complex::new(1.0, 0.0), Complex::new(0.0, 1.0))?;
    println!("arc 1 -> i: {quarter:.6}");
    Ok(())
}
