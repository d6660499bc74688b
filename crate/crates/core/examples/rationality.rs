//! Deciding whether a rotation angle is a rational multiple of 2π.

use std::f64::consts::PI;

use mobius_lab::mobius::detect_rational_rotation;

fn main() {
    let golden = PI * (3.0 - 5f64.sqrt());
    let cases = [
        ("π", PI),
        ("π/3", PI / 3.0),
        ("2π/3", 2.0 * PI / 3.0),
        ("-π/2", -PI / 2.0),
        ("2π·3/7", 2.0 * PI * 3.0 / 7.0),
        ("golden", golden),
        ("1 rad", 1.0),
    ];
    for (label, theta) in cases {
        let strict = detect_rational_rotation(theta, 1e-12, 1_000_000);
        let loose = detect_rational_rotation(theta, 1e-4, 1_000);
        println!("{label:>8}: {strict:?}  (tol 1e-4, q ≤ 1000: {loose:?})");
    }
}
