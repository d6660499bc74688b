//! p, q and r are periodic: their powers come back to the identity on
//! every point of the sphere, including the pole and infinity.

use mobius_lab::hyers_ulam::finite_order_presets;
use mobius_lab::{sampling, sphere::chordal_distance, SpherePoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points: Vec<SpherePoint> = (0..1000).map(|_| sampling::random_sphere_point(&mut rng)).collect();

    for preset in finite_order_presets() {
        let power = preset.map.power(preset.order);
        let worst = points
            .iter()
            .map(|&z| chordal_distance(z, power.apply(z)))
            .fold(0.0, f64::max);
        println!(
            "{}: order {}, trace {:+.12}, max chordal |f^{}(z) - z| = {worst:.2e}",
            preset.name, preset.order, preset.map.trace().re, preset.order
        );

        // the orbit of the pole runs through infinity and back
        let mut z = preset.map.pole();
        print!("   pole orbit:");
        for _ in 0..=preset.order {
            print!(" {z}");
            z = preset.map.apply(z);
        }
        println!();
    }
}
