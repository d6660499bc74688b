//! Random maps and points for property checks and sampled diagnostics.

use rand::Rng;

use crate::mobius::{NormalizedMobius, RawMobius};
use crate::sphere::SpherePoint;
use crate::Complex;

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex {
    Complex::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

/// Mostly finite points in a box of half-width 10, plus the occasional
/// point at infinity or point of large modulus.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    match rng.gen_range(0..20) {
        0 => SpherePoint::INFINITY,
        1 => random_complex(rng, 1e6).into(),
        _ => random_complex(rng, 10.0).into(),
    }
}

/// A normalised map with moderate coefficients and `c` bounded away from 0.
pub fn random_normalized<R: Rng + ?Sized>(rng: &mut R) -> NormalizedMobius {
    loop {
        let raw = RawMobius::new(
            random_complex(rng, 2.0),
            random_complex(rng, 2.0),
            random_complex(rng, 2.0),
            random_complex(rng, 2.0),
        );
        if raw.c.norm() < 0.1 || raw.determinant().norm() < 0.1 {
            continue;
        }
        if let Ok(m) = raw.normalize() {
            return m;
        }
    }
}

/// An elliptic map: real trace `t` drawn from `(−1.8, 1.8)`, random complex
/// `a` and `c`, then `d = t − a` and `b = (ad − 1)/c`.
pub fn random_elliptic<R: Rng + ?Sized>(rng: &mut R) -> NormalizedMobius {
    loop {
        let t = rng.gen_range(-1.8..1.8);
        let a = random_complex(rng, 2.0);
        let c = random_complex(rng, 2.0);
        if c.norm() < 0.2 {
            continue;
        }
        let d = Complex::new(t, 0.0) - a;
        let b = (a * d - 1.0) / c;
        if let Ok(m) = NormalizedMobius::from_unimodular(a, b, c, d) {
            return m;
        }
    }
}

/// A real elliptic map (`a, b, c, d` real) with trace in `(−1.8, 1.8)`.
pub fn random_real_elliptic<R: Rng + ?Sized>(rng: &mut R) -> NormalizedMobius {
    loop {
        let t: f64 = rng.gen_range(-1.8..1.8);
        let a: f64 = rng.gen_range(-2.0..2.0);
        let c: f64 = rng.gen_range(-2.0..2.0);
        if c.abs() < 0.2 {
            continue;
        }
        let d = t - a;
        let b = (a * d - 1.0) / c;
        let raw = RawMobius::real(a, b, c, d);
        if let Ok(m) = NormalizedMobius::from_unimodular(raw.a, raw.b, raw.c, raw.d) {
            return m;
        }
    }
}
