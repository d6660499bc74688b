//! Named maps used by the examples, the CLI and the tests.
//!
//! `p`, `q` and `r` are the finite-order elliptic maps of orders 2, 6 and 3.
//! `golden` and `trace-half` are real elliptic maps whose rotation is an
//! irrational number of turns, so their real orbits are dense in ℝ.

use std::f64::consts::PI;

use crate::mobius::{NormalizedMobius, RawMobius};
use crate::{Error, Result};

pub const NAMES: [&str; 5] = ["p", "q", "r", "golden", "trace-half"];

fn unimodular(a: f64, b: f64, c: f64, d: f64) -> NormalizedMobius {
    let raw = RawMobius::real(a, b, c, d);
    NormalizedMobius::from_unimodular(raw.a, raw.b, raw.c, raw.d)
        .expect("preset coefficients have determinant 1")
}

/// `p(z) = (√3 z − 2)/(2z − √3)`, an involution.
pub fn p() -> NormalizedMobius {
    let s3 = 3f64.sqrt();
    unimodular(s3, -2.0, 2.0, -s3)
}

/// `q(z) = −1/(z − √3)`, order 6 with `q³ = p`.
pub fn q() -> NormalizedMobius {
    unimodular(0.0, -1.0, 1.0, -3f64.sqrt())
}

/// `r(z) = (−z − 1)/z`, order 3.
pub fn r() -> NormalizedMobius {
    unimodular(-1.0, -1.0, 1.0, 0.0)
}

/// `ψ = π(√5 − 1)/2`; the map `a = d = cos ψ`, `b = −sin²ψ`, `c = 1` has
/// multiplier `e^{−2iψ}`, a rotation by the golden angle `2π(1 − φ⁻¹)`.
pub fn golden() -> NormalizedMobius {
    let psi = PI * (5f64.sqrt() - 1.0) / 2.0;
    let (s, c) = psi.sin_cos();
    unimodular(c, -s * s, 1.0, c)
}

/// Trace 1/2: `a = d = 1/4`, `b = −15/16`, `c = 1`. By Niven's theorem 1/4
/// is not the cosine of a rational multiple of π, so the rotation is
/// irrational.
pub fn trace_half() -> NormalizedMobius {
    unimodular(0.25, -15.0 / 16.0, 1.0, 0.25)
}

pub fn by_name(name: &str) -> Result<NormalizedMobius> {
    match name {
        "p" => Ok(p()),
        "q" => Ok(q()),
        "r" => Ok(r()),
        "golden" => Ok(golden()),
        "trace-half" => Ok(trace_half()),
        other => Err(Error::InvalidInput(format!(
            "unknown preset {other:?} (known: {})",
            NAMES.join(", ")
        ))),
    }
}
