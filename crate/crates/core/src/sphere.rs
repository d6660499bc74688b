//! Points of the Riemann sphere and the two metrics the crate needs: the
//! chordal metric on the sphere and arc length on the unit circle.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Complex, Error, Result};

/// Default tolerance for comparing two sphere points (chordal distance).
pub const POINT_EQ_TOL: f64 = 1e-9;

/// How far `|u|` may stray from 1 before `arc_distance` rejects `u`.
pub const UNIT_CIRCLE_TOL: f64 = 1e-9;

/// A point of the extended complex plane.
///
/// Finite points always carry finite components; the point at infinity is a
/// separate state and never a large magnitude.
#[derive(Clone, Copy, PartialEq)]
pub struct SpherePoint(Repr);

#[derive(Clone, Copy, PartialEq)]
enum Repr {
    Finite(Complex),
    Infinity,
}

impl SpherePoint {
    pub const INFINITY: SpherePoint = SpherePoint(Repr::Infinity);

    /// A finite point. Rejects NaN and infinite components.
    pub fn finite(z: Complex) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(SpherePoint(Repr::Finite(z)))
        } else {
            Err(Error::InvalidInput(format!(
                "non-finite complex value {}{:+}i",
                z.re, z.im
            )))
        }
    }

    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::finite(Complex::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.0, Repr::Infinity)
    }

    pub fn finite_value(&self) -> Option<Complex> {
        match self.0 {
            Repr::Finite(z) => Some(z),
            Repr::Infinity => None,
        }
    }

    /// `|z|`, or `+inf` for the point at infinity.
    pub fn modulus(&self) -> f64 {
        match self.0 {
            Repr::Finite(z) => z.norm(),
            Repr::Infinity => f64::INFINITY,
        }
    }

    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        chordal_distance(*self, *other)
    }

    pub fn approx_eq(&self, other: &SpherePoint, tol: f64) -> bool {
        chordal_distance(*self, *other) <= tol
    }
}

/// Values that overflowed (or became NaN through overflow) are the point at
/// infinity.
impl From<Complex> for SpherePoint {
    fn from(z: Complex) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint(Repr::Finite(z))
        } else {
            SpherePoint::INFINITY
        }
    }
}

impl From<f64> for SpherePoint {
    fn from(x: f64) -> Self {
        Complex::new(x, 0.0).into()
    }
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            Repr::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Chordal (stereographic) distance, in `[0, 2]`.
pub fn chordal_distance(p: SpherePoint, q: SpherePoint) -> f64 {
    let d = match (p.0, q.0) {
        (Repr::Infinity, Repr::Infinity) => 0.0,
        (Repr::Finite(z), Repr::Infinity) | (Repr::Infinity, Repr::Finite(z)) => {
            2.0 / 1f64.hypot(z.norm())
        }
        (Repr::Finite(z), Repr::Finite(w)) => {
            if z == w {
                return 0.0;
            }
            // Canonical operand order so the result is exactly symmetric.
            let (z, w) = if (z.re, z.im) <= (w.re, w.im) { (z, w) } else { (w, z) };
            let hz = 1f64.hypot(z.norm());
            let hw = 1f64.hypot(w.norm());
            // Dividing first keeps |z - w| from overflowing for huge points.
            2.0 * (z / hz - w / hz).norm() / hw
        }
    };
    d.min(2.0)
}

/// Length of the shorter arc between two points of the unit circle, in
/// `[0, π]`.
pub fn arc_distance(u: Complex, v: Complex) -> Result<f64> {
    for w in [u, v] {
        let off = (w.norm() - 1.0).abs();
        if off.is_nan() || off > UNIT_CIRCLE_TOL {
            return Err(Error::OffUnitCircle { re: w.re, im: w.im });
        }
    }
    let rel = u * v.conj();
    Ok(rel.im.atan2(rel.re).abs().min(PI))
}

/// `{"re": x, "im": y}` form of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for JsonComplex {
    fn from(z: Complex) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for Complex {
    fn from(z: JsonComplex) -> Self {
        Complex::new(z.re, z.im)
    }
}

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Repr::Finite(z) => JsonComplex::from(z).serialize(serializer),
            Repr::Infinity => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpherePointJson {
    Tag(String),
    Value(JsonComplex),
}

impl<'de> Deserialize<'de> for SpherePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match SpherePointJson::deserialize(deserializer)? {
            SpherePointJson::Tag(s) if s == "inf" => Ok(SpherePoint::INFINITY),
            SpherePointJson::Tag(s) => Err(D::Error::custom(format!(
                "expected \"inf\" or {{\"re\", \"im\"}}, got {s:?}"
            ))),
            SpherePointJson::Value(z) => {
                SpherePoint::finite(z.into()).map_err(D::Error::custom)
            }
        }
    }
}
