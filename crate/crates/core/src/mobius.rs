//! Möbius maps `z ↦ (az + b)/(cz + d)` normalised to `ad − bc = 1`.
//!
//! Besides the group operations this module carries the elliptic toolkit:
//! fixed points from the quadratic formula, the multiplier `1/(cα + d)²`,
//! the rotation angle and a continued-fraction test for whether that angle
//! is a rational number of turns.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sphere::{JsonComplex, SpherePoint};
use crate::{Complex, Error, Result};

/// Relative threshold under which `ad − bc` counts as zero.
pub const SINGULAR_TOL: f64 = 1e-14;

/// Allowed `|ad − bc − 1|` for a normalised map.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Tolerance on the trace used by [`NormalizedMobius::classify`].
pub const CLASS_TOL: f64 = 1e-10;

/// Relative pole tolerance: `z` is the pole when `|cz + d| <= POLE_TOL·(1 + |z|)`.
pub const POLE_TOL: f64 = 1e-12;

pub const DEFAULT_ROTATION_TOL: f64 = 1e-12;
pub const DEFAULT_ROTATION_Q_MAX: u64 = 1_000_000;

/// Coefficients of a Möbius map before normalisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawMobius {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl RawMobius {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        RawMobius { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        RawMobius::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn determinant(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    pub fn scaled(&self, s: Complex) -> Self {
        RawMobius::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn normalize(&self) -> Result<NormalizedMobius> {
        NormalizedMobius::normalize(*self)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapLiteral {
    a: JsonComplex,
    b: JsonComplex,
    c: JsonComplex,
    d: JsonComplex,
}

impl Serialize for RawMobius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapLiteral {
            a: self.a.into(),
            b: self.b.into(),
            c: self.c.into(),
            d: self.d.into(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RawMobius {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = MapLiteral::deserialize(d)?;
        Ok(RawMobius::new(
            lit.a.into(),
            lit.b.into(),
            lit.c.into(),
            lit.d.into(),
        ))
    }
}

/// Trace classes of a unimodular Möbius map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
    PurelyLoxodromic,
    /// `c = 0`; excluded from fixed-point and conjugation operations.
    Affine,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapClass::Hyperbolic => "hyperbolic",
            MapClass::Parabolic => "parabolic",
            MapClass::Elliptic => "elliptic",
            MapClass::PurelyLoxodromic => "purely-loxodromic",
            MapClass::Affine => "affine",
        };
        f.write_str(s)
    }
}

/// The two roots of `cz² − (a − d)z − b = 0`; `alpha` takes the `+` branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointPair {
    pub alpha: Complex,
    pub beta: Complex,
}

/// Whether a rotation angle is a rational number of turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum RotationVerdict {
    /// `θ/2π ≈ p/q` in lowest terms, `q ≥ 1`.
    Rational { p: i64, q: u64 },
    Irrational,
}

impl RotationVerdict {
    /// Order of the rotation (the `q` of a rational verdict).
    pub fn order(&self) -> Option<u64> {
        match *self {
            RotationVerdict::Rational { q, .. } => Some(q),
            RotationVerdict::Irrational => None,
        }
    }
}

/// A Möbius map with `ad − bc = 1`.
#[derive(Clone, Copy, PartialEq)]
pub struct NormalizedMobius {
    a: Complex,
    b: Complex,
    c: Complex,
    d: Complex,
}

impl fmt::Debug for NormalizedMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mobius[a={}, b={}, c={}, d={}]",
            self.a, self.b, self.c, self.d
        )
    }
}

impl NormalizedMobius {
    pub fn identity() -> Self {
        NormalizedMobius {
            a: Complex::new(1.0, 0.0),
            b: Complex::new(0.0, 0.0),
            c: Complex::new(0.0, 0.0),
            d: Complex::new(1.0, 0.0),
        }
    }

    /// Rescales by a square root of the determinant.
    ///
    /// Coefficients whose determinant is already 1 are kept as given, so
    /// named maps keep the sign of their trace. Otherwise the square root is
    /// chosen so the trace has nonnegative real part (ties: nonnegative
    /// imaginary part).
    pub fn normalize(raw: RawMobius) -> Result<Self> {
        let RawMobius { a, b, c, d } = raw;
        if [a, b, c, d]
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidMap("non-finite coefficient".into()));
        }
        let det = raw.determinant();
        let scale = (a.norm() * d.norm()).max(b.norm() * c.norm());
        if scale == 0.0 || det.norm() <= SINGULAR_TOL * scale {
            return Err(Error::InvalidMap(format!(
                "singular coefficient matrix (ad - bc = {det})"
            )));
        }
        if (det - 1.0).norm() <= UNIMODULAR_TOL {
            return Ok(NormalizedMobius { a, b, c, d });
        }
        let s = det.sqrt();
        let mut m = NormalizedMobius {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        };
        let tr = m.trace();
        let tie = 1e-14 * (m.a.norm() + m.d.norm());
        if tr.re < -tie || (tr.re.abs() <= tie && tr.im < 0.0) {
            m = m.negated();
        }
        m.check_unimodular()?;
        Ok(m)
    }

    /// Accepts coefficients that already satisfy `|ad − bc − 1| <= 1e−12`.
    pub fn from_unimodular(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        let m = NormalizedMobius { a, b, c, d };
        if [a, b, c, d]
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidMap("non-finite coefficient".into()));
        }
        m.check_unimodular()?;
        Ok(m)
    }

    fn check_unimodular(&self) -> Result<()> {
        let det = self.determinant();
        if (det - 1.0).norm() > UNIMODULAR_TOL {
            return Err(Error::InvalidMap(format!(
                "determinant {det} is not 1 after normalisation"
            )));
        }
        Ok(())
    }

    fn negated(&self) -> Self {
        NormalizedMobius {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn a(&self) -> Complex {
        self.a
    }
    pub fn b(&self) -> Complex {
        self.b
    }
    pub fn c(&self) -> Complex {
        self.c
    }
    pub fn d(&self) -> Complex {
        self.d
    }

    pub fn to_raw(&self) -> RawMobius {
        RawMobius::new(self.a, self.b, self.c, self.d)
    }

    pub fn determinant(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex {
        self.a + self.d
    }

    pub fn is_affine(&self) -> bool {
        self.c.norm() <= CLASS_TOL
    }

    /// `−d/c`, the point sent to infinity (`∞` itself for affine maps).
    pub fn pole(&self) -> SpherePoint {
        if self.c == Complex::new(0.0, 0.0) {
            SpherePoint::INFINITY
        } else {
            (-self.d / self.c).into()
        }
    }

    /// `a/c`, the image of infinity.
    pub fn image_of_infinity(&self) -> SpherePoint {
        self.apply(SpherePoint::INFINITY)
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        self.apply_with_pole_tol(z, POLE_TOL)
    }

    /// [`apply`](Self::apply) with an explicit relative pole tolerance.
    pub fn apply_with_pole_tol(&self, z: SpherePoint, pole_tol: f64) -> SpherePoint {
        let Some(z) = z.finite_value() else {
            if self.c == Complex::new(0.0, 0.0) {
                return SpherePoint::INFINITY;
            }
            return (self.a / self.c).into();
        };
        let den = self.c * z + self.d;
        if den.norm() <= pole_tol * (1.0 + z.norm()) {
            return SpherePoint::INFINITY;
        }
        if z.norm() > 1e100 {
            let w = z.inv();
            return ((self.a + self.b * w) / (self.c + self.d * w)).into();
        }
        ((self.a * z + self.b) / den).into()
    }

    /// Applies to a finite point; `None` when the image is infinity.
    pub fn apply_finite(&self, z: Complex) -> Option<Complex> {
        self.apply(z.into()).finite_value()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &NormalizedMobius) -> NormalizedMobius {
        let m = NormalizedMobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        // Pull the determinant back to 1; the principal root of a value near
        // 1 never flips the sign.
        let s = m.determinant().sqrt();
        NormalizedMobius {
            a: m.a / s,
            b: m.b / s,
            c: m.c / s,
            d: m.d / s,
        }
    }

    pub fn inverse(&self) -> NormalizedMobius {
        NormalizedMobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `n`-fold composition; `power(0)` is the identity.
    pub fn power(&self, n: u64) -> NormalizedMobius {
        let mut acc = NormalizedMobius::identity();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Conjugate `u ∘ self ∘ u⁻¹`.
    pub fn conjugated_by(&self, u: &NormalizedMobius) -> NormalizedMobius {
        u.compose(self).compose(&u.inverse())
    }

    pub fn classify(&self) -> MapClass {
        if self.is_affine() {
            return MapClass::Affine;
        }
        let tr = self.trace();
        if tr.im.abs() > CLASS_TOL {
            MapClass::PurelyLoxodromic
        } else if (tr.re - 2.0).abs() <= CLASS_TOL || (tr.re + 2.0).abs() <= CLASS_TOL {
            MapClass::Parabolic
        } else if tr.re.abs() < 2.0 {
            MapClass::Elliptic
        } else {
            MapClass::Hyperbolic
        }
    }

    fn require_class(&self, expected: MapClass) -> Result<()> {
        match self.classify() {
            found if found == expected => Ok(()),
            MapClass::Affine => Err(Error::AffineUnsupported),
            found => Err(Error::UnsupportedClass { expected, found }),
        }
    }

    pub fn fixed_points(&self) -> Result<FixedPointPair> {
        if self.is_affine() {
            return Err(Error::AffineUnsupported);
        }
        let tr = self.trace();
        let mut disc = tr * tr - 4.0;
        // A negative zero imaginary part would put the root on the lower
        // branch; real traces must give the upper one.
        if disc.im == 0.0 {
            disc.im = 0.0;
        }
        let root = disc.sqrt();
        let two_c = self.c * 2.0;
        Ok(FixedPointPair {
            alpha: (self.a - self.d + root) / two_c,
            beta: (self.a - self.d - root) / two_c,
        })
    }

    /// `1/(cα + d)²`, the derivative at `α`.
    pub fn multiplier(&self) -> Result<Complex> {
        self.require_class(MapClass::Elliptic)?;
        let alpha = self.fixed_points()?.alpha;
        let lam = self.c * alpha + self.d;
        Ok((lam * lam).inv())
    }

    /// `arg` of the multiplier in `(−π, π]`.
    pub fn rotation_angle(&self) -> Result<f64> {
        Ok(principal_angle(self.multiplier()?))
    }

    /// `1/(cz + d)²`.
    pub fn derivative_at(&self, z: Complex) -> Result<Complex> {
        let den = self.c * z + self.d;
        if den.norm() <= POLE_TOL * (1.0 + z.norm()) {
            return Err(Error::SingularDerivative);
        }
        Ok((den * den).inv())
    }

    pub fn normal_form(&self) -> Result<EllipticNormalForm> {
        self.normal_form_with(DEFAULT_ROTATION_TOL, DEFAULT_ROTATION_Q_MAX)
    }

    pub fn normal_form_with(&self, tol: f64, q_max: u64) -> Result<EllipticNormalForm> {
        self.require_class(MapClass::Elliptic)?;
        let FixedPointPair { alpha, beta } = self.fixed_points()?;
        let multiplier = self.multiplier()?;
        let angle = principal_angle(multiplier);
        Ok(EllipticNormalForm {
            alpha,
            beta,
            multiplier,
            angle,
            verdict: detect_rational_rotation(angle, tol, q_max),
            detection_tol: tol,
            detection_q_max: q_max,
        })
    }
}

fn principal_angle(z: Complex) -> f64 {
    let theta = z.im.atan2(z.re);
    // atan2(-0, x<0) is -π; the range is (−π, π].
    if theta <= -PI {
        PI
    } else {
        theta
    }
}

impl Serialize for NormalizedMobius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalizedMobius {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        RawMobius::deserialize(d)?
            .normalize()
            .map_err(D::Error::custom)
    }
}

/// Fixed points, multiplier and rotation angle of an elliptic map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticNormalForm {
    pub alpha: Complex,
    pub beta: Complex,
    /// `k = 1/(cα + d)²`, of unit modulus.
    pub multiplier: Complex,
    /// `arg k` in `(−π, π]`.
    pub angle: f64,
    pub verdict: RotationVerdict,
    pub detection_tol: f64,
    pub detection_q_max: u64,
}

impl EllipticNormalForm {
    /// `z ↦ (z − α)/(z − β)`, which turns the map into `w ↦ k·w`.
    pub fn conjugator(&self) -> Conjugator {
        Conjugator::new(self.alpha, self.beta, self.multiplier)
    }
}

/// `h(z) = (z − zero)/(z − pole)` together with the factor `k` for which
/// `h ∘ f ∘ h⁻¹(w) = k·w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjugator {
    pub zero: Complex,
    pub pole: Complex,
    pub factor: Complex,
}

impl Conjugator {
    pub fn new(zero: Complex, pole: Complex, factor: Complex) -> Self {
        Conjugator { zero, pole, factor }
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z.finite_value() {
            None => Complex::new(1.0, 0.0).into(),
            Some(z) if z == self.pole => SpherePoint::INFINITY,
            Some(z) => ((z - self.zero) / (z - self.pole)).into(),
        }
    }

    pub fn apply_finite(&self, z: Complex) -> Complex {
        (z - self.zero) / (z - self.pole)
    }

    pub fn invert(&self, w: SpherePoint) -> SpherePoint {
        match w.finite_value() {
            None => self.pole.into(),
            Some(w) if w == Complex::new(1.0, 0.0) => SpherePoint::INFINITY,
            Some(w) => self.invert_finite(w).into(),
        }
    }

    pub fn invert_finite(&self, w: Complex) -> Complex {
        (self.zero - self.pole * w) / (1.0 - w)
    }

    /// The conjugator with zero and pole swapped, i.e. `1/h`.
    pub fn reciprocal(&self) -> Conjugator {
        Conjugator::new(self.pole, self.zero, self.factor.inv())
    }
}

/// Classifies `θ/2π` as a rational number of turns.
///
/// Walks the continued-fraction convergents `p/q` of `θ/2π` and returns the
/// first with `q <= q_max` whose `q`-fold rotation is the identity to `tol`
/// turns, i.e. `|q·θ/2π − p| <= tol`. Convergents come out in lowest terms.
pub fn detect_rational_rotation(theta: f64, tol: f64, q_max: u64) -> RotationVerdict {
    let x = theta / (2.0 * PI);
    if !x.is_finite() {
        return RotationVerdict::Irrational;
    }
    let (mut p_prev, mut p) = (1f64, x.floor());
    let (mut q_prev, mut q) = (0f64, 1f64);
    let mut rest = x - x.floor();
    // 64 terms exceed any denominator representable in a double.
    for _ in 0..64 {
        if q > q_max as f64 {
            break;
        }
        if (q * x - p).abs() <= tol {
            return RotationVerdict::Rational {
                p: p as i64,
                q: q as u64,
            };
        }
        if rest == 0.0 {
            break;
        }
        let inv = rest.recip();
        let term = inv.floor();
        rest = inv - term;
        let p_next = term * p + p_prev;
        let q_next = term * q + q_prev;
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
    }
    RotationVerdict::Irrational
}
