//! Invariant sets of an elliptic map: the extended line through its two
//! distinguished points `−d/c` and `a/c`, and the family of Apollonius
//! circles `|z − β| = r·|z − α|` around the fixed points.

use serde::Serialize;

use crate::mobius::{Conjugator, MapClass, NormalizedMobius};
use crate::sphere::{JsonComplex, SpherePoint};
use crate::{Complex, Error, Result};

/// Points sampled when a circle checks its own center/radius.
const CIRCLE_SELF_CHECK_POINTS: usize = 16;

/// The perpendicular bisector `{z : |z − α| = |z − β|}` plus `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedLine {
    alpha: Complex,
    beta: Complex,
    point: Complex,
    direction: Complex,
}

impl ExtendedLine {
    pub fn from_fixed_points(alpha: Complex, beta: Complex) -> Result<Self> {
        let gap = alpha - beta;
        if gap.norm() == 0.0 || !gap.norm().is_finite() {
            return Err(Error::InvalidParameter(
                "line needs two distinct finite fixed points".into(),
            ));
        }
        Ok(ExtendedLine {
            alpha,
            beta,
            point: (alpha + beta) / 2.0,
            direction: Complex::i() * gap / gap.norm(),
        })
    }

    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    pub fn beta(&self) -> Complex {
        self.beta
    }

    /// Midpoint of `α` and `β`.
    pub fn point(&self) -> Complex {
        self.point
    }

    /// Unit direction, perpendicular to `α − β`.
    pub fn direction(&self) -> Complex {
        self.direction
    }

    pub fn sample(&self, t: f64) -> Complex {
        self.point + self.direction * t
    }

    pub fn contains(&self, z: SpherePoint, tol: f64) -> bool {
        on_line(self, z, tol)
    }

    pub fn distance_to(&self, z: Complex) -> f64 {
        ((z - self.point) * self.direction.conj()).im.abs()
    }

    /// Mirror image across the line.
    pub fn reflect(&self, z: Complex) -> Complex {
        self.point + self.direction * self.direction * (z - self.point).conj()
    }
}

impl Serialize for ExtendedLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct LineJson {
            alpha: JsonComplex,
            beta: JsonComplex,
        }
        LineJson {
            alpha: self.alpha.into(),
            beta: self.beta.into(),
        }
        .serialize(s)
    }
}

/// The circle `|z − β| = r·|z − α|`, the preimage of `|w| = r` under
/// `h(z) = (z − β)/(z − α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCircle {
    r: f64,
    center: Complex,
    radius: f64,
    alpha: Complex,
    beta: Complex,
}

impl InvariantCircle {
    pub fn new(alpha: Complex, beta: Complex, r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!("circle parameter r = {r} must be > 0")));
        }
        if (r - 1.0).abs() <= 1e-9 {
            return Err(Error::InvalidParameter(
                "r = 1 is the invariant line, not a circle".into(),
            ));
        }
        let r2 = r * r;
        let circle = InvariantCircle {
            r,
            center: (beta - alpha * r2) / (1.0 - r2),
            radius: r * (alpha - beta).norm() / (1.0 - r2).abs(),
            alpha,
            beta,
        };
        for j in 0..CIRCLE_SELF_CHECK_POINTS {
            let phi = std::f64::consts::TAU * j as f64 / CIRCLE_SELF_CHECK_POINTS as f64;
            let s = circle.sample(phi);
            if (circle.modulus_of(s) - r).abs() > 1e-9 * r.max(1.0) {
                return Err(Error::InvalidParameter(format!(
                    "circle r = {r} is too ill-conditioned to represent"
                )));
            }
        }
        Ok(circle)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn center(&self) -> Complex {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `center + radius·e^{iφ}`.
    pub fn sample(&self, phi: f64) -> Complex {
        self.center + Complex::from_polar(self.radius, phi)
    }

    /// `|z − β| / |z − α|`, equal to `r` on the circle.
    pub fn modulus_of(&self, z: Complex) -> f64 {
        (z - self.beta).norm() / (z - self.alpha).norm()
    }

    /// `h⁻¹(r)`, a canonical point of the circle.
    pub fn base_point(&self) -> Complex {
        (self.beta - self.alpha * self.r) / (1.0 - self.r)
    }

    /// Distance of `z` from the circle relative to the radius.
    pub fn relative_offset(&self, z: Complex) -> f64 {
        ((z - self.center).norm() - self.radius).abs() / self.radius
    }

    pub fn contains(&self, z: Complex, tol: f64) -> bool {
        ((z - self.beta).norm() - self.r * (z - self.alpha).norm()).abs() <= tol * (1.0 + z.norm())
    }
}

impl Serialize for InvariantCircle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct CircleJson {
            r: f64,
            center: JsonComplex,
            radius: f64,
        }
        CircleJson {
            r: self.r,
            center: self.center.into(),
            radius: self.radius,
        }
        .serialize(s)
    }
}

fn require_elliptic(m: &NormalizedMobius) -> Result<()> {
    match m.classify() {
        MapClass::Elliptic => Ok(()),
        MapClass::Affine => Err(Error::AffineUnsupported),
        found => Err(Error::UnsupportedClass {
            expected: MapClass::Elliptic,
            found,
        }),
    }
}

/// The unique extended line preserved by an elliptic map.
pub fn invariant_line(m: &NormalizedMobius) -> Result<ExtendedLine> {
    require_elliptic(m)?;
    let fp = m.fixed_points()?;
    ExtendedLine::from_fixed_points(fp.alpha, fp.beta)
}

/// True for `∞` and for finite `z` with `| |z − α| − |z − β| | <= tol·(1 + |z|)`.
pub fn on_line(line: &ExtendedLine, z: SpherePoint, tol: f64) -> bool {
    match z.finite_value() {
        None => true,
        Some(z) => {
            ((z - line.alpha).norm() - (z - line.beta).norm()).abs() <= tol * (1.0 + z.norm())
        }
    }
}

pub fn invariant_circle(m: &NormalizedMobius, r: f64) -> Result<InvariantCircle> {
    require_elliptic(m)?;
    let fp = m.fixed_points()?;
    InvariantCircle::new(fp.alpha, fp.beta, r)
}

/// Distance from `α` to the invariant line, `|α − β|/2`.
pub fn separation_l(m: &NormalizedMobius) -> Result<f64> {
    let line = invariant_line(m)?;
    Ok(line.distance_to(line.alpha))
}

/// `h(z) = (z − β)/(z − α)`; conjugates the map to `w ↦ w/k`.
pub fn circle_conjugator(m: &NormalizedMobius) -> Result<Conjugator> {
    Ok(m.normal_form()?.conjugator().reciprocal())
}
