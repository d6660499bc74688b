//! Orbits `z_{n+1} = f(z_n)` of a Möbius map and the searches run on them.

use serde::{Deserialize, Serialize};

use crate::geometry::circle_conjugator;
use crate::mobius::NormalizedMobius;
use crate::sphere::{chordal_distance, SpherePoint};
use crate::{Complex, Error, Result};

/// Chordal distance under which an orbit point counts as a return to `z₀`.
pub const PERIOD_DETECT_TOL: f64 = 1e-12;

/// Beyond this modulus distances are measured chordally.
pub const FAR_FIELD: f64 = 1e6;

/// Relative tolerance for "same invariant set" in [`density_witness`].
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Termination {
    LengthReached,
    /// `z_step = ∞`.
    PoleHit { step: u64 },
    /// The orbit came back to `z₀` after `period` steps.
    PeriodDetected { period: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub start: SpherePoint,
    /// `samples[n] = fⁿ(z₀)`.
    pub samples: Vec<SpherePoint>,
    pub termination: Termination,
}

impl Orbit {
    /// Largest relative mismatch between a stored sample and the map applied
    /// to its predecessor.
    pub fn consistency_residual(&self, m: &NormalizedMobius, pole_tol: f64) -> f64 {
        self.samples
            .windows(2)
            .map(|w| {
                let next = m.apply_with_pole_tol(w[0], pole_tol);
                match (next.finite_value(), w[1].finite_value()) {
                    (Some(a), Some(b)) => (a - b).norm() / (1.0 + b.norm()),
                    (None, None) => 0.0,
                    _ => f64::INFINITY,
                }
            })
            .fold(0.0, f64::max)
    }
}

pub fn iterate_orbit(m: &NormalizedMobius, z0: SpherePoint, n_max: u64, pole_tol: f64) -> Orbit {
    let mut samples = Vec::with_capacity(n_max.min(1 << 20) as usize + 1);
    samples.push(z0);
    if z0.is_infinity() {
        return Orbit {
            start: z0,
            samples,
            termination: Termination::PoleHit { step: 0 },
        };
    }
    let mut period = None;
    let mut z = z0;
    for k in 1..=n_max {
        z = m.apply_with_pole_tol(z, pole_tol);
        samples.push(z);
        if z.is_infinity() {
            return Orbit {
                start: z0,
                samples,
                termination: Termination::PoleHit { step: k },
            };
        }
        if period.is_none() && chordal_distance(z, z0) <= PERIOD_DETECT_TOL {
            period = Some(k);
        }
    }
    Orbit {
        start: z0,
        samples,
        termination: match period {
            Some(period) => Termination::PeriodDetected { period },
            None => Termination::LengthReached,
        },
    }
}

/// Return times of an orbit to the ball of diameter `ε` around its start.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceRecord {
    pub base: SpherePoint,
    /// `ε/2`.
    pub radius: f64,
    /// `(n, |fⁿ(a₁) − a₁|)` in increasing `n`.
    pub returns: Vec<(u64, f64)>,
}

impl RecurrenceRecord {
    pub fn first(&self) -> (u64, f64) {
        self.returns[0]
    }
}

fn finite_start(z: SpherePoint, what: &str) -> Result<Complex> {
    z.finite_value()
        .ok_or_else(|| Error::InvalidParameter(format!("{what} must be finite")))
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be positive, got {x}")))
    }
}

/// Scans `n = 1..=n_max`, calling `visit(n, |fⁿ(a) − a|)`; stops early when
/// `visit` returns false. Returns the closest approach seen.
fn scan_returns(
    m: &NormalizedMobius,
    a: Complex,
    n_max: u64,
    mut visit: impl FnMut(u64, f64) -> bool,
) -> (u64, f64) {
    let mut z = SpherePoint::from(a);
    let mut closest = (0, f64::INFINITY);
    for n in 1..=n_max {
        z = m.apply(z);
        let Some(w) = z.finite_value() else { continue };
        let dist = (w - a).norm();
        if dist < closest.1 {
            closest = (n, dist);
        }
        if !visit(n, dist) {
            break;
        }
    }
    closest
}

/// Every `n <= n_max` with `|fⁿ(a₁) − a₁| <= ε/2`.
pub fn find_recurrence(
    m: &NormalizedMobius,
    a1: SpherePoint,
    eps: f64,
    n_max: u64,
) -> Result<RecurrenceRecord> {
    check_positive(eps, "eps")?;
    let a = finite_start(a1, "recurrence base point")?;
    let radius = eps / 2.0;
    let mut returns = Vec::new();
    let closest = scan_returns(m, a, n_max, |n, dist| {
        if dist <= radius {
            returns.push((n, dist));
        }
        true
    });
    if returns.is_empty() {
        return Err(Error::SearchExhausted {
            steps: n_max,
            closest_distance: closest.1,
            closest_step: closest.0,
        });
    }
    Ok(RecurrenceRecord {
        base: a1,
        radius,
        returns,
    })
}

/// The least `n <= n_max` with `|fⁿ(a₁) − a₁| <= radius`, and that distance.
pub fn first_return(
    m: &NormalizedMobius,
    a1: SpherePoint,
    radius: f64,
    n_max: u64,
) -> Result<(u64, f64)> {
    check_positive(radius, "radius")?;
    let a = finite_start(a1, "recurrence base point")?;
    let mut hit = None;
    let closest = scan_returns(m, a, n_max, |n, dist| {
        if dist <= radius {
            hit = Some((n, dist));
            false
        } else {
            true
        }
    });
    hit.ok_or(Error::SearchExhausted {
        steps: n_max,
        closest_distance: closest.1,
        closest_step: closest.0,
    })
}

fn near_distance(z: SpherePoint, w: SpherePoint) -> f64 {
    match (z.finite_value(), w.finite_value()) {
        (Some(a), Some(b)) if a.norm() <= FAR_FIELD && b.norm() <= FAR_FIELD => (a - b).norm(),
        _ => chordal_distance(z, w),
    }
}

/// The least `n` in `1..=n_max` with `fⁿ(z₀)` within `delta` of `target`.
///
/// Both points must lie on the same invariant line or circle. Distances are
/// Euclidean, switching to chordal once either point is beyond `1e6`.
pub fn density_witness(
    m: &NormalizedMobius,
    z0: SpherePoint,
    target: SpherePoint,
    delta: f64,
    n_max: u64,
) -> Result<u64> {
    check_positive(delta, "delta")?;
    let h = circle_conjugator(m)?;
    let level = |z: SpherePoint| h.apply(z).modulus();
    let (l0, lt) = (level(z0), level(target));
    let gap = (l0 - lt).abs();
    if gap.is_nan() || gap > MEMBERSHIP_TOL * (1.0 + lt) {
        return Err(Error::InvalidTarget(format!(
            "start and target lie on different invariant sets (|h| = {l0} vs {lt})"
        )));
    }
    let mut z = z0;
    let mut closest = (0, f64::INFINITY);
    for n in 1..=n_max {
        z = m.apply(z);
        let dist = near_distance(z, target);
        if dist < delta {
            return Ok(n);
        }
        if dist < closest.1 {
            closest = (n, dist);
        }
    }
    Err(Error::SearchExhausted {
        steps: n_max,
        closest_distance: closest.1,
        closest_step: closest.0,
    })
}

/// `{k·θ/2π mod 1 : k = 1..=n}`.
pub fn rotation_sequence(theta: f64, n: u64) -> Vec<f64> {
    let x = theta / std::f64::consts::TAU;
    (1..=n).map(|k| (k as f64 * x).rem_euclid(1.0)).collect()
}

/// Star discrepancy of `{k·θ/2π mod 1 : k = 1..=n}`, from the sorted points:
/// `max_i max(|x₍ᵢ₎ − (i−1)/N|, |x₍ᵢ₎ − i/N|)`.
pub fn star_discrepancy(theta: f64, n: u64) -> f64 {
    let mut xs = rotation_sequence(theta, n);
    xs.sort_by(f64::total_cmp);
    let big_n = n as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let below = i as f64 / big_n;
            let above = (i + 1) as f64 / big_n;
            (x - below).abs().max((x - above).abs())
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Periodicity {
    Period { q: u64 },
    Aperiodic,
}

/// The least `q <= n_max` with `chordal(f^q(z₀), z₀) <= tol`.
pub fn detect_periodic_orbit(
    m: &NormalizedMobius,
    z0: SpherePoint,
    tol: f64,
    n_max: u64,
) -> Periodicity {
    let mut z = z0;
    for q in 1..=n_max {
        z = m.apply(z);
        if chordal_distance(z, z0) <= tol {
            return Periodicity::Period { q };
        }
    }
    Periodicity::Aperiodic
}
