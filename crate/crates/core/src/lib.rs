//! Elliptic Möbius maps on the Riemann sphere.
//!
//! The crate is organised bottom-up:
//!
//! - [`sphere`]: points of the extended complex plane, the chordal metric and
//!   arc length on the unit circle.
//! - [`mobius`]: unimodular Möbius maps, trace classification, fixed points,
//!   multipliers and rotation-angle rationality.
//! - [`geometry`]: the invariant extended line and the invariant Apollonius
//!   circles of an elliptic map.
//! - [`orbit`]: orbit iteration with pole handling, recurrence search,
//!   density witnesses, periodicity and star discrepancy.
//! - [`hyers_ulam`]: ε-pseudo-orbits (periodic loops and drifts) and the
//!   separation experiments built on them.
//! - [`cli`]: configuration and report types behind the `mobius-lab` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod hyers_ulam;
pub mod mobius;
pub mod orbit;
pub mod presets;
pub mod sampling;
pub mod sphere;

pub use error::{Error, Result};
pub use geometry::{ExtendedLine, InvariantCircle};
pub use hyers_ulam::{ExperimentReport, PseudoOrbit};
pub use mobius::{
    Conjugator, EllipticNormalForm, FixedPointPair, MapClass, NormalizedMobius, RawMobius,
    RotationVerdict,
};
pub use orbit::{Orbit, Periodicity, RecurrenceRecord, Termination};
pub use sphere::SpherePoint;

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
