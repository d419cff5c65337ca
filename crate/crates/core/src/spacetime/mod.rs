//! Events, lightcones, boosted simultaneity and witness-point geometry.
//!
//! All geometry lives in a single preferred frame with 3 spatial dimensions;
//! planar configurations are embedded at `z = 0`. Lightcone membership is
//! inclusive on the boundary (a signal at exactly speed `c` counts as
//! arriving), which makes "outside the future lightcone" a strict, testable
//! complement.

mod witness;

pub use witness::{WitnessError, WitnessOutcome, WitnessSearch};

use crate::num::Real;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 3-vector of lengths (or speeds, in the same units as `c`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec3<R> {
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: Real> Vec3<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    pub fn scale(&self, factor: R) -> Self {
        Self::new(self.x * factor, self.y * factor, self.z * factor)
    }

    pub fn dot(&self, other: &Self) -> R {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> R {
        self.dot(self).sqrt()
    }

    pub fn distance(&self, other: &Self) -> R {
        self.sub(other).norm()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == R::zero() {
            None
        } else {
            Some(self.scale(R::one() / n))
        }
    }
}

/// A labelled spacetime point: a party's measurement event.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event<R> {
    pub label: String,
    pub position: Vec3<R>,
    pub time: R,
}

impl<R: Real> Event<R> {
    pub fn new(label: impl Into<String>, position: Vec3<R>, time: R) -> Self {
        Self {
            label: label.into(),
            position,
            time,
        }
    }

    /// Arrival time at `point` of a light signal emitted at this event.
    pub fn light_arrival(&self, point: &Vec3<R>, c: R) -> R {
        self.time + self.position.distance(point) / c
    }
}

/// Velocity of a measurement device's rest frame; must stay strictly below `c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameVelocity<R> {
    pub velocity: Vec3<R>,
}

impl<R: Real> FrameVelocity<R> {
    pub fn new(velocity: Vec3<R>) -> Self {
        Self { velocity }
    }

    pub fn at_rest() -> Self {
        Self::new(Vec3::zero())
    }

    pub fn speed(&self) -> R {
        self.velocity.norm()
    }
}

/// Relative time order of an event in a boosted frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeOrder {
    Past,
    Simultaneous,
    Future,
}

#[derive(Debug, Error, PartialEq)]
pub enum SpacetimeError {
    #[error("frame velocity |u| = {speed} must be strictly below c = {c}")]
    SuperluminalFrame { speed: f64, c: f64 },
    #[error("speed of light must be positive, got {0}")]
    NonPositiveC(f64),
    #[error("parameters outside the valid domain: {0}")]
    Domain(String),
}

/// Is `candidate` inside (boundary included) the future lightcone of `apex`?
pub fn in_future_lightcone<R: Real>(candidate: &Event<R>, apex: &Event<R>, c: R) -> bool {
    debug_assert!(c > R::zero());
    let dt = candidate.time - apex.time;
    if dt < R::zero() {
        return false;
    }
    candidate.position.distance(&apex.position) <= c * dt
}

/// Classify `other` as past/simultaneous/future of `reference` in the frame
/// moving at `u` relative to the preferred frame.
///
/// Only the sign of the boosted time difference
/// `(t_other - t_ref) - u . (x_other - x_ref) / c^2` matters; the positive
/// Lorentz factor is omitted.
pub fn frame_time_order<R: Real>(
    reference: &Event<R>,
    other: &Event<R>,
    u: &FrameVelocity<R>,
    c: R,
) -> Result<TimeOrder, SpacetimeError> {
    if c <= R::zero() {
        return Err(SpacetimeError::NonPositiveC(
            c.to_f64().unwrap_or(f64::NAN),
        ));
    }
    if u.speed() >= c {
        return Err(SpacetimeError::SuperluminalFrame {
            speed: u.speed().to_f64().unwrap_or(f64::NAN),
            c: c.to_f64().unwrap_or(f64::NAN),
        });
    }
    let dt = other.time - reference.time;
    let dx = other.position.sub(&reference.position);
    let boosted = dt - u.velocity.dot(&dx) / (c * c);
    Ok(if boosted > R::zero() {
        TimeOrder::Future
    } else if boosted < R::zero() {
        TimeOrder::Past
    } else {
        TimeOrder::Simultaneous
    })
}

/// Closed-form witness-distance bound quoted for the finite-distance
/// configuration: `2 eps c (d - eps c) / (d - 4 eps c)`.
///
/// Only defined for `d > 4 eps c`; the pole at `d = 4 eps c` marks the regime
/// where the far-side witness point ceases to exist at finite distance.
pub fn witness_bound_fig2<R: Real>(d: R, eps: R, c: R) -> Result<R, SpacetimeError> {
    let four = R::from_f64(4.0).unwrap();
    let two = R::from_f64(2.0).unwrap();
    if eps < R::zero() || c <= R::zero() || d <= four * eps * c {
        return Err(SpacetimeError::Domain(format!(
            "require eps >= 0, c > 0 and d > 4*eps*c (got d={d}, eps={eps}, c={c})"
        )));
    }
    Ok(two * eps * c * (d - eps * c) / (d - four * eps * c))
}

/// Closed-form witness-distance bound for the device-frame configuration:
/// `d v (4 sqrt(3) c - 3 v) / (4 c (c - sqrt(3) v))`, valid for `0 <= v < c/sqrt(3)`.
pub fn witness_bound_fig3<R: Real>(d: R, v: R, c: R) -> Result<R, SpacetimeError> {
    let sqrt3 = R::from_f64(3.0).unwrap().sqrt();
    let four = R::from_f64(4.0).unwrap();
    let three = R::from_f64(3.0).unwrap();
    if v < R::zero() || c <= R::zero() || v * sqrt3 >= c {
        return Err(SpacetimeError::Domain(format!(
            "require 0 <= v < c/sqrt(3) (got v={v}, c={c})"
        )));
    }
    Ok(d * v * (four * sqrt3 * c - three * v) / (four * c * (c - sqrt3 * v)))
}

/// Tight on-axis minimum of the distance from the early party to its witness
/// locus when the excluded event fires `t_gap` before the pair events.
///
/// For the planar configuration with the pair at transverse offset
/// `sqrt(3) d / 2` this solves `(d + s) - c*t_gap = |p - B|` on the axis:
/// `s = c t_gap (2 d - c t_gap) / (d - 2 c t_gap)`. Used as an independent
/// cross-check of the numeric witness search.
pub fn on_axis_witness_distance<R: Real>(d: R, t_gap: R, c: R) -> Result<R, SpacetimeError> {
    let two = R::from_f64(2.0).unwrap();
    let ct = c * t_gap;
    if ct < R::zero() || d <= two * ct {
        return Err(SpacetimeError::Domain(format!(
            "require 0 <= c*t_gap < d/2 (got d={d}, c*t_gap={ct})"
        )));
    }
    Ok(ct * (two * d - ct) / (d - two * ct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ev(label: &str, x: f64, y: f64, z: f64, t: f64) -> Event<f64> {
        Event::new(label, Vec3::new(x, y, z), t)
    }

    #[test]
    fn lightcone_same_point_later() {
        let apex = ev("a", 0.0, 0.0, 0.0, 0.0);
        let cand = ev("b", 0.0, 0.0, 0.0, 1.0);
        assert!(in_future_lightcone(&cand, &apex, 1.0));
    }

    #[test]
    fn lightcone_null_boundary_counts_inside() {
        let apex = ev("a", 0.0, 0.0, 0.0, 0.0);
        let cand = ev("b", 1.0, 0.0, 0.0, 1.0);
        assert!(in_future_lightcone(&cand, &apex, 1.0));
    }

    #[test]
    fn lightcone_spacelike_outside() {
        let apex = ev("a", 0.0, 0.0, 0.0, 0.0);
        let cand = ev("b", 2.0, 0.0, 0.0, 1.0);
        assert!(!in_future_lightcone(&cand, &apex, 1.0));
    }

    #[test]
    fn lightcone_past_outside() {
        let apex = ev("a", 0.0, 0.0, 0.0, 0.0);
        let cand = ev("b", 0.0, 0.0, 0.0, -1.0);
        assert!(!in_future_lightcone(&cand, &apex, 1.0));
    }

    #[test]
    fn frame_order_at_rest_reduces_to_preferred_time() {
        let r = ev("r", 0.0, 0.0, 0.0, 0.0);
        let o = ev("o", 3.0, -1.0, 0.5, 2.0);
        let u = FrameVelocity::at_rest();
        assert_eq!(frame_time_order(&r, &o, &u, 1.0).unwrap(), TimeOrder::Future);
    }

    #[test]
    fn frame_order_sign_forced_by_motion() {
        // same preferred time, displaced along +x, frame moving at +x/2:
        // boosted dt = 0 - 0.5*1 = -0.5 < 0 -> past
        let r = ev("r", 0.0, 0.0, 0.0, 0.0);
        let o = ev("o", 1.0, 0.0, 0.0, 0.0);
        let u = FrameVelocity::new(Vec3::new(0.5, 0.0, 0.0));
        assert_eq!(frame_time_order(&r, &o, &u, 1.0).unwrap(), TimeOrder::Past);
    }

    #[test]
    fn frame_order_exact_tie_is_simultaneous() {
        // u.dx = c^2 dt exactly: u=0.5, dx=1, dt=0.5, c=1
        let r = ev("r", 0.0, 0.0, 0.0, 0.0);
        let o = ev("o", 1.0, 0.0, 0.0, 0.5);
        let u = FrameVelocity::new(Vec3::new(0.5, 0.0, 0.0));
        assert_eq!(
            frame_time_order(&r, &o, &u, 1.0).unwrap(),
            TimeOrder::Simultaneous
        );
    }

    #[test]
    fn frame_order_rejects_superluminal() {
        let r = ev("r", 0.0, 0.0, 0.0, 0.0);
        let o = ev("o", 1.0, 0.0, 0.0, 0.5);
        let u = FrameVelocity::new(Vec3::new(1.0, 0.0, 0.0));
        assert!(frame_time_order(&r, &o, &u, 1.0).is_err());
    }

    #[test]
    fn bound_fig2_spot_values() {
        assert_relative_eq!(witness_bound_fig2(1.0, 0.1, 1.0).unwrap(), 0.3, max_relative = 1e-15);
        assert_eq!(witness_bound_fig2(1.0, 0.0, 1.0).unwrap(), 0.0);
        assert!(witness_bound_fig2(0.4, 0.1, 1.0).is_err()); // d = 4 eps c pole
    }

    #[test]
    fn bound_fig3_spot_values() {
        assert_eq!(witness_bound_fig3(1.0, 0.0, 1.0).unwrap(), 0.0);
        let v = 0.1;
        assert_relative_eq!(
            witness_bound_fig3(1.0, v, 1.0).unwrap(),
            0.20041860098019428,
            max_relative = 1e-12
        );
        assert!(witness_bound_fig3(1.0, 1.0 / 3.0_f64.sqrt(), 1.0).is_err());
    }

    #[test]
    fn bounds_monotone_in_eps_and_v() {
        let mut prev = -1.0;
        for k in 0..40 {
            let eps = 0.001 + 0.005 * k as f64; // stays below d/(4c)
            let b = witness_bound_fig2(1.0, eps, 1.0).unwrap();
            assert!(b > prev);
            prev = b;
        }
        let mut prev = -1.0;
        for k in 0..40 {
            let v = 0.001 + 0.014 * k as f64; // stays below 1/sqrt(3)
            let b = witness_bound_fig3(1.0, v, 1.0).unwrap();
            assert!(b > prev);
            prev = b;
        }
    }

    proptest! {
        #[test]
        fn lightcone_transitive_through_timelike_chains(
            x1 in -5.0..5.0f64, y1 in -5.0..5.0f64, t1 in -5.0..5.0f64,
            dx2 in -1.0..1.0f64, dy2 in -1.0..1.0f64, dt2 in 0.0..3.0f64,
            dx3 in -1.0..1.0f64, dy3 in -1.0..1.0f64, dt3 in 0.0..3.0f64,
        ) {
            let c = 1.0;
            let e1 = ev("1", x1, y1, 0.0, t1);
            let e2 = ev("2", x1 + dx2, y1 + dy2, 0.0, t1 + dt2);
            let e3 = ev("3", x1 + dx2 + dx3, y1 + dy2 + dy3, 0.0, t1 + dt2 + dt3);
            if in_future_lightcone(&e2, &e1, c) && in_future_lightcone(&e3, &e2, c) {
                prop_assert!(in_future_lightcone(&e3, &e1, c));
            }
        }

        #[test]
        fn frame_order_antisymmetric(
            x in -3.0..3.0f64, y in -3.0..3.0f64, t in -3.0..3.0f64,
            ux in -0.6..0.6f64, uy in -0.6..0.6f64,
        ) {
            let r = ev("r", 0.0, 0.0, 0.0, 0.0);
            let o = ev("o", x, y, 0.0, t);
            let u = FrameVelocity::new(Vec3::new(ux, uy, 0.0));
            let fwd = frame_time_order(&r, &o, &u, 1.0).unwrap();
            let bwd = frame_time_order(&o, &r, &u, 1.0).unwrap();
            let expected = match fwd {
                TimeOrder::Past => TimeOrder::Future,
                TimeOrder::Simultaneous => TimeOrder::Simultaneous,
                TimeOrder::Future => TimeOrder::Past,
            };
            prop_assert_eq!(bwd, expected);
        }

        #[test]
        fn frame_order_at_rest_matches_preferred_times(
            x in -3.0..3.0f64, t in -3.0..3.0f64,
        ) {
            let r = ev("r", 0.0, 0.0, 0.0, 0.0);
            let o = ev("o", x, 0.0, 0.0, t);
            let got = frame_time_order(&r, &o, &FrameVelocity::at_rest(), 1.0).unwrap();
            let expected = if t > 0.0 {
                TimeOrder::Future
            } else if t < 0.0 {
                TimeOrder::Past
            } else {
                TimeOrder::Simultaneous
            };
            prop_assert_eq!(got, expected);
        }
    }
}
