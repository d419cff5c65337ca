//! Core library for analysing hidden-influence explanations of Bell
//! nonlocality.
//!
//! The crate provides four cooperating subsystems:
//!
//! * [`spacetime`] — events, lightcones, boosted simultaneity and the
//!   geometric witness points at which hidden signalling becomes usable
//!   faster-than-light communication;
//! * [`influence`] — the three influence-model families (finite speed,
//!   finite distance, device-frame simultaneity) as predicates over events,
//!   and the induced influence graphs;
//! * [`correlations`] — conditional outcome distributions, no-signalling
//!   verification, Born-rule behaviours and Bell expressions;
//! * [`lp`] — an exact rational feasibility core deciding whether a pair of
//!   tripartite marginals admits a no-signalling joint distribution whose
//!   middle pair is conditionally local, with Farkas certificates doubling
//!   as Bell-type inequalities.
//!
//! Geometry is generic over the floating scalar (see [`num::Real`]);
//! probability tables are generic over the probability scalar
//! (see [`num::Scalar`]) so the same code paths serve `f64` tables produced
//! by the Born rule and exact `BigRational` tables consumed by the LP.

pub mod correlations;
pub mod influence;
pub mod lp;
pub mod num;
pub mod scenario;
pub mod search;
pub mod spacetime;

/// Exact rational probability scalar used by the LP core.
pub type Rational = num_rational::BigRational;

/// Default floating scalar for geometry.
pub type Real64 = f64;

/// Spacetime event over the default floating scalar.
pub type Event64 = spacetime::Event<f64>;

/// Behaviour table with exact rational entries.
pub type RationalTable = correlations::BehaviorTable<Rational>;

/// Behaviour table with floating entries (Born-rule output).
pub type FloatTable = correlations::BehaviorTable<f64>;

/// Bell expression with exact rational coefficients (LP certificates).
pub type RationalBellExpression = correlations::BellExpression<Rational>;
