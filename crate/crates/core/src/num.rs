//! Scalar abstractions shared across the crate.
//!
//! Geometry runs over any IEEE float ([`Real`]); probability tables and the
//! LP run over any ordered field ([`Scalar`]), instantiated in practice at
//! `f64` and [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Signed};

/// Floating-point scalar for the geometry side: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Ordered-field scalar for probabilities and linear programming.
///
/// `BigRational` gives the exact instantiation; `f64` the approximate one.
pub trait Scalar: Signed + Clone + PartialOrd + std::fmt::Debug + std::fmt::Display + 'static {}

impl<T> Scalar for T where
    T: Signed + Clone + PartialOrd + std::fmt::Debug + std::fmt::Display + 'static
{
}

/// Rational with the given numerator/denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat(num: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}

/// Nearest rational with denominator `2^bits` (round half away from zero).
///
/// Dyadic denominators keep LP right-hand sides on a common power-of-two
/// scale, so the whole system clears to integers before pivoting.
pub fn round_dyadic(value: f64, bits: u32) -> BigRational {
    let scale = (1u64 << bits) as f64;
    let scaled = value * scale;
    let nearest = scaled.round();
    BigRational::new(
        BigInt::from_f64(nearest).expect("finite value"),
        BigInt::from(1u64 << bits),
    )
}

/// Exact conversion `f64 -> BigRational` (the IEEE value itself).
pub fn rational_from_f64(value: f64) -> Option<BigRational> {
    BigRational::from_float(value)
}

/// Approximate conversion back to `f64` for reporting.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    let num = value.numer();
    let den = value.denom();
    // Split into quotient and remainder to stay accurate for large parts.
    let quot = num / den;
    let rem = num - &quot * den;
    let q = bigint_to_f64(&quot);
    let r = bigint_to_f64(&rem) / bigint_to_f64(den);
    q + r
}

fn bigint_to_f64(value: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}
