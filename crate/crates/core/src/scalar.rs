//! Arithmetic backends.
//!
//! All step-function and spectral-form calculus is generic over [`Scalar`],
//! with two backends: `f64` (tolerance-based comparisons, for matrix-derived
//! data) and [`BigRational`] (exact, for oracle equality assertions).

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Global float tolerance for value comparisons.
pub const TOL_NUM: f64 = 1e-9;
/// Float tolerance for weights, breakpoints and weight sums.
pub const TOL_GRID: f64 = 1e-12;

/// Scalar type of the step-function calculus: `f64` or exact rationals.
pub trait Scalar: Clone + PartialOrd + PartialEq + Debug + Num + Signed + Send + Sync + 'static {
    /// True for backends where `==` is meaningful and tolerances are zero.
    const EXACT: bool;

    /// Exact conversion of a finite `f64` into the backend.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Tolerance for merging equal values (zero in exact mode).
    fn value_tol() -> Self;
    /// Tolerance for weights/breakpoints (zero in exact mode).
    fn grid_tol() -> Self;
    /// Additive slack for inequality tests, scaled by the data's sup norm.
    fn slack(scale: &Self) -> Self;

    /// Rejects NaN/infinities in float mode; always true in exact mode.
    fn is_finite_value(&self) -> bool;

    fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }

    /// `self <= other + slack`
    fn le_slack(&self, other: &Self, slack: &Self) -> bool {
        *self <= other.clone() + slack.clone()
    }

    /// Total order for sorting; inputs are validated finite beforehand.
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("non-finite scalar in comparison")
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn value_tol() -> Self {
        TOL_NUM
    }

    fn grid_tol() -> Self {
        TOL_GRID
    }

    fn slack(scale: &Self) -> Self {
        TOL_NUM * (1.0 + scale.abs())
    }

    fn is_finite_value(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x)
            .expect("non-finite float cannot become a rational")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn value_tol() -> Self {
        num_traits::Zero::zero()
    }

    fn grid_tol() -> Self {
        num_traits::Zero::zero()
    }

    fn slack(_scale: &Self) -> Self {
        num_traits::Zero::zero()
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}
