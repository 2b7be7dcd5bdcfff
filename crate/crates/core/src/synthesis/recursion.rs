//! The scalar averaging recursion: starting from a two-point element with
//! values `a` (on trace weight `p`) and `b` (on the rest), repeated
//! division-algorithm averagings drive both values to the trace
//! `a*p + b*(1-p)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which coefficient family the recursion uses.
///
/// `Standard` runs the division algorithm on the remainder itself.
/// `Reduced` models the strict-comparison variant at `p = 1/k` (integer
/// `k >= 3`): divisors drop by one and the remainder is held at `1/k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecursionVariant {
    Standard,
    Reduced,
}

/// State after one averaging step: the divisor used, the remainder left,
/// and the current value pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionStep<S: Scalar> {
    pub divisor: u64,
    pub remainder: S,
    pub a: S,
    pub b: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecursionTrace<S: Scalar> {
    pub steps: Vec<RecursionStep<S>>,
    pub limit: S,
}

/// Division algorithm for the unit: the largest `k` with `k*r <= 1`,
/// together with the remainder `1 - k*r`.
fn div_unit<S: Scalar>(r: &S) -> (u64, S) {
    debug_assert!(*r > S::zero() && *r <= S::one());
    let mut k = (1.0 / r.to_f64()).floor() as i64;
    if k < 1 {
        k = 1;
    }
    while S::from_int(k) * r.clone() > S::one() {
        k -= 1;
    }
    while S::from_int(k + 1) * r.clone() <= S::one() {
        k += 1;
    }
    let rem = S::one() - S::from_int(k) * r.clone();
    (k as u64, rem)
}

/// Runs the averaging recursion from the two-point element with value `a`
/// on trace weight `p_weight` and `b` elsewhere.
///
/// Stops on an exact zero remainder (below `1e-12` in float mode), when
/// `|a_n - b_n| <= tol`, or after `max_iter` steps. The recorded limit is
/// the value of the final averaging, which converges to the trace.
pub fn averaging_recursion<S: Scalar>(
    p_weight: &S,
    a: &S,
    b: &S,
    max_iter: usize,
    tol: &S,
    variant: RecursionVariant,
) -> Result<RecursionTrace<S>> {
    if *p_weight <= S::zero() || *p_weight > S::one() / S::from_int(2) {
        return Err(Error::OutOfRange("trace weight must lie in (0, 1/2]"));
    }
    if max_iter == 0 {
        return Err(Error::OutOfRange("max_iter must be at least 1"));
    }
    if *tol < S::zero() {
        return Err(Error::OutOfRange("tolerance must be nonnegative"));
    }

    let mut cur_a = a.clone();
    let mut cur_b = b.clone();
    if (cur_a.clone() - cur_b.clone()).abs() <= *tol {
        return Ok(RecursionTrace { steps: Vec::new(), limit: cur_a });
    }

    let reduced_divisor = match variant {
        RecursionVariant::Standard => None,
        RecursionVariant::Reduced => {
            let (k, rem) = div_unit(p_weight);
            if !rem.approx_eq(&S::zero(), &S::grid_tol()) || k < 3 {
                return Err(Error::OutOfRange(
                    "reduced recursion needs trace weight 1/k with k >= 3",
                ));
            }
            Some(k)
        }
    };

    let mut steps: Vec<RecursionStep<S>> = Vec::new();
    let mut r = p_weight.clone();
    let mut limit = cur_a.clone();
    for n in 1..=max_iter {
        let (k, remainder) = match reduced_divisor {
            Some(k) => (k, S::one() / S::from_int(k as i64)),
            None => {
                let (k, mut rem) = div_unit(&r);
                if rem <= S::grid_tol() {
                    rem = S::zero();
                }
                (k, rem)
            }
        };
        let (num, den) = match variant {
            RecursionVariant::Standard => (S::from_int(k as i64 - 1), S::from_int(k as i64)),
            RecursionVariant::Reduced => (S::from_int(k as i64 - 2), S::from_int(k as i64 - 1)),
        };
        if n % 2 == 1 {
            cur_a = (cur_a + num * cur_b.clone()) / den;
            limit = cur_a.clone();
        } else {
            cur_b = (cur_b + num * cur_a.clone()) / den;
            limit = cur_b.clone();
        }
        steps.push(RecursionStep {
            divisor: k,
            remainder: remainder.clone(),
            a: cur_a.clone(),
            b: cur_b.clone(),
        });
        if reduced_divisor.is_none() && remainder.is_zero() {
            break;
        }
        if (cur_a.clone() - cur_b.clone()).abs() <= *tol {
            break;
        }
        r = remainder;
    }
    Ok(RecursionTrace { steps, limit })
}
