//! Majorization predicates on step functions and spectral forms.
//!
//! `majorizes(t, s)` decides `s ≺ t`: every partial integral of `s` is
//! dominated by the matching partial integral of `t` and the totals agree.
//! On each block of the common refinement both partial integrals are affine,
//! so checking the merged breakpoints makes the predicate exact with
//! finitely many comparisons.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::SpectralForm;
use crate::stepfn::{common_refinement, StepFunction};

/// `s ≺ t` with explicit additive slack on every comparison.
pub fn majorizes_with_slack<S: Scalar>(
    t: &StepFunction<S>,
    s: &StepFunction<S>,
    slack: &S,
) -> bool {
    let r = common_refinement(t, s);
    let mut t_acc = S::zero();
    let mut s_acc = S::zero();
    for k in 0..r.n_blocks() {
        let w = r.block_weight(k);
        t_acc = t_acc + r.left_values[k].clone() * w.clone();
        s_acc = s_acc + r.right_values[k].clone() * w;
        if !s_acc.le_slack(&t_acc, slack) {
            return false;
        }
    }
    (t_acc - s_acc).abs() <= *slack
}

/// `s ≺ t`: partial-integral domination with equal totals.
pub fn majorizes<S: Scalar>(t: &StepFunction<S>, s: &StepFunction<S>) -> bool {
    let slack = S::slack(&t.sup_norm());
    majorizes_with_slack(t, s, &slack)
}

/// `s ≺ʷ t` (submajorization): partial-integral domination of nonnegative
/// profiles without the total-integral equality.
pub fn submajorizes<S: Scalar>(t: &StepFunction<S>, s: &StepFunction<S>) -> Result<bool> {
    let slack = S::slack(&t.sup_norm());
    let neg = S::zero() - slack.clone();
    if *t.bottom_value() < neg || *s.bottom_value() < neg {
        return Err(Error::NegativeValue("submajorization compares singular value profiles"));
    }
    let r = common_refinement(t, s);
    let mut t_acc = S::zero();
    let mut s_acc = S::zero();
    for k in 0..r.n_blocks() {
        let w = r.block_weight(k);
        t_acc = t_acc + r.left_values[k].clone() * w.clone();
        s_acc = s_acc + r.right_values[k].clone() * w;
        if !s_acc.le_slack(&t_acc, &slack) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `s(x) <= t(x)` at every point of `[0, 1)`.
pub fn dominates_pointwise<S: Scalar>(t: &StepFunction<S>, s: &StepFunction<S>) -> bool {
    let slack = S::slack(&t.sup_norm());
    let r = common_refinement(t, s);
    r.right_values
        .iter()
        .zip(&r.left_values)
        .all(|(sv, tv)| sv.le_slack(tv, &slack))
}

/// `Σ w_k max(v_k - r, 0)` — the trace of the ramp `(X - r)_+`.
fn ramp_trace<S: Scalar>(form: &SpectralForm<S>, r: &S) -> S {
    let mut acc = S::zero();
    for (v, w) in form.entries() {
        if *v > *r {
            acc = acc + (v.clone() - r.clone()) * w.clone();
        }
    }
    acc
}

/// Independent re-derivation of majorization through convex test functions:
/// trace equality plus `τ((s - r)_+) <= τ((t - r)_+)` for every `r` in the
/// grid. With `r_grid` containing all values of both forms this decides
/// majorization, because the ramp functions generate every relevant convex
/// test at finite spectrum. Deliberately avoids the partial-integral route.
pub fn convex_test_check<S: Scalar>(
    t: &SpectralForm<S>,
    s: &SpectralForm<S>,
    r_grid: &[S],
) -> bool {
    let scale = t.values().fold(S::zero(), |acc, v| S::max_of(acc, v.abs()));
    let slack = S::slack(&scale);
    if (t.trace() - s.trace()).abs() > slack {
        return false;
    }
    r_grid
        .iter()
        .all(|r| ramp_trace(s, r).le_slack(&ramp_trace(t, r), &slack))
}

/// The grid of all spectral values of both forms, the canonical choice for
/// [`convex_test_check`].
pub fn full_ramp_grid<S: Scalar>(t: &SpectralForm<S>, s: &SpectralForm<S>) -> Vec<S> {
    let mut grid: Vec<S> = t.values().chain(s.values()).cloned().collect();
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    grid
}

/// Audit predicate for synthesis routines: the output of any unital
/// trace-preserving positive map applied to `input` must be majorized by it.
pub fn check_positive_map_contract<S: Scalar>(
    plan_output: &SpectralForm<S>,
    input: &SpectralForm<S>,
) -> bool {
    majorizes(&input.eigenvalue_function(), &plan_output.eigenvalue_function())
}
