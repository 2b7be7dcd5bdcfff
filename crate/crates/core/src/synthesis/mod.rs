//! Constructive synthesis: pinchings, the reduction algorithm that rewrites
//! one spectral form into a majorized target through two-block averagings,
//! matrix-level mixing plans with explicit unitaries, compression
//! constructions, and the scalar averaging recursion.

mod plan;
mod recursion;

pub use plan::{realize_mixing_plan, MixingPlan};
pub use recursion::{averaging_recursion, RecursionStep, RecursionTrace, RecursionVariant};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::majorize::{dominates_pointwise, majorizes, submajorizes};
use crate::scalar::Scalar;
use crate::spectral::{align, matrix_singular_value_function, SpectralForm};
use crate::stepfn::sup_distance;

/// One two-block averaging move: blocks `block_i` and `block_j` are pinched
/// with parameter `mix` (`mix = 1` leaves them alone, `mix = 0` averages
/// them fully), producing `result_i` and `result_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TTransformStep<S: Scalar> {
    pub block_i: usize,
    pub block_j: usize,
    pub mix: S,
    pub result_i: S,
    pub result_j: S,
}

/// Two-point pinching: moves the pair `(a, b)` toward its weighted mean `m`,
/// returning `(a*t + m*(1-t), b*t + m*(1-t))`. The weighted sum is
/// preserved for every `t` in `[0, 1]`.
pub fn pinch<S: Scalar>(a: &S, b: &S, w_a: &S, w_b: &S, t: &S) -> Result<(S, S)> {
    if *w_a <= S::zero() {
        return Err(Error::NonpositiveWeight { index: 0 });
    }
    if *w_b <= S::zero() {
        return Err(Error::NonpositiveWeight { index: 1 });
    }
    if *t < S::zero() || *t > S::one() {
        return Err(Error::OutOfRange("pinch parameter must lie in [0, 1]"));
    }
    let mean = (a.clone() * w_a.clone() + b.clone() * w_b.clone())
        / (w_a.clone() + w_b.clone());
    let rest = S::one() - t.clone();
    Ok((
        a.clone() * t.clone() + mean.clone() * rest.clone(),
        b.clone() * t.clone() + mean * rest,
    ))
}

/// Checks that two forms share a weight grid (within the grid tolerance)
/// and that both value lists are non-increasing; returns weights and values.
fn aligned_parts<S: Scalar>(
    t_form: &SpectralForm<S>,
    s_form: &SpectralForm<S>,
) -> Result<(Vec<S>, Vec<S>, Vec<S>)> {
    if t_form.len() != s_form.len() {
        return Err(Error::NotAligned("forms have different block counts"));
    }
    let grid_tol = S::grid_tol();
    for ((_, wt), (_, ws)) in t_form.entries().iter().zip(s_form.entries()) {
        if !wt.approx_eq(ws, &grid_tol) {
            return Err(Error::NotAligned("weight sequences differ"));
        }
    }
    let tol = S::value_tol();
    for form in [t_form, s_form] {
        let vals: Vec<&S> = form.values().collect();
        for w in vals.windows(2) {
            if !w[1].le_slack(w[0], &tol) {
                return Err(Error::NotAligned("values must be sorted non-increasing"));
            }
        }
    }
    let weights = t_form.weights().cloned().collect();
    let tv = t_form.values().cloned().collect();
    let sv = s_form.values().cloned().collect();
    Ok((weights, tv, sv))
}

/// The reduction algorithm: a finite sequence of two-block pinchings
/// transforming `t_form`'s values into `s_form`'s, assuming the forms are
/// aligned and `s_form` is majorized by `t_form`.
///
/// Round `p` fixes target value `p` by pinching block `p` against the first
/// later block whose value drops below the target; a full pinch that
/// overshoots moves the donor index one step right. The step count is at
/// most `blocks^2`, and every intermediate form stays majorized by the
/// source while majorizing the target.
pub fn reduce_to_target<S: Scalar>(
    t_form: &SpectralForm<S>,
    s_form: &SpectralForm<S>,
) -> Result<Vec<TTransformStep<S>>> {
    let (weights, mut v, beta) = aligned_parts(t_form, s_form)?;
    if !majorizes(&t_form.eigenvalue_function(), &s_form.eigenvalue_function()) {
        return Err(Error::NotMajorized("target is not majorized by the source"));
    }
    let n = v.len();
    let scale = v.iter().fold(S::zero(), |acc, x| S::max_of(acc, x.abs()));
    let eq_tol = S::slack(&scale);
    let accept_tol = eq_tol.clone() * S::from_int(4);

    let mut steps = Vec::new();
    for p in 0..n {
        let target = beta[p].clone();
        let mut from = p + 1;
        loop {
            if v[p].approx_eq(&target, &eq_tol) {
                v[p] = target.clone();
                break;
            }
            if v[p] < target {
                return Err(Error::NotMajorized("pivot fell below its target value"));
            }
            let donor = (from..n).find(|&k| v[k].clone() + eq_tol.clone() < target);
            let j = match donor {
                Some(j) => j,
                None => {
                    if v[p].approx_eq(&target, &accept_tol) {
                        v[p] = target.clone();
                        break;
                    }
                    return Err(Error::NotMajorized("no donor block below the target"));
                }
            };
            let mean = (v[p].clone() * weights[p].clone() + v[j].clone() * weights[j].clone())
                / (weights[p].clone() + weights[j].clone());
            if mean <= target {
                // Partial pinch lands block p exactly on the target.
                let mix = (target.clone() - mean.clone()) / (v[p].clone() - mean.clone());
                let (_, donor_after) = pinch(&v[p], &v[j], &weights[p], &weights[j], &mix)?;
                // The pivot lands on the target by choice of mix; snap away
                // float rounding.
                v[p] = target.clone();
                v[j] = donor_after.clone();
                steps.push(TTransformStep {
                    block_i: p,
                    block_j: j,
                    mix,
                    result_i: target.clone(),
                    result_j: donor_after,
                });
                break;
            }
            // Full pinch: both blocks move to the mean, still above the
            // target; retry against the next donor.
            steps.push(TTransformStep {
                block_i: p,
                block_j: j,
                mix: S::zero(),
                result_i: mean.clone(),
                result_j: mean.clone(),
            });
            v[p] = mean.clone();
            v[j] = mean;
            from = j + 1;
        }
    }
    debug_assert!(steps.len() <= n * n);
    Ok(steps)
}

/// Replays a step sequence on a form, recomputing each pinch independently
/// of the values recorded in the steps.
pub fn apply_steps<S: Scalar>(
    form: &SpectralForm<S>,
    steps: &[TTransformStep<S>],
) -> Result<SpectralForm<S>> {
    let mut entries: Vec<(S, S)> = form.entries().to_vec();
    for step in steps {
        if step.block_i >= entries.len() || step.block_j >= entries.len() {
            return Err(Error::OutOfRange("step indexes a missing block"));
        }
        let (a, wa) = entries[step.block_i].clone();
        let (b, wb) = entries[step.block_j].clone();
        let (a2, b2) = pinch(&a, &b, &wa, &wb, &step.mix)?;
        entries[step.block_i].0 = a2;
        entries[step.block_j].0 = b2;
    }
    SpectralForm::new(entries)
}

/// Block-diagonal contraction stored through its squared coefficients: the
/// gain on block `k` is the factor applied to the block value under
/// `A*TA`. Gains stay exact in rational mode; the operator coefficients are
/// their square roots.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockContraction<S: Scalar> {
    gains: Vec<S>,
}

impl<S: Scalar> BlockContraction<S> {
    pub fn new(gains: Vec<S>) -> Result<Self> {
        let tol = S::value_tol();
        for g in &gains {
            if *g < S::zero() || !g.le_slack(&S::one(), &tol) {
                return Err(Error::OutOfRange("contraction gains must lie in [0, 1]"));
            }
        }
        Ok(BlockContraction { gains })
    }

    pub fn gains(&self) -> &[S] {
        &self.gains
    }

    /// Operator coefficients `sqrt(gain)` per block.
    pub fn coefficients(&self) -> Vec<f64> {
        self.gains.iter().map(|g| g.to_f64().max(0.0).sqrt()).collect()
    }

    /// Operator norm of the block-diagonal contraction.
    pub fn norm(&self) -> f64 {
        self.coefficients().into_iter().fold(0.0, f64::max)
    }

    /// Spectral form of `A*TA` for a form living on the same blocks.
    pub fn apply(&self, form: &SpectralForm<S>) -> Result<SpectralForm<S>> {
        if form.len() != self.gains.len() {
            return Err(Error::DimensionMismatch { left: form.len(), right: self.gains.len() });
        }
        let entries = form
            .entries()
            .iter()
            .zip(&self.gains)
            .map(|((v, w), g)| (v.clone() * g.clone(), w.clone()))
            .collect();
        SpectralForm::new(entries)
    }
}

/// Conjugation that turns submajorization into majorization: on the common
/// weight grid of both forms, keeps the leading blocks of the source,
/// scales the crossing block by the gain `q` solving the total-integral
/// equation, and kills the rest. Returns the contraction (indexed by the
/// aligned grid) and the spectral form of `A*TA`, which majorizes the
/// target.
pub fn submajorization_contraction<S: Scalar>(
    t_form: &SpectralForm<S>,
    s_form: &SpectralForm<S>,
) -> Result<(BlockContraction<S>, SpectralForm<S>)> {
    if !t_form.is_nonnegative() || !s_form.is_nonnegative() {
        return Err(Error::NegativeValue("submajorization contraction needs positive forms"));
    }
    let lt = t_form.eigenvalue_function();
    let ls = s_form.eigenvalue_function();
    if !submajorizes(&lt, &ls)? {
        return Err(Error::NotSubmajorized("source does not submajorize target"));
    }

    // The cut block must live on the refined grid of both forms, otherwise
    // the output can fail to majorize a target whose breakpoints are finer.
    let (sorted, _) = align(t_form, s_form);
    let n = sorted.len();
    let target = ls.total_integral();
    let scale = sorted.values().fold(S::zero(), |acc, x| S::max_of(acc, x.abs()));
    let slack = S::slack(&scale);
    let value_tol = S::value_tol();

    // First block where the running integral of the source reaches the
    // target total, then extended across zero blocks (the supremum of the
    // crossing set).
    let mut prefix = S::zero();
    let mut before = S::zero();
    let mut crossing = n - 1;
    for (k, (v, w)) in sorted.entries().iter().enumerate() {
        before = prefix.clone();
        prefix = prefix + v.clone() * w.clone();
        if target.le_slack(&prefix, &slack) {
            crossing = k;
            break;
        }
    }
    while crossing + 1 < n
        && sorted.entries()[crossing + 1].0.abs() <= value_tol
        && prefix.approx_eq(&target, &slack)
    {
        crossing += 1;
        before = prefix.clone();
    }

    let (v_c, w_c) = sorted.entries()[crossing].clone();
    let block_mass = v_c * w_c;
    let q = if block_mass > S::zero() {
        let raw = (target - before) / block_mass;
        S::min_of(S::max_of(raw, S::zero()), S::one())
    } else {
        S::one()
    };

    let mut gains = Vec::with_capacity(n);
    for k in 0..n {
        gains.push(if k < crossing {
            S::one()
        } else if k == crossing {
            q.clone()
        } else {
            S::zero()
        });
    }
    let contraction = BlockContraction::new(gains)?;
    let output = contraction.apply(&sorted)?;
    Ok((contraction, output))
}

/// Blockwise gains `β_k / α_k` realizing a pointwise-dominated positive
/// form as a compression `A*TA` of the source, exactly.
pub fn compression_for_dominance<S: Scalar>(
    t_form: &SpectralForm<S>,
    s_form: &SpectralForm<S>,
) -> Result<BlockContraction<S>> {
    let (_, alphas, betas) = aligned_parts(t_form, s_form)?;
    if !t_form.is_nonnegative() || !s_form.is_nonnegative() {
        return Err(Error::NegativeValue("compression needs positive forms"));
    }
    let scale = alphas.iter().fold(S::zero(), |acc, x| S::max_of(acc, x.abs()));
    let slack = S::slack(&scale);
    let tol = S::value_tol();
    let mut gains = Vec::with_capacity(alphas.len());
    for (alpha, beta) in alphas.iter().zip(&betas) {
        if !beta.le_slack(alpha, &slack) {
            return Err(Error::NotDominated("target value exceeds source value"));
        }
        if beta.abs() <= tol {
            gains.push(S::zero());
        } else if *alpha <= tol {
            // Excluded by dominance up to tolerance; refuse rather than divide.
            return Err(Error::NotDominated("vanishing source block with nonzero target"));
        } else {
            gains.push(S::min_of(beta.clone() / alpha.clone(), S::one()));
        }
    }
    BlockContraction::new(gains)
}

/// Membership in the closed two-sided orbit `{UaV}`: equality of singular
/// value profiles within `1e-7`.
pub fn two_sided_orbit_member(a: &CMatrix, b: &CMatrix) -> Result<bool> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch { left: a.nrows(), right: b.nrows() });
    }
    let mu_a = matrix_singular_value_function(a)?;
    let mu_b = matrix_singular_value_function(b)?;
    Ok(sup_distance(&mu_a, &mu_b) <= 1e-7)
}

/// Contractions `(A, B)` with `A t B ≈ s`, available whenever the singular
/// value profile of `s` is pointwise dominated by that of `t`: both sides
/// are rotated into their singular bases and the diagonal carries the
/// ratios of singular values.
pub fn two_sided_compression(t: &CMatrix, s: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    if t.nrows() != s.nrows() || t.ncols() != s.ncols() {
        return Err(Error::DimensionMismatch { left: t.nrows(), right: s.nrows() });
    }
    let mu_t = matrix_singular_value_function(t)?;
    let mu_s = matrix_singular_value_function(s)?;
    if !dominates_pointwise(&mu_t, &mu_s) {
        return Err(Error::NotDominated("singular values of the target are not dominated"));
    }
    let (u_s, sig_s, v_s) = linalg::svd_desc(s);
    let (u_t, sig_t, v_t) = linalg::svd_desc(t);
    let n = t.nrows();
    let floor = crate::scalar::TOL_NUM * (1.0 + sig_t.first().copied().unwrap_or(0.0));
    let mut d = CMatrix::zeros(n, n);
    for k in 0..n {
        let ratio = if sig_t[k] <= floor { 0.0 } else { (sig_s[k] / sig_t[k]).min(1.0) };
        d[(k, k)] = C64::new(ratio, 0.0);
    }
    let a = &u_s * d * u_t.adjoint();
    let b = &v_t * v_s.adjoint();
    Ok((a, b))
}

/// Composition certifying membership of a submajorized positive form in the
/// hull of compressions: first the contraction of
/// [`submajorization_contraction`], then the reduction steps carrying
/// `A*TA` to the target on the aligned grid.
pub fn submajorization_plan<S: Scalar>(
    t_form: &SpectralForm<S>,
    s_form: &SpectralForm<S>,
) -> Result<(BlockContraction<S>, Vec<TTransformStep<S>>)> {
    let (contraction, mid) = submajorization_contraction(t_form, s_form)?;
    let (mid_aligned, s_aligned) = align(&mid, s_form);
    let steps = reduce_to_target(&mid_aligned, &s_aligned)?;
    Ok((contraction, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorize::check_positive_map_contract;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn form(pairs: &[(i64, i64, i64, i64)]) -> SpectralForm<BigRational> {
        SpectralForm::new(pairs.iter().map(|&(vn, vd, wn, wd)| (rat(vn, vd), rat(wn, wd))).collect())
            .unwrap()
    }

    #[test]
    fn pinch_examples() {
        let half = rat(1, 2);
        let (a, b) = pinch(&rat(1, 1), &rat(0, 1), &half, &half, &half).unwrap();
        assert_eq!(a, rat(3, 4));
        assert_eq!(b, rat(1, 4));
        let (a, b) = pinch(&rat(1, 1), &rat(0, 1), &half, &half, &rat(1, 1)).unwrap();
        assert_eq!((a, b), (rat(1, 1), rat(0, 1)));
        let (a, b) = pinch(&rat(1, 1), &rat(0, 1), &half, &half, &rat(0, 1)).unwrap();
        assert_eq!((a, b), (rat(1, 2), rat(1, 2)));
        assert!(pinch(&rat(1, 1), &rat(0, 1), &half, &half, &rat(3, 2)).is_err());
    }

    #[test]
    fn pinch_preserves_weighted_sum_and_order() {
        let (a, b) = pinch(&rat(5, 1), &rat(1, 1), &rat(1, 3), &rat(2, 3), &rat(1, 3)).unwrap();
        assert_eq!(
            a.clone() * rat(1, 3) + b.clone() * rat(2, 3),
            rat(5, 1) * rat(1, 3) + rat(1, 1) * rat(2, 3)
        );
        assert!(a >= b);
    }

    #[test]
    fn reduce_single_step_to_trace() {
        let t = form(&[(3, 1, 1, 2), (1, 1, 1, 2)]);
        let s = form(&[(2, 1, 1, 2), (2, 1, 1, 2)]);
        let steps = reduce_to_target(&t, &s).unwrap();
        assert_eq!(steps.len(), 1);
        let out = apply_steps(&t, &steps).unwrap();
        let vals: Vec<_> = out.values().cloned().collect();
        assert_eq!(vals, vec![rat(2, 1), rat(2, 1)]);
    }

    #[test]
    fn reduce_identical_is_empty() {
        let t = form(&[(3, 1, 1, 2), (1, 1, 1, 2)]);
        let steps = reduce_to_target(&t, &t).unwrap();
        assert!(steps.is_empty());
    }

    #[test]
    fn reduce_three_blocks_with_audit() {
        let t = form(&[(4, 1, 1, 4), (2, 1, 1, 4), (0, 1, 1, 2)]);
        let s = form(&[(3, 1, 1, 4), (2, 1, 1, 4), (1, 2, 1, 2)]);
        let steps = reduce_to_target(&t, &s).unwrap();
        assert!(steps.len() <= 9);
        let mut current = t.clone();
        for step in &steps {
            current = apply_steps(&current, std::slice::from_ref(step)).unwrap();
            assert!(check_positive_map_contract(&current, &t));
            assert!(majorizes(
                &current.eigenvalue_function(),
                &s.eigenvalue_function()
            ));
        }
        let vals: Vec<_> = current.values().cloned().collect();
        assert_eq!(vals, vec![rat(3, 1), rat(2, 1), rat(1, 2)]);
    }

    #[test]
    fn reduce_rejects_unaligned_and_unmajorized() {
        let t = form(&[(3, 1, 1, 2), (1, 1, 1, 2)]);
        let other = form(&[(3, 1, 1, 4), (1, 1, 3, 4)]);
        assert!(matches!(reduce_to_target(&t, &other), Err(Error::NotAligned(_))));
        let bigger = form(&[(4, 1, 1, 2), (0, 1, 1, 2)]);
        assert!(matches!(reduce_to_target(&t, &bigger), Err(Error::NotMajorized(_))));
    }

    #[test]
    fn submajorization_contraction_examples() {
        // Halved source block reproduces the target exactly.
        let t = form(&[(2, 1, 1, 2), (0, 1, 1, 2)]);
        let s = form(&[(1, 1, 1, 2), (0, 1, 1, 2)]);
        let (c, out) = submajorization_contraction(&t, &s).unwrap();
        assert_eq!(c.gains(), &[rat(1, 2), rat(0, 1)]);
        let vals: Vec<_> = out.values().cloned().collect();
        assert_eq!(vals, vec![rat(1, 1), rat(0, 1)]);

        // Identity on an identical positive pair.
        let (c, out) = submajorization_contraction(&t, &t).unwrap();
        assert_eq!(c.gains(), &[rat(1, 1), rat(1, 1)]);
        assert_eq!(out.eigenvalue_function(), t.eigenvalue_function());

        // Tall narrow source against a wide target; the contraction lives
        // on the refined grid (.25, .25, .5).
        let t = form(&[(4, 1, 1, 4), (0, 1, 3, 4)]);
        let s = form(&[(1, 1, 1, 2), (0, 1, 1, 2)]);
        let (c, out) = submajorization_contraction(&t, &s).unwrap();
        assert_eq!(c.gains(), &[rat(1, 2), rat(0, 1), rat(0, 1)]);
        let expected = form(&[(2, 1, 1, 4), (0, 1, 3, 4)]);
        assert_eq!(out.eigenvalue_function(), expected.eigenvalue_function());
        assert!(majorizes(&out.eigenvalue_function(), &s.eigenvalue_function()));
        assert_eq!(out.trace(), s.trace());

        // A constant source against a finer target: the cut happens on the
        // target's grid.
        let t = form(&[(11, 2, 1, 1)]);
        let s = form(&[(1, 4, 1, 2), (0, 1, 1, 2)]);
        let (c, out) = submajorization_contraction(&t, &s).unwrap();
        assert_eq!(c.gains(), &[rat(1, 22), rat(0, 1)]);
        assert!(majorizes(&out.eigenvalue_function(), &s.eigenvalue_function()));
        assert_eq!(out.eigenvalue_function(), s.eigenvalue_function());
    }

    #[test]
    fn compression_gains_examples() {
        let t = form(&[(4, 1, 1, 2), (2, 1, 1, 2)]);
        let s = form(&[(1, 1, 1, 2), (0, 1, 1, 2)]);
        let c = compression_for_dominance(&t, &s).unwrap();
        assert_eq!(c.gains(), &[rat(1, 4), rat(0, 1)]);
        assert_eq!(c.coefficients(), vec![0.5, 0.0]);
        let out = c.apply(&t.sorted_desc()).unwrap();
        assert_eq!(out.eigenvalue_function(), s.eigenvalue_function());

        let c = compression_for_dominance(&t, &t).unwrap();
        assert_eq!(c.gains(), &[rat(1, 1), rat(1, 1)]);

        let t1 = form(&[(9, 1, 1, 1)]);
        let s1 = form(&[(1, 1, 1, 1)]);
        let c = compression_for_dominance(&t1, &s1).unwrap();
        assert_eq!(c.coefficients(), vec![1.0 / 3.0]);

        assert!(matches!(
            compression_for_dominance(&s1, &t1),
            Err(Error::NotDominated(_))
        ));
    }

    #[test]
    fn submajorization_plan_composes() {
        let t = form(&[(2, 1, 1, 2), (0, 1, 1, 2)]);
        let s = form(&[(1, 1, 1, 2), (0, 1, 1, 2)]);
        let (c, steps) = submajorization_plan(&t, &s).unwrap();
        assert_eq!(c.gains(), &[rat(1, 2), rat(0, 1)]);
        assert!(steps.is_empty());

        let (c, steps) = submajorization_plan(&t, &t).unwrap();
        assert_eq!(c.gains(), &[rat(1, 1), rat(1, 1)]);
        assert!(steps.is_empty());

        let t = form(&[(4, 1, 1, 4), (0, 1, 3, 4)]);
        let s = form(&[(1, 1, 1, 2), (0, 1, 1, 2)]);
        let (_, mid) = submajorization_contraction(&t, &s).unwrap();
        let (c2, steps) = submajorization_plan(&t, &s).unwrap();
        assert_eq!(c2.gains().len(), mid.len());
        let (mid_aligned, s_aligned) = align(&mid, &s);
        let replay = apply_steps(&mid_aligned, &steps).unwrap();
        assert_eq!(replay.eigenvalue_function(), s_aligned.eigenvalue_function());
        assert_eq!(steps.len(), 1);
    }

    #[test]
    fn two_sided_membership_and_compression() {
        let a = diag(&[2.0, 0.0]);
        let b = diag(&[1.0, 1.0]);
        assert!(!two_sided_orbit_member(&a, &b).unwrap());
        assert!(two_sided_orbit_member(&a, &a).unwrap());

        let t = diag(&[2.0, 2.0]);
        let s = diag(&[1.0, 0.0]);
        let (big_a, big_b) = two_sided_compression(&t, &s).unwrap();
        let recon = &big_a * &t * &big_b;
        assert!(linalg::operator_norm(&(recon - &s)) <= 1e-10);
        assert!(linalg::operator_norm(&big_a) <= 1.0 + 1e-10);
        assert!(linalg::operator_norm(&big_b) <= 1.0 + 1e-10);

        let zero = CMatrix::zeros(2, 2);
        let (big_a, _big_b) = two_sided_compression(&t, &zero).unwrap();
        assert!(linalg::operator_norm(&big_a) <= 1e-12);

        // Identical invertible pair: the factors are unitary.
        let (big_a, big_b) = two_sided_compression(&t, &t).unwrap();
        assert!(linalg::unitarity_defect(&big_a) <= 1e-9);
        assert!(linalg::unitarity_defect(&big_b) <= 1e-9);
        let recon = &big_a * &t * &big_b;
        assert!(linalg::operator_norm(&(recon - &t)) <= 1e-10);
        // Identical singular pair: exact reconstruction, contraction only.
        let (big_a, big_b) = two_sided_compression(&s, &s).unwrap();
        let recon = &big_a * &s * &big_b;
        assert!(linalg::operator_norm(&(recon - &s)) <= 1e-10);
    }

    fn diag(d: &[f64]) -> CMatrix {
        let n = d.len();
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(d[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }
}
