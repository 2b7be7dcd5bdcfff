//! Non-increasing, right-continuous step functions on `[0, 1)`.
//!
//! A [`StepFunction`] is the concrete home of eigenvalue and singular value
//! profiles: it stores cumulative trace weights as breakpoints
//! `0 = s_0 < s_1 < ... < s_n = 1` and the block values
//! `v_1 >= v_2 >= ... >= v_n`, where `v_k` is the value on `[s_{k-1}, s_k)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction<S: Scalar> {
    breakpoints: Vec<S>,
    values: Vec<S>,
}

/// Two step functions re-expressed on the merged breakpoint grid.
#[derive(Debug, Clone)]
pub struct Refinement<S: Scalar> {
    pub breakpoints: Vec<S>,
    pub left_values: Vec<S>,
    pub right_values: Vec<S>,
}

impl<S: Scalar> Refinement<S> {
    pub fn n_blocks(&self) -> usize {
        self.left_values.len()
    }

    pub fn block_weight(&self, k: usize) -> S {
        self.breakpoints[k + 1].clone() - self.breakpoints[k].clone()
    }
}

/// Validates a breakpoint grid `0 = t_0 < t_1 < ... < t_m = 1`.
pub fn validate_grid<S: Scalar>(grid: &[S]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidBreakpoints("need at least two breakpoints".into()));
    }
    for b in grid {
        if !b.is_finite_value() {
            return Err(Error::NonFinite("breakpoint"));
        }
    }
    if !grid[0].approx_eq(&S::zero(), &S::grid_tol()) {
        return Err(Error::InvalidBreakpoints("first breakpoint must be 0".into()));
    }
    if !grid[grid.len() - 1].approx_eq(&S::one(), &S::grid_tol()) {
        return Err(Error::InvalidBreakpoints("last breakpoint must be 1".into()));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidBreakpoints("breakpoints must be strictly increasing".into()));
        }
    }
    Ok(())
}

impl<S: Scalar> StepFunction<S> {
    /// Builds a step function, checking all type invariants.
    pub fn new(mut breakpoints: Vec<S>, values: Vec<S>) -> Result<Self> {
        validate_grid(&breakpoints)?;
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidBreakpoints(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            )));
        }
        for v in &values {
            if !v.is_finite_value() {
                return Err(Error::NonFinite("value"));
            }
        }
        let tol = S::value_tol();
        for (index, w) in values.windows(2).enumerate() {
            if !w[1].le_slack(&w[0], &tol) {
                return Err(Error::ValuesNotSorted { index });
            }
        }
        // Snap the endpoints so downstream arithmetic sees exact 0 and 1.
        let last = breakpoints.len() - 1;
        breakpoints[0] = S::zero();
        breakpoints[last] = S::one();
        Ok(StepFunction { breakpoints, values })
    }

    pub fn constant(v: S) -> Self {
        StepFunction { breakpoints: vec![S::zero(), S::one()], values: vec![v] }
    }

    /// Builds from per-block values and positive block weights summing to 1.
    pub fn from_weighted_values(values: Vec<S>, weights: &[S]) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::DimensionMismatch { left: values.len(), right: weights.len() });
        }
        let mut breakpoints = Vec::with_capacity(weights.len() + 1);
        let mut acc = S::zero();
        breakpoints.push(acc.clone());
        for (index, w) in weights.iter().enumerate() {
            if !w.is_finite_value() || *w <= S::zero() {
                return Err(Error::NonpositiveWeight { index });
            }
            acc = acc + w.clone();
            breakpoints.push(acc.clone());
        }
        StepFunction::new(breakpoints, values)
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn n_blocks(&self) -> usize {
        self.values.len()
    }

    pub fn block_weight(&self, k: usize) -> S {
        self.breakpoints[k + 1].clone() - self.breakpoints[k].clone()
    }

    /// Value at `s` for `s` in `[0, 1)`; right continuity picks the block
    /// `[s_{k-1}, s_k)` containing `s`.
    pub fn value_at(&self, s: &S) -> Result<S> {
        if *s < S::zero() || *s >= S::one() {
            return Err(Error::OutOfRange("evaluation point must lie in [0, 1)"));
        }
        // Last breakpoint strictly greater than s starts the next block.
        let mut k = 0;
        while k + 1 < self.values.len() && self.breakpoints[k + 1] <= *s {
            k += 1;
        }
        Ok(self.values[k].clone())
    }

    /// Largest value (the right limit at 0).
    pub fn top_value(&self) -> &S {
        &self.values[0]
    }

    /// Smallest value (the left limit at 1, where the function itself is
    /// defined only on `[0, 1)`).
    pub fn bottom_value(&self) -> &S {
        &self.values[self.values.len() - 1]
    }

    pub fn sup_norm(&self) -> S {
        S::max_of(self.top_value().abs(), self.bottom_value().abs())
    }

    /// `∫_0^t f(s) ds`, exact as a finite sum of rectangle areas.
    pub fn partial_integral(&self, t: &S) -> Result<S> {
        if *t < S::zero() || *t > S::one() {
            return Err(Error::OutOfRange("integration endpoint must lie in [0, 1]"));
        }
        let mut acc = S::zero();
        for (k, v) in self.values.iter().enumerate() {
            let lo = &self.breakpoints[k];
            let hi = &self.breakpoints[k + 1];
            if *t <= *lo {
                break;
            }
            let upper = if *t < *hi { t.clone() } else { hi.clone() };
            acc = acc + v.clone() * (upper - lo.clone());
        }
        Ok(acc)
    }

    /// `∫_0^1 f(s) ds` — the trace of the element the profile describes.
    pub fn total_integral(&self) -> S {
        let mut acc = S::zero();
        for (k, v) in self.values.iter().enumerate() {
            acc = acc + v.clone() * self.block_weight(k);
        }
        acc
    }

    /// Prefix integrals at every own breakpoint (`n + 1` entries, first 0).
    pub fn prefix_integrals(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(self.breakpoints.len());
        let mut acc = S::zero();
        out.push(acc.clone());
        for (k, v) in self.values.iter().enumerate() {
            acc = acc + v.clone() * self.block_weight(k);
            out.push(acc.clone());
        }
        out
    }

    /// Replaces the function on each grid block by its mean value there.
    ///
    /// The result is again non-increasing and is majorized by `self`; its
    /// partial integrals agree with `self`'s at every grid point.
    pub fn block_average(&self, grid: &[S]) -> Result<Self> {
        validate_grid(grid)?;
        let mut values = Vec::with_capacity(grid.len() - 1);
        let mut prev = self.partial_integral(&grid[0])?;
        for w in grid.windows(2) {
            let next = self.partial_integral(&w[1])?;
            let width = w[1].clone() - w[0].clone();
            values.push((next.clone() - prev) / width);
            prev = next;
        }
        StepFunction::new(grid.to_vec(), values)
    }

    /// Pointwise shift `f + alpha`.
    pub fn shifted(&self, alpha: &S) -> Self {
        let values = self.values.iter().map(|v| v.clone() + alpha.clone()).collect();
        StepFunction { breakpoints: self.breakpoints.clone(), values }
    }

    /// Pointwise scaling `alpha * f` for `alpha >= 0`.
    pub fn scaled(&self, alpha: &S) -> Result<Self> {
        if *alpha < S::zero() {
            return Err(Error::OutOfRange("scaling factor must be nonnegative"));
        }
        let values = self.values.iter().map(|v| v.clone() * alpha.clone()).collect();
        Ok(StepFunction { breakpoints: self.breakpoints.clone(), values })
    }

    /// Merges adjacent blocks with equal values (exactly in rational mode,
    /// within the value tolerance in float mode).
    pub fn simplified(&self) -> Self {
        let tol = S::value_tol();
        let mut breakpoints = vec![self.breakpoints[0].clone()];
        let mut values: Vec<S> = Vec::new();
        for (k, v) in self.values.iter().enumerate() {
            match values.last() {
                Some(last) if last.approx_eq(v, &tol) => {
                    let end = breakpoints.len() - 1;
                    breakpoints[end] = self.breakpoints[k + 1].clone();
                }
                _ => {
                    values.push(v.clone());
                    breakpoints.push(self.breakpoints[k + 1].clone());
                }
            }
        }
        StepFunction { breakpoints, values }
    }
}

/// Sorts `(value, weight)` pairs into a non-increasing step function,
/// merging equal adjacent values and accumulating weights into breakpoints.
pub fn rearrange<S: Scalar>(pairs: &[(S, S)]) -> Result<StepFunction<S>> {
    if pairs.is_empty() {
        return Err(Error::InvalidBreakpoints("no pairs given".into()));
    }
    let mut sum = S::zero();
    for (index, (v, w)) in pairs.iter().enumerate() {
        if !v.is_finite_value() || !w.is_finite_value() {
            return Err(Error::NonFinite("pair entry"));
        }
        if *w <= S::zero() {
            return Err(Error::NonpositiveWeight { index });
        }
        sum = sum + w.clone();
    }
    if !sum.approx_eq(&S::one(), &S::grid_tol()) {
        return Err(Error::WeightSum { got: sum.to_f64() });
    }

    let mut sorted: Vec<(S, S)> = pairs.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));

    let tol = S::value_tol();
    let mut values: Vec<S> = Vec::new();
    let mut weights: Vec<S> = Vec::new();
    for (v, w) in sorted {
        match values.last() {
            Some(last) if last.approx_eq(&v, &tol) => {
                let end = weights.len() - 1;
                weights[end] = weights[end].clone() + w;
            }
            _ => {
                values.push(v);
                weights.push(w);
            }
        }
    }

    let mut breakpoints = Vec::with_capacity(weights.len() + 1);
    let mut acc = S::zero();
    breakpoints.push(acc.clone());
    for w in &weights {
        acc = acc + w.clone();
        breakpoints.push(acc.clone());
    }
    StepFunction::new(breakpoints, values)
}

/// Re-expresses `f` and `g` on the common refinement of their breakpoints.
pub fn common_refinement<S: Scalar>(
    f: &StepFunction<S>,
    g: &StepFunction<S>,
) -> Refinement<S> {
    let tol = S::grid_tol();
    let fb = f.breakpoints();
    let gb = g.breakpoints();
    let mut breakpoints = vec![S::zero()];
    let mut left_values = Vec::new();
    let mut right_values = Vec::new();
    // Indices of the next unconsumed breakpoint on each side.
    let mut i = 1;
    let mut j = 1;
    while i < fb.len() || j < gb.len() {
        // The merged block about to close sits inside f's block i-1 and
        // g's block j-1.
        left_values.push(f.values()[(i - 1).min(f.n_blocks() - 1)].clone());
        right_values.push(g.values()[(j - 1).min(g.n_blocks() - 1)].clone());
        let next = if i == fb.len() {
            let b = gb[j].clone();
            j += 1;
            b
        } else if j == gb.len() {
            let b = fb[i].clone();
            i += 1;
            b
        } else if fb[i].approx_eq(&gb[j], &tol) {
            let b = fb[i].clone();
            i += 1;
            j += 1;
            b
        } else if fb[i] < gb[j] {
            let b = fb[i].clone();
            i += 1;
            b
        } else {
            let b = gb[j].clone();
            j += 1;
            b
        };
        breakpoints.push(next);
    }
    // The block that ends at `next` is the one we just left behind.
    let m = breakpoints.len() - 1;
    breakpoints[m] = S::one();
    Refinement { breakpoints, left_values, right_values }
}

/// `sup |f - g|` over `[0, 1)`, computed exactly on the common refinement.
pub fn sup_distance<S: Scalar>(f: &StepFunction<S>, g: &StepFunction<S>) -> S {
    let r = common_refinement(f, g);
    let mut best = S::zero();
    for (a, b) in r.left_values.iter().zip(&r.right_values) {
        best = S::max_of(best, (a.clone() - b.clone()).abs());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn halves64(a: f64, b: f64) -> StepFunction<f64> {
        StepFunction::from_weighted_values(vec![a, b], &[0.5, 0.5]).unwrap()
    }

    #[test]
    fn partial_integral_constant() {
        let f = StepFunction::constant(1.0);
        assert_eq!(f.partial_integral(&0.5).unwrap(), 0.5);
    }

    #[test]
    fn partial_integral_total_matches_trace() {
        let f = StepFunction::from_weighted_values(
            vec![rat(3, 1), rat(2, 1), rat(1, 1)],
            &[rat(1, 3), rat(1, 3), rat(1, 3)],
        )
        .unwrap();
        assert_eq!(f.partial_integral(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(f.total_integral(), rat(2, 1));
    }

    #[test]
    fn partial_integral_inside_block() {
        let f = halves64(1.0, 0.0);
        assert_eq!(f.partial_integral(&0.75).unwrap(), 0.5);
    }

    #[test]
    fn partial_integral_rejects_out_of_range() {
        let f = StepFunction::constant(1.0);
        assert!(f.partial_integral(&1.5).is_err());
        assert!(f.partial_integral(&-0.1).is_err());
    }

    #[test]
    fn rearrange_sorts_and_merges() {
        let f = rearrange(&[(rat(1, 1), rat(1, 2)), (rat(3, 1), rat(1, 4)), (rat(3, 1), rat(1, 4))])
            .unwrap();
        assert_eq!(f.values(), &[rat(3, 1), rat(1, 1)]);
        assert_eq!(f.breakpoints(), &[rat(0, 1), rat(1, 2), rat(1, 1)]);
    }

    #[test]
    fn rearrange_singleton() {
        let f = rearrange(&[(2.0, 1.0)]).unwrap();
        assert_eq!(f.values(), &[2.0]);
    }

    #[test]
    fn rearrange_rejects_bad_weights() {
        assert!(matches!(
            rearrange(&[(1.0, -0.5), (2.0, 1.5)]),
            Err(Error::NonpositiveWeight { index: 0 })
        ));
        assert!(matches!(rearrange(&[(1.0, 0.5), (2.0, 0.2)]), Err(Error::WeightSum { .. })));
    }

    #[test]
    fn block_average_to_trace() {
        let f = halves64(1.0, 0.0);
        let g = f.block_average(&[0.0, 1.0]).unwrap();
        assert_eq!(g.values(), &[0.5]);
    }

    #[test]
    fn block_average_idempotent_on_own_grid() {
        let f = StepFunction::from_weighted_values(
            vec![rat(4, 1), rat(2, 1), rat(0, 1)],
            &[rat(1, 3), rat(1, 3), rat(1, 3)],
        )
        .unwrap();
        let g = f.block_average(f.breakpoints()).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn block_average_thirds_to_two_blocks() {
        let f = StepFunction::from_weighted_values(
            vec![rat(4, 1), rat(2, 1), rat(0, 1)],
            &[rat(1, 3), rat(1, 3), rat(1, 3)],
        )
        .unwrap();
        let g = f.block_average(&[rat(0, 1), rat(2, 3), rat(1, 1)]).unwrap();
        assert_eq!(g.values(), &[rat(3, 1), rat(0, 1)]);
    }

    #[test]
    fn sup_distance_examples() {
        let f = halves64(1.0, 0.0);
        assert_eq!(sup_distance(&f, &f), 0.0);
        assert_eq!(sup_distance(&f, &StepFunction::constant(0.0)), 1.0);
        let a = halves64(3.0, 2.0);
        let b = halves64(1.0, 0.0);
        assert_eq!(sup_distance(&a, &b), 2.0);
    }

    #[test]
    fn refinement_tracks_blocks() {
        let f = halves64(1.0, 0.0);
        let g = StepFunction::from_weighted_values(vec![2.0, 1.0, 0.0], &[0.25, 0.5, 0.25]).unwrap();
        let r = common_refinement(&f, &g);
        assert_eq!(r.breakpoints, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(r.left_values, vec![1.0, 1.0, 0.0, 0.0]);
        assert_eq!(r.right_values, vec![2.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn value_at_is_right_continuous() {
        let f = halves64(1.0, 0.0);
        assert_eq!(f.value_at(&0.5).unwrap(), 0.0);
        assert_eq!(f.value_at(&0.0).unwrap(), 1.0);
        assert!(f.value_at(&1.0).is_err());
    }

    #[test]
    fn rejects_increasing_values() {
        assert!(matches!(
            StepFunction::from_weighted_values(vec![0.0, 1.0], &[0.5, 0.5]),
            Err(Error::ValuesNotSorted { .. })
        ));
    }
}
