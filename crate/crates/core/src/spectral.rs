//! Spectral data: finite `(value, weight)` forms, tracial Hermitian
//! matrices, and spectrum sets.
//!
//! A [`SpectralForm`] models a self-adjoint element with finite spectrum
//! together with the traces of its spectral projections; weights are the
//! traces and sum to 1. A [`TracialHermitian`] is the concrete matrix model
//! with the normalized trace.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::scalar::Scalar;
use crate::stepfn::{self, StepFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralForm<S: Scalar> {
    entries: Vec<(S, S)>,
}

impl<S: Scalar> SpectralForm<S> {
    /// Checks weights positive and summing to 1; values need not be sorted
    /// or distinct.
    pub fn new(entries: Vec<(S, S)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidBreakpoints("spectral form needs at least one entry".into()));
        }
        let mut sum = S::zero();
        for (index, (v, w)) in entries.iter().enumerate() {
            if !v.is_finite_value() || !w.is_finite_value() {
                return Err(Error::NonFinite("spectral form entry"));
            }
            if *w <= S::zero() {
                return Err(Error::NonpositiveWeight { index });
            }
            sum = sum + w.clone();
        }
        if !sum.approx_eq(&S::one(), &S::grid_tol()) {
            return Err(Error::WeightSum { got: sum.to_f64() });
        }
        Ok(SpectralForm { entries })
    }

    /// Uniform weights `1/n` on the given values.
    pub fn uniform(values: Vec<S>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidBreakpoints("spectral form needs at least one entry".into()));
        }
        let w = S::one() / S::from_int(n as i64);
        Ok(SpectralForm { entries: values.into_iter().map(|v| (v, w.clone())).collect() })
    }

    pub fn entries(&self) -> &[(S, S)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|(v, _)| v)
    }

    pub fn weights(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|(_, w)| w)
    }

    /// `Σ w_k v_k` — the trace.
    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for (v, w) in &self.entries {
            acc = acc + v.clone() * w.clone();
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        let tol = S::value_tol();
        self.entries.iter().all(|(v, _)| *v >= S::zero() - tol.clone())
    }

    /// Entries sorted by value, descending, without merging.
    pub fn sorted_desc(&self) -> SpectralForm<S> {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| b.0.total_cmp(&a.0));
        SpectralForm { entries }
    }

    /// The eigenvalue function: the non-increasing rearrangement of the
    /// entries against cumulative weights.
    pub fn eigenvalue_function(&self) -> StepFunction<S> {
        stepfn::rearrange(&self.entries).expect("validated spectral form rearranges")
    }

    /// The singular value function: rearrangement of `|v_k|`.
    pub fn singular_value_function(&self) -> StepFunction<S> {
        let abs: Vec<(S, S)> =
            self.entries.iter().map(|(v, w)| (v.abs(), w.clone())).collect();
        stepfn::rearrange(&abs).expect("validated spectral form rearranges")
    }

    /// Total weight of the strictly positive part of the spectrum.
    ///
    /// Requires all values nonnegative; at finite spectrum this is the limit
    /// defining the dimension function.
    pub fn dimension_function(&self) -> Result<S> {
        let tol = S::value_tol();
        let mut acc = S::zero();
        for (v, w) in &self.entries {
            if *v < S::zero() - tol.clone() {
                return Err(Error::NegativeValue("dimension function needs a positive element"));
            }
            if *v > tol {
                acc = acc + w.clone();
            }
        }
        Ok(acc)
    }

    /// Applies a scalar function blockwise, keeping weights.
    pub fn map_values<F: Fn(&S) -> S>(&self, f: F) -> SpectralForm<S> {
        SpectralForm { entries: self.entries.iter().map(|(v, w)| (f(v), w.clone())).collect() }
    }
}

/// Rewrites `a` and `b` on the common refinement of their cumulative weight
/// grids, so both outputs carry the identical weight sequence and
/// non-increasing values. Eigenvalue functions are preserved exactly.
///
/// On exact weight ties both sides advance together, which makes the output
/// deterministic and no longer than `a.len() + b.len() - 1`.
pub fn align<S: Scalar>(
    a: &SpectralForm<S>,
    b: &SpectralForm<S>,
) -> (SpectralForm<S>, SpectralForm<S>) {
    let sa = a.sorted_desc();
    let sb = b.sorted_desc();
    let tol = S::grid_tol();
    let mut out_a = Vec::new();
    let mut out_b = Vec::new();
    let mut i = 0;
    let mut j = 0;
    let mut rem_a = sa.entries[0].1.clone();
    let mut rem_b = sb.entries[0].1.clone();
    while i < sa.entries.len() && j < sb.entries.len() {
        let tie = rem_a.approx_eq(&rem_b, &tol);
        let adv_a = tie || rem_a <= rem_b;
        let adv_b = tie || rem_b <= rem_a;
        let take = if adv_a { rem_a.clone() } else { rem_b.clone() };
        out_a.push((sa.entries[i].0.clone(), take.clone()));
        out_b.push((sb.entries[j].0.clone(), take.clone()));
        if adv_a {
            i += 1;
            if i < sa.entries.len() {
                rem_a = sa.entries[i].1.clone();
            }
        } else {
            rem_a = rem_a - take.clone();
        }
        if adv_b {
            j += 1;
            if j < sb.entries.len() {
                rem_b = sb.entries[j].1.clone();
            }
        } else {
            rem_b = rem_b - take.clone();
        }
    }
    // Float drift can leave a sliver on one side; fold it into the last
    // block so both outputs keep total weight 1. Never happens in exact mode.
    if i < sa.entries.len() {
        let mut extra = rem_a;
        for k in i + 1..sa.entries.len() {
            extra = extra + sa.entries[k].1.clone();
        }
        let last = out_a.len() - 1;
        out_a[last].1 = out_a[last].1.clone() + extra;
    }
    if j < sb.entries.len() {
        let mut extra = rem_b;
        for k in j + 1..sb.entries.len() {
            extra = extra + sb.entries[k].1.clone();
        }
        let last = out_b.len() - 1;
        out_b[last].1 = out_b[last].1.clone() + extra;
    }
    (SpectralForm { entries: out_a }, SpectralForm { entries: out_b })
}

/// Discretizes a step function over a grid: block means with block widths
/// as weights. The eigenvalue function of the result equals
/// `f.block_average(grid)`, and the result is majorized by `f`.
pub fn discretize<S: Scalar>(f: &StepFunction<S>, grid: &[S]) -> Result<SpectralForm<S>> {
    let averaged = f.block_average(grid)?;
    let entries = averaged
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| (v.clone(), averaged.block_weight(k)))
        .collect();
    Ok(SpectralForm { entries })
}

/// Dense Hermitian matrix carrying the normalized trace `(1/n) Tr`.
#[derive(Debug, Clone)]
pub struct TracialHermitian {
    matrix: CMatrix,
}

impl TracialHermitian {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        for z in matrix.iter() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite("matrix entry"));
            }
        }
        let deviation = linalg::hermitian_deviation(&matrix);
        let scale = 1.0 + linalg::max_abs(&matrix);
        if deviation > crate::scalar::TOL_NUM * scale {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(TracialHermitian { matrix })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let matrix = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        TracialHermitian { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn normalized_trace(&self) -> f64 {
        let tr: C64 = self.matrix.diagonal().iter().sum();
        tr.re / self.dim() as f64
    }

    /// Eigenvalues with multiplicity, each with weight `1/n`.
    pub fn spectral_form(&self) -> SpectralForm<f64> {
        SpectralForm::uniform(linalg::eigenvalues_desc(&self.matrix))
            .expect("matrix has at least one eigenvalue")
    }

    pub fn eigenvalue_function(&self) -> StepFunction<f64> {
        self.spectral_form().eigenvalue_function()
    }

    pub fn singular_value_function(&self) -> StepFunction<f64> {
        SpectralForm::uniform(linalg::singular_values_desc(&self.matrix))
            .expect("matrix has at least one singular value")
            .eigenvalue_function()
    }
}

/// Singular value function of an arbitrary square complex matrix.
pub fn matrix_singular_value_function(m: &CMatrix) -> Result<StepFunction<f64>> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(SpectralForm::uniform(linalg::singular_values_desc(m))
        .expect("matrix has at least one singular value")
        .eigenvalue_function())
}

/// Finite set of spectrum points in the complex plane.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    points: Vec<C64>,
}

impl SpectrumSet {
    /// Deduplicates points within tolerance; rejects empty sets.
    pub fn new(points: Vec<C64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let scale = points.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
        let tol = crate::scalar::TOL_GRID * (1.0 + scale);
        let mut dedup: Vec<C64> = Vec::new();
        for p in points {
            if !p.re.is_finite() || !p.im.is_finite() {
                return Err(Error::NonFinite("spectrum point"));
            }
            if !dedup.iter().any(|q| (p - q).norm() <= tol) {
                dedup.push(p);
            }
        }
        Ok(SpectrumSet { points: dedup })
    }

    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        SpectrumSet::new(xs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    /// Real parts, provided every point is (numerically) real.
    pub fn real_points(&self) -> Result<Vec<f64>> {
        let scale = self.points.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
        let tol = crate::scalar::TOL_NUM * (1.0 + scale);
        if self.points.iter().any(|z| z.im.abs() > tol) {
            return Err(Error::NotRealSpectrum("point with nonzero imaginary part"));
        }
        Ok(self.points.iter().map(|z| z.re).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepfn::sup_distance;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn eigenvalue_function_of_diagonal() {
        let t = TracialHermitian::from_diagonal(&[3.0, 1.0, 2.0]);
        let f = t.eigenvalue_function();
        assert_eq!(f.values(), &[3.0, 2.0, 1.0]);
        assert_eq!(f.breakpoints()[1], 1.0 / 3.0);
    }

    #[test]
    fn eigenvalue_function_of_identity_is_constant_one() {
        let t = TracialHermitian::new(CMatrix::identity(5, 5)).unwrap();
        let f = t.eigenvalue_function();
        assert_eq!(f.values(), &[1.0]);
    }

    #[test]
    fn eigenvalue_function_of_form() {
        let form = SpectralForm::new(vec![(5.0, 0.2), (0.0, 0.8)]).unwrap();
        let f = form.eigenvalue_function();
        assert_eq!(f.values(), &[5.0, 0.0]);
        assert_eq!(f.breakpoints(), &[0.0, 0.2, 1.0]);
    }

    #[test]
    fn singular_value_function_of_signed_diagonal() {
        let t = TracialHermitian::from_diagonal(&[-3.0, 1.0]);
        let f = t.singular_value_function();
        assert_eq!(f.values(), &[3.0, 1.0]);
    }

    #[test]
    fn singular_value_function_of_unitary_is_one() {
        // A rotation by 30 degrees.
        let (s, c) = (0.5_f64, 3.0_f64.sqrt() / 2.0);
        let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => C64::new(c, 0.0),
            (0, 1) => C64::new(-s, 0.0),
            (1, 0) => C64::new(s, 0.0),
            _ => C64::new(c, 0.0),
        });
        let f = matrix_singular_value_function(&m).unwrap();
        assert!(sup_distance(&f, &StepFunction::constant(1.0)) < 1e-12);
    }

    #[test]
    fn singular_value_function_of_nilpotent() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let f = matrix_singular_value_function(&m).unwrap();
        assert_eq!(f.values().len(), 2);
        assert!((f.values()[0] - 1.0).abs() < 1e-12);
        assert!(f.values()[1].abs() < 1e-12);
    }

    #[test]
    fn non_square_rejected() {
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(matrix_singular_value_function(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(TracialHermitian::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn dimension_function_examples() {
        let a = SpectralForm::new(vec![(rat(2, 1), rat(3, 10)), (rat(0, 1), rat(7, 10))]).unwrap();
        assert_eq!(a.dimension_function().unwrap(), rat(3, 10));
        let b = SpectralForm::new(vec![(rat(0, 1), rat(1, 1))]).unwrap();
        assert_eq!(b.dimension_function().unwrap(), rat(0, 1));
        let c = SpectralForm::new(vec![(rat(1, 1), rat(1, 2)), (rat(3, 1), rat(1, 2))]).unwrap();
        assert_eq!(c.dimension_function().unwrap(), rat(1, 1));
        let d = SpectralForm::new(vec![(rat(-1, 1), rat(1, 2)), (rat(3, 1), rat(1, 2))]).unwrap();
        assert!(d.dimension_function().is_err());
    }

    #[test]
    fn align_refines_weight_grids() {
        let a = SpectralForm::new(vec![(rat(1, 1), rat(1, 2)), (rat(0, 1), rat(1, 2))]).unwrap();
        let b = SpectralForm::new(vec![(rat(2, 1), rat(1, 4)), (rat(1, 1), rat(3, 4))]).unwrap();
        let (aa, bb) = align(&a, &b);
        let weights: Vec<_> = aa.weights().cloned().collect();
        assert_eq!(weights, vec![rat(1, 4), rat(1, 4), rat(1, 2)]);
        let a_vals: Vec<_> = aa.values().cloned().collect();
        let b_vals: Vec<_> = bb.values().cloned().collect();
        assert_eq!(a_vals, vec![rat(1, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(b_vals, vec![rat(2, 1), rat(1, 1), rat(1, 1)]);
        assert!(aa.len() < a.len() + b.len());
    }

    #[test]
    fn align_identical_grids_is_sorting() {
        let a = SpectralForm::new(vec![(rat(0, 1), rat(1, 2)), (rat(5, 1), rat(1, 2))]).unwrap();
        let b = SpectralForm::new(vec![(rat(1, 1), rat(1, 2)), (rat(2, 1), rat(1, 2))]).unwrap();
        let (aa, bb) = align(&a, &b);
        assert_eq!(aa, a.sorted_desc());
        assert_eq!(bb, b.sorted_desc());
    }

    #[test]
    fn align_singleton_splits() {
        let a = SpectralForm::new(vec![(rat(1, 1), rat(1, 1))]).unwrap();
        let b = SpectralForm::new(vec![(rat(0, 1), rat(3, 10)), (rat(2, 1), rat(7, 10))]).unwrap();
        let (aa, bb) = align(&a, &b);
        let weights: Vec<_> = aa.weights().cloned().collect();
        assert_eq!(weights, vec![rat(7, 10), rat(3, 10)]);
        let a_vals: Vec<_> = aa.values().cloned().collect();
        assert_eq!(a_vals, vec![rat(1, 1), rat(1, 1)]);
        let b_vals: Vec<_> = bb.values().cloned().collect();
        assert_eq!(b_vals, vec![rat(2, 1), rat(0, 1)]);
    }

    #[test]
    fn align_preserves_eigenvalue_functions() {
        let a = SpectralForm::new(vec![(rat(1, 1), rat(1, 3)), (rat(4, 1), rat(2, 3))]).unwrap();
        let b = SpectralForm::new(vec![(rat(2, 1), rat(1, 5)), (rat(0, 1), rat(4, 5))]).unwrap();
        let (aa, bb) = align(&a, &b);
        assert_eq!(aa.eigenvalue_function(), a.eigenvalue_function());
        assert_eq!(bb.eigenvalue_function(), b.eigenvalue_function());
    }

    #[test]
    fn discretize_examples() {
        let f = StepFunction::from_weighted_values(vec![rat(1, 1), rat(0, 1)], &[rat(1, 2), rat(1, 2)])
            .unwrap();
        let form = discretize(&f, &[rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(form.entries(), &[(rat(1, 2), rat(1, 1))]);

        let g = StepFunction::from_weighted_values(
            vec![rat(6, 1), rat(3, 1), rat(0, 1)],
            &[rat(1, 3), rat(1, 3), rat(1, 3)],
        )
        .unwrap();
        let form = discretize(&g, &[rat(0, 1), rat(1, 3), rat(1, 1)]).unwrap();
        assert_eq!(form.entries(), &[(rat(6, 1), rat(1, 3)), (rat(3, 2), rat(2, 3))]);
        // Idempotence on the function's own grid.
        let form = discretize(&g, g.breakpoints()).unwrap();
        let values: Vec<_> = form.values().cloned().collect();
        assert_eq!(values, vec![rat(6, 1), rat(3, 1), rat(0, 1)]);
    }

    #[test]
    fn spectrum_set_dedups_and_rejects_empty() {
        let s = SpectrumSet::from_reals(&[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.points().len(), 2);
        assert!(matches!(SpectrumSet::new(vec![]), Err(Error::EmptySpectrum)));
    }
}
