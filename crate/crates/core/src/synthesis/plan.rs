//! Matrix-level realization of convex-hull membership: an explicit convex
//! combination of unitary conjugates of `T` reconstructing `S`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::majorize::majorizes_with_slack;
use crate::spectral::TracialHermitian;

/// Convex weights and unitaries certifying `S ∈ conv(U(T))`.
#[derive(Debug, Clone)]
pub struct MixingPlan {
    weights: Vec<f64>,
    unitaries: Vec<CMatrix>,
    base_dim: usize,
}

impl MixingPlan {
    pub fn new(weights: Vec<f64>, unitaries: Vec<CMatrix>, base_dim: usize) -> Result<Self> {
        if weights.is_empty() || weights.len() != unitaries.len() {
            return Err(Error::DimensionMismatch {
                left: weights.len(),
                right: unitaries.len(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| *w <= 0.0 || !w.is_finite()) {
            return Err(Error::NonpositiveWeight { index: 0 });
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::WeightSum { got: sum });
        }
        for u in &unitaries {
            if u.nrows() != base_dim || u.ncols() != base_dim {
                return Err(Error::NotSquare { rows: u.nrows(), cols: u.ncols() });
            }
            let defect = linalg::unitarity_defect(u);
            if defect > 1e-10 * base_dim as f64 {
                return Err(Error::OutOfRange("plan matrix is not unitary"));
            }
        }
        Ok(MixingPlan { weights, unitaries, base_dim })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn unitaries(&self) -> &[CMatrix] {
        &self.unitaries
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ t_k U_k* M U_k`.
    pub fn apply(&self, m: &CMatrix) -> Result<CMatrix> {
        if m.nrows() != self.base_dim || m.ncols() != self.base_dim {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let mut acc = CMatrix::zeros(self.base_dim, self.base_dim);
        for (w, u) in self.weights.iter().zip(&self.unitaries) {
            acc += (u.adjoint() * m * u).scale(*w);
        }
        Ok(acc)
    }
}

/// Elementary doubly stochastic moves `(i, j, c)` carrying the sorted vector
/// `lambda` onto `mu`: each move replaces coordinates `i, j` by the convex
/// mixture `c*id + (1-c)*swap`. At most `n - 1` moves are produced.
fn t_transform_chain(lambda: &[f64], mu: &[f64], tol: f64) -> Vec<(usize, usize, f64)> {
    let n = lambda.len();
    let mut lam = lambda.to_vec();
    let mut out = Vec::new();
    for _ in 0..n {
        let i = match (0..n).rev().find(|&k| lam[k] > mu[k] + tol) {
            Some(i) => i,
            None => break,
        };
        let j = match (i + 1..n).find(|&k| lam[k] + tol < mu[k]) {
            Some(j) => j,
            None => break,
        };
        let delta = (lam[i] - mu[i]).min(mu[j] - lam[j]);
        let c = 1.0 - delta / (lam[i] - lam[j]);
        lam[i] -= delta;
        lam[j] += delta;
        out.push((i, j, c));
    }
    out
}

fn compose(swap: (usize, usize), perm: &[usize]) -> Vec<usize> {
    perm.iter()
        .map(|&v| {
            if v == swap.0 {
                swap.1
            } else if v == swap.1 {
                swap.0
            } else {
                v
            }
        })
        .collect()
}

/// Expands a chain of elementary moves into a convex combination of
/// permutations, merging duplicates.
fn expand_to_permutations(n: usize, chain: &[(usize, usize, f64)]) -> Vec<(Vec<usize>, f64)> {
    let mut terms: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    terms.insert((0..n).collect(), 1.0);
    for &(i, j, c) in chain {
        let mut next: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (perm, w) in terms {
            if c > 0.0 {
                *next.entry(perm.clone()).or_insert(0.0) += w * c;
            }
            if c < 1.0 {
                *next.entry(compose((i, j), &perm)).or_insert(0.0) += w * (1.0 - c);
            }
        }
        terms = next;
    }
    let mut out: Vec<(Vec<usize>, f64)> = terms.into_iter().collect();
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite weight"));
    out
}

/// Builds a [`MixingPlan`] with `‖Σ t_k U_k* T U_k - S‖ <= eps` whenever the
/// eigenvalue profile of `S` is majorized by that of `T`.
///
/// Both matrices are diagonalized; a doubly stochastic matrix carrying the
/// sorted spectrum of `T` onto that of `S` is assembled from at most
/// `n - 1` elementary moves and expanded into permutations. Weights below
/// `eps / (4 n ‖T‖)` are pruned and the reconstruction bound is re-verified
/// afterwards, reverting to the unpruned plan if pruning spent too much of
/// the budget.
pub fn realize_mixing_plan(
    t: &TracialHermitian,
    s: &TracialHermitian,
    eps: f64,
) -> Result<MixingPlan> {
    if t.dim() != s.dim() {
        return Err(Error::DimensionMismatch { left: t.dim(), right: s.dim() });
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::OutOfRange("eps must be positive"));
    }
    let n = t.dim();
    let lt = t.eigenvalue_function();
    let ls = s.eigenvalue_function();
    if !majorizes_with_slack(&lt, &ls, &eps) {
        return Err(Error::NotMajorized("target spectrum is not majorized within eps"));
    }

    let (lambda, u_t) = linalg::hermitian_eigen_desc(t.matrix());
    let (mu, u_s) = linalg::hermitian_eigen_desc(s.matrix());
    let scale = lambda.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let chain_tol = (eps / (16.0 * (n as f64 + 1.0))).min(1e-12 * (1.0 + scale)).max(f64::MIN_POSITIVE);
    let chain = t_transform_chain(&lambda, &mu, chain_tol);
    let terms = expand_to_permutations(n, &chain);

    let norm_t = linalg::operator_norm(t.matrix());
    let threshold = if norm_t > 0.0 { eps / (4.0 * n as f64 * norm_t) } else { f64::INFINITY };
    let build = |terms: &[(Vec<usize>, f64)]| -> Result<MixingPlan> {
        let total: f64 = terms.iter().map(|(_, w)| w).sum();
        let mut weights = Vec::with_capacity(terms.len());
        let mut unitaries = Vec::with_capacity(terms.len());
        for (perm, w) in terms {
            let p = linalg::permutation_matrix(perm);
            weights.push(w / total);
            unitaries.push(&u_t * p.adjoint() * u_s.adjoint());
        }
        MixingPlan::new(weights, unitaries, n)
    };

    let kept: Vec<(Vec<usize>, f64)> =
        terms.iter().filter(|(_, w)| *w >= threshold).cloned().collect();
    let plan = if !kept.is_empty() && kept.len() < terms.len() {
        let pruned = build(&kept)?;
        let err = linalg::operator_norm(&(pruned.apply(t.matrix())? - s.matrix()));
        if err <= eps {
            return Ok(pruned);
        }
        build(&terms)?
    } else {
        build(&terms)?
    };
    let err = linalg::operator_norm(&(plan.apply(t.matrix())? - s.matrix()));
    if err > eps {
        return Err(Error::NotMajorized("reconstruction misses the eps bound"));
    }
    Ok(plan)
}
