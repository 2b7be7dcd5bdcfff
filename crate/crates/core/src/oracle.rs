//! Independent brute-force references and deterministic test-data
//! generators. These never share code paths with the routines they audit:
//! the matching distance enumerates permutations, and the hull-distance
//! search bisects over a constructive feasibility test on a uniform grid.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::scalar::Scalar;
use crate::spectral::{SpectralForm, TracialHermitian};
use crate::stepfn::StepFunction;
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact optimal matching distance: the minimum over all permutations of
/// the largest eigenvalue mismatch. Refuses `n > 8`, the documented trusted
/// envelope of the enumeration.
pub fn permutation_matching_distance<S: Scalar>(evals_t: &[S], evals_s: &[S]) -> Result<S> {
    if evals_t.len() != evals_s.len() {
        return Err(Error::DimensionMismatch { left: evals_t.len(), right: evals_s.len() });
    }
    let n = evals_t.len();
    if n == 0 {
        return Err(Error::EmptySpectrum);
    }
    if n > 8 {
        return Err(Error::OracleScale("matching oracle enumerates at most 8! permutations"));
    }
    let mut best: Option<S> = None;
    for perm in (0..n).permutations(n) {
        let mut worst = S::zero();
        for (k, &p) in perm.iter().enumerate() {
            worst = S::max_of(worst, (evals_t[k].clone() - evals_s[p].clone()).abs());
        }
        best = Some(match best {
            Some(b) => S::min_of(b, worst),
            None => worst,
        });
    }
    Ok(best.expect("at least one permutation"))
}

/// Feasibility of a witness at distance `alpha` on a uniform grid: is there
/// a non-increasing `h` within `alpha` of `s` and majorized by `t`? Checked
/// by an explicit window-by-window greedy, written independently of the
/// closed-form distance.
fn grid_feasible<S: Scalar>(t_avg: &[S], s_avg: &[S], alpha: &S) -> bool {
    let m = t_avg.len();
    let w = S::one() / S::from_int(m as i64);
    // Prefix masses of the budget and of the lower band.
    let mut g = Vec::with_capacity(m + 1);
    let mut l = Vec::with_capacity(m + 1);
    g.push(S::zero());
    l.push(S::zero());
    for k in 0..m {
        g.push(g[k].clone() + t_avg[k].clone() * w.clone());
        l.push(l[k].clone() + (s_avg[k].clone() - alpha.clone()) * w.clone());
    }
    let slack = {
        let scale = t_avg
            .iter()
            .chain(s_avg.iter())
            .fold(S::zero(), |acc, x| S::max_of(acc, x.abs()));
        S::slack(&scale)
    };

    let mut h_prefix = S::zero();
    let mut prev: Option<S> = None;
    for k in 0..m {
        let upper = s_avg[k].clone() + alpha.clone();
        // Every window k..i reserves room for the lower band on (k, i].
        let mut cap: Option<S> = None;
        for i in k..m {
            let window = g[i + 1].clone() - (l[i + 1].clone() - l[k + 1].clone()) - h_prefix.clone();
            cap = Some(match cap {
                Some(c) => S::min_of(c, window),
                None => window,
            });
        }
        let mut v = S::min_of(upper, cap.expect("nonempty window") / w.clone());
        if let Some(p) = &prev {
            v = S::min_of(v, p.clone());
        }
        if v.clone() + slack.clone() < s_avg[k].clone() - alpha.clone() {
            return false;
        }
        h_prefix = h_prefix + v.clone() * w.clone();
        prev = Some(v);
    }
    (g[m].clone() - h_prefix).abs() <= slack
}

/// Audit oracle for the hull distance: block-averages both profiles onto a
/// uniform grid and bisects on the candidate distance, testing feasibility
/// constructively. The grid is capped at 256 blocks.
pub fn hull_distance_search<S: Scalar>(
    t: &StepFunction<S>,
    s: &StepFunction<S>,
    grid_blocks: usize,
) -> Result<S> {
    if grid_blocks == 0 || grid_blocks > 256 {
        return Err(Error::OracleScale("search grid is capped at 256 blocks"));
    }
    let m = grid_blocks as i64;
    let grid: Vec<S> = (0..=m).map(|k| S::from_ratio(k, m)).collect();
    let t_avg = t.block_average(&grid)?.values().to_vec();
    let s_avg = s.block_average(&grid)?.values().to_vec();

    let mut hi = t_avg
        .iter()
        .zip(&s_avg)
        .fold(S::zero(), |acc, (a, b)| S::max_of(acc, (a.clone() - b.clone()).abs()));
    if grid_feasible(&t_avg, &s_avg, &S::zero()) {
        return Ok(S::zero());
    }
    let mut lo = S::zero();
    let precision = {
        let scale = hi.clone() + S::one();
        S::from_f64(1e-12) * scale
    };
    let mut rounds = 0;
    while hi.clone() - lo.clone() > precision && rounds < 100 {
        let mid = (hi.clone() + lo.clone()) / S::from_int(2);
        if grid_feasible(&t_avg, &s_avg, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        rounds += 1;
    }
    Ok(hi)
}

/// Deterministic majorized pair: `t` gets `n` uniform-weight atoms with
/// quarter-integer values; `s` block-averages `t` over a random coarser
/// grid, which guarantees majorization. Weights are multiples of `1/n`, so
/// both forms are realizable as diagonal matrices of dimension `n`.
pub fn random_majorized_pair<S: Scalar>(n: usize, seed: u64) -> (SpectralForm<S>, SpectralForm<S>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_uniform_form(n, &mut rng);
    let fun = t.eigenvalue_function();
    let mut grid: Vec<S> = vec![S::zero()];
    for k in 1..n {
        if rng.gen_bool(0.5) {
            grid.push(S::from_ratio(k as i64, n as i64));
        }
    }
    grid.push(S::one());
    let s = crate::spectral::discretize(&fun, &grid).expect("uniform subgrid is valid");
    (t, s)
}

fn random_uniform_form<S: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> SpectralForm<S> {
    let mut values: Vec<i64> = (0..n).map(|_| rng.gen_range(-12..=12)).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    SpectralForm::uniform(values.into_iter().map(|v| S::from_ratio(v, 4)).collect())
        .expect("nonempty uniform form")
}

/// Random form with rational weights `g_k / Σ g` and quarter-integer
/// values; not majorized against anything in particular.
pub fn random_form<S: Scalar>(n: usize, seed: u64) -> SpectralForm<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_form_with(n, &mut rng)
}

pub fn random_form_with<S: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> SpectralForm<S> {
    let grains: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
    let total: i64 = grains.iter().sum();
    let entries = grains
        .into_iter()
        .map(|g| {
            let v = S::from_ratio(rng.gen_range(-12..=12), 4);
            // Exact normalization: weights g/total sum to one.
            (v, S::from_ratio(g, 1) / S::from_ratio(total, 1))
        })
        .collect();
    SpectralForm::new(entries).expect("grain weights sum to one")
}

/// Expands a form whose weights are multiples of `1/dim` into a diagonal
/// matrix with matching multiplicities.
pub fn realize_as_diagonal(form: &SpectralForm<f64>, dim: usize) -> Result<TracialHermitian> {
    let mut diag = Vec::with_capacity(dim);
    for (v, w) in form.entries() {
        let copies = (w * dim as f64).round();
        if (w * dim as f64 - copies).abs() > 1e-9 || copies < 1.0 {
            return Err(Error::OutOfRange("weights are not multiples of 1/dim"));
        }
        for _ in 0..copies as usize {
            diag.push(*v);
        }
    }
    if diag.len() != dim {
        return Err(Error::DimensionMismatch { left: diag.len(), right: dim });
    }
    Ok(TracialHermitian::from_diagonal(&diag))
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let gauss = CMatrix::from_fn(n, n, |_, _| {
        C64::new(standard_normal(rng), standard_normal(rng))
    });
    let qr = gauss.qr();
    qr.q()
}

/// Random Hermitian matrix with entries of the given scale.
pub fn random_hermitian(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> TracialHermitian {
    let raw = CMatrix::from_fn(n, n, |_, _| {
        C64::new(standard_normal(rng) * scale, standard_normal(rng) * scale)
    });
    let herm = (&raw + raw.adjoint()).scale(0.5);
    TracialHermitian::new(herm).expect("symmetrized matrix is Hermitian")
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller from two uniforms; amply good for test data.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
