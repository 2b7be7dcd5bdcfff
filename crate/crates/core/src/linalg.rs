//! Thin wrappers around nalgebra's dense Hermitian eigensolver and SVD,
//! normalized to descending spectral order.

use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Maximum deviation of `m` from its own adjoint.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let svd = m.clone().svd(false, false);
    svd.singular_values.iter().cloned().fold(0.0_f64, f64::max)
}

/// `‖U*U - I‖` in operator norm.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let gram = u.adjoint() * u;
    operator_norm(&(gram - CMatrix::identity(n, n)))
}

fn descending_permutation(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("non-finite eigenvalue"));
    idx
}

fn permute_columns(m: &CMatrix, perm: &[usize]) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, perm[c])])
}

/// Eigenvalues (descending) and a unitary of matching eigenvectors for a
/// Hermitian matrix. In debug builds each eigenpair residual is checked
/// against `1e-8 * ‖m‖`.
pub fn hermitian_eigen_desc(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let raw: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    let perm = descending_permutation(&raw);
    let values: Vec<f64> = perm.iter().map(|&k| raw[k]).collect();
    let vectors = permute_columns(&eig.eigenvectors, &perm);
    #[cfg(debug_assertions)]
    {
        let scale = max_abs(m) * m.nrows() as f64 + 1.0;
        for (k, lambda) in values.iter().enumerate() {
            let v: DVector<C64> = vectors.column(k).into();
            let residual = (m * &v - &v * C64::new(*lambda, 0.0)).norm();
            debug_assert!(
                residual <= 1e-8 * scale,
                "eigenpair residual {residual:.3e} exceeds 1e-8 * {scale:.3e}"
            );
        }
    }
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigenvalues_desc(m: &CMatrix) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut v: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    v.sort_by(|a, b| b.partial_cmp(a).expect("non-finite eigenvalue"));
    v
}

/// SVD `m = u * diag(sigma) * v.adjoint()` with `sigma` descending.
pub fn svd_desc(m: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = m.clone().svd(true, true);
    let raw: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let u = svd.u.expect("svd requested with u");
    let v_t = svd.v_t.expect("svd requested with v_t");
    let perm = descending_permutation(&raw);
    let sigma: Vec<f64> = perm.iter().map(|&k| raw[k]).collect();
    let u = permute_columns(&u, &perm);
    let v = permute_columns(&v_t.adjoint(), &perm);
    (u, sigma, v)
}

/// Singular values only, descending.
pub fn singular_values_desc(m: &CMatrix) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut v: Vec<f64> = svd.singular_values.iter().cloned().collect();
    v.sort_by(|a, b| b.partial_cmp(a).expect("non-finite singular value"));
    v
}

/// Builds the permutation matrix sending basis vector `j` to `perm[j]`.
pub fn permutation_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let mut m = CMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = C64::new(1.0, 0.0);
    }
    m
}
