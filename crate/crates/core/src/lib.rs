//! Spectral scales, majorization, and distances between unitary orbits and
//! their closed convex hulls, at finite-spectrum and matrix scale.
//!
//! The calculus is generic over the arithmetic backend [`scalar::Scalar`]:
//! `f64` with a global tolerance for matrix-derived data, and exact big
//! rationals for oracle-grade equality checks. Matrix-level constructions
//! (eigenvalue profiles of Hermitian matrices, mixing plans with explicit
//! unitaries, two-sided compressions) are concrete over `f64`.
//!
//! The main pieces:
//!
//! - [`stepfn`]: non-increasing right-continuous step functions on `[0, 1)`
//!   with exact partial integrals, rearrangement, block averaging, and the
//!   sup metric.
//! - [`spectral`]: spectral forms, tracial Hermitian matrices, spectrum
//!   sets, eigenvalue/singular value profiles, weight-grid alignment.
//! - [`majorize`]: majorization, submajorization, pointwise dominance, and
//!   the convex-test-function cross-check.
//! - [`distances`]: orbit distance, distance to a convex hull with a
//!   constructive witness, hull-to-hull distance, spectral variants.
//! - [`synthesis`]: pinchings, the reduction algorithm, mixing plans,
//!   compressions, and the scalar averaging recursion.
//! - [`purely_infinite`]: spectrum-convexity membership predicates.
//! - [`oracle`]: independent brute-force references used by tests and the
//!   command-line `--audit` mode.

pub mod distances;
pub mod error;
pub mod linalg;
pub mod majorize;
pub mod oracle;
pub mod purely_infinite;
pub mod scalar;
pub mod spectral;
pub mod stepfn;
pub mod synthesis;
pub mod wire;

pub use error::{Error, ErrorKind, Result};
pub use scalar::Scalar;

/// Exact arithmetic backend.
pub type Exact = num_rational::BigRational;

pub type StepFn = stepfn::StepFunction<f64>;
pub type StepFnExact = stepfn::StepFunction<Exact>;
pub type Form = spectral::SpectralForm<f64>;
pub type FormExact = spectral::SpectralForm<Exact>;
pub type Steps = Vec<synthesis::TTransformStep<f64>>;
pub type StepsExact = Vec<synthesis::TTransformStep<Exact>>;
