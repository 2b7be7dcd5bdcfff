//! JSON wire formats for all exchanged objects. Numbers travel as `f64`;
//! the exact backend converts them bit-faithfully on ingestion.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::scalar::Scalar;
use crate::spectral::{SpectralForm, SpectrumSet, TracialHermitian};
use crate::stepfn::StepFunction;
use crate::synthesis::{MixingPlan, RecursionTrace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepFunctionJson {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepFunctionJson {
    pub fn from_step<S: Scalar>(f: &StepFunction<S>) -> Self {
        StepFunctionJson {
            breakpoints: f.breakpoints().iter().map(Scalar::to_f64).collect(),
            values: f.values().iter().map(Scalar::to_f64).collect(),
        }
    }

    pub fn to_step<S: Scalar>(&self) -> Result<StepFunction<S>> {
        StepFunction::new(
            self.breakpoints.iter().map(|&x| S::from_f64(x)).collect(),
            self.values.iter().map(|&x| S::from_f64(x)).collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralFormJson {
    pub pairs: Vec<(f64, f64)>,
}

impl SpectralFormJson {
    pub fn from_form<S: Scalar>(form: &SpectralForm<S>) -> Self {
        SpectralFormJson {
            pairs: form.entries().iter().map(|(v, w)| (v.to_f64(), w.to_f64())).collect(),
        }
    }

    pub fn to_form<S: Scalar>(&self) -> Result<SpectralForm<S>> {
        SpectralForm::new(
            self.pairs.iter().map(|&(v, w)| (S::from_f64(v), S::from_f64(w))).collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let re = (0..n).map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..n).map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect()).collect();
        MatrixJson { n, re, im }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.n;
        if self.re.len() != n
            || self.im.len() != n
            || self.re.iter().any(|row| row.len() != n)
            || self.im.iter().any(|row| row.len() != n)
        {
            return Err(Error::NotSquare { rows: self.re.len(), cols: n });
        }
        Ok(CMatrix::from_fn(n, n, |i, j| C64::new(self.re[i][j], self.im[i][j])))
    }

    pub fn to_hermitian(&self) -> Result<TracialHermitian> {
        TracialHermitian::new(self.to_matrix()?)
    }
}

/// A plan unitary: entries only, dimension implied by the plan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitaryJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixingPlanJson {
    pub weights: Vec<f64>,
    pub unitaries: Vec<UnitaryJson>,
}

impl MixingPlanJson {
    pub fn from_plan(plan: &MixingPlan) -> Self {
        MixingPlanJson {
            weights: plan.weights().to_vec(),
            unitaries: plan
                .unitaries()
                .iter()
                .map(|u| {
                    let m = MatrixJson::from_matrix(u);
                    UnitaryJson { re: m.re, im: m.im }
                })
                .collect(),
        }
    }

    pub fn to_plan(&self) -> Result<MixingPlan> {
        let dim = self.unitaries.first().map(|u| u.re.len()).unwrap_or(0);
        let unitaries: Result<Vec<CMatrix>> = self
            .unitaries
            .iter()
            .map(|u| {
                MatrixJson { n: dim, re: u.re.clone(), im: u.im.clone() }.to_matrix()
            })
            .collect();
        MixingPlan::new(self.weights.clone(), unitaries?, dim)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumSetJson {
    pub points: Vec<(f64, f64)>,
}

impl SpectrumSetJson {
    pub fn from_set(set: &SpectrumSet) -> Self {
        SpectrumSetJson { points: set.points().iter().map(|z| (z.re, z.im)).collect() }
    }

    pub fn to_set(&self) -> Result<SpectrumSet> {
        SpectrumSet::new(self.points.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }
}

/// CSV rendering of a recursion trace: columns `n,k_n,r_n,a_n,b_n`, dot
/// decimals, 17 significant digits.
pub fn recursion_trace_csv<S: Scalar>(trace: &RecursionTrace<S>) -> String {
    let mut out = String::from("n,k_n,r_n,a_n,b_n\n");
    for (idx, step) in trace.steps.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            idx + 1,
            step.divisor,
            fmt17(step.remainder.to_f64()),
            fmt17(step.a.to_f64()),
            fmt17(step.b.to_f64()),
        ));
    }
    out
}

/// 17 significant digits, locale-independent.
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}
