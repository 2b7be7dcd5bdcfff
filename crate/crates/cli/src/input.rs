//! Input schemas: each command reads one JSON object, with profiles given
//! either as spectral forms (`{"pairs": [[v, w], ...]}`) or as step
//! functions (`{"breakpoints": [...], "values": [...]}`).

use serde::Deserialize;
use specscale::error::Result;
use specscale::scalar::Scalar;
use specscale::spectral::SpectralForm;
use specscale::stepfn::StepFunction;
use specscale::wire::{MatrixJson, SpectralFormJson, SpectrumSetJson, StepFunctionJson};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ProfileJson {
    Form(SpectralFormJson),
    Step(StepFunctionJson),
}

impl ProfileJson {
    pub fn to_step<S: Scalar>(&self) -> Result<StepFunction<S>> {
        match self {
            ProfileJson::Form(f) => Ok(f.to_form::<S>()?.eigenvalue_function()),
            ProfileJson::Step(f) => f.to_step(),
        }
    }

    /// The spectral form carried by the profile: pairs as given, or block
    /// values with block widths as weights.
    pub fn to_form<S: Scalar>(&self) -> Result<SpectralForm<S>> {
        match self {
            ProfileJson::Form(f) => f.to_form(),
            ProfileJson::Step(f) => {
                let step = f.to_step::<S>()?;
                let entries = step
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (v.clone(), step.block_weight(k)))
                    .collect();
                SpectralForm::new(entries)
            }
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct ProfilePair {
    pub t: ProfileJson,
    pub s: ProfileJson,
}

#[derive(Debug, Deserialize)]
pub struct MatrixPair {
    pub t: MatrixJson,
    pub s: MatrixJson,
}

#[derive(Debug, Deserialize)]
pub struct SpectrumPair {
    pub t: SpectrumSetJson,
    pub s: SpectrumSetJson,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum EigfnInput {
    Form(SpectralFormJson),
    Matrix(MatrixJson),
}

#[derive(Debug, Deserialize)]
pub struct PinchInput {
    pub a: f64,
    pub b: f64,
    pub w_a: f64,
    pub w_b: f64,
    pub t: f64,
}
