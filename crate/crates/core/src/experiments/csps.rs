use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{model_label, ExperimentResult};
use crate::error::{Result, VsaError};
use crate::models::{BindingModel, ModelKind, DEFAULT_MU};
use crate::report::Table;
use crate::seed::SeedSpec;
use crate::similarity::cosine;
use crate::vector::HyperVector;

/// Hides `x` behind the secret `s` by binding.
pub fn csps_mask(
    model: &BindingModel,
    x: &HyperVector,
    secret: &HyperVector,
) -> Result<HyperVector> {
    model.bind(x, secret)
}

/// Recovers the payload of a masked vector with the same secret.
pub fn csps_unmask(
    model: &BindingModel,
    masked: &HyperVector,
    secret: &HyperVector,
) -> Result<HyperVector> {
    model.unbind(masked, secret)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CspsConfig {
    pub models: Vec<ModelKind>,
    pub d: usize,
    pub trials: usize,
    pub mu: f64,
    pub seed: u64,
}

impl Default for CspsConfig {
    fn default() -> Self {
        Self {
            models: ModelKind::ALL.to_vec(),
            d: 1024,
            trials: 100,
            mu: DEFAULT_MU,
            seed: 0,
        }
    }
}

/// Per trial: cosine between mask and payload, relative round-trip error,
/// and cosine between two masks of the same payload under different secrets.
/// Schema `model,d,trial,mask_cosine,roundtrip_error,cross_mask_cosine`.
pub fn run_csps_demo(cfg: &CspsConfig) -> Result<ExperimentResult> {
    if cfg.models.is_empty() || cfg.trials == 0 {
        return Err(VsaError::invalid(
            "models must be non-empty and trials at least 1",
        ));
    }
    for &kind in &cfg.models {
        BindingModel::with_mu(kind, cfg.d, cfg.mu)?;
    }
    let base = SeedSpec::new(cfg.seed, "csps");
    let jobs: Vec<(ModelKind, usize)> = cfg
        .models
        .iter()
        .flat_map(|&m| (0..cfg.trials).map(move |t| (m, t)))
        .collect();
    let rows: Vec<Vec<crate::report::Value>> = jobs
        .par_iter()
        .map(|&(kind, trial)| {
            let model = BindingModel::with_mu(kind, cfg.d, cfg.mu)?;
            let mut rng = base.child(model_label(kind)).child(trial as u64).stream();
            let x = model.sample(&mut rng);
            let s1 = model.sample(&mut rng);
            let s2 = model.sample(&mut rng);
            let masked = csps_mask(&model, &x, &s1)?;
            let other = csps_mask(&model, &x, &s2)?;
            let back = csps_unmask(&model, &masked, &s1)?;
            Ok(vec![
                kind.name().into(),
                cfg.d.into(),
                trial.into(),
                cosine(&masked, &x)?.into(),
                back.relative_error(&x)?.into(),
                cosine(&masked, &other)?.into(),
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(
        "csps",
        [
            "model",
            "d",
            "trial",
            "mask_cosine",
            "roundtrip_error",
            "cross_mask_cosine",
        ],
    );
    for row in rows {
        table.push(row);
    }
    Ok(ExperimentResult {
        name: "csps".into(),
        tables: vec![table],
    })
}
