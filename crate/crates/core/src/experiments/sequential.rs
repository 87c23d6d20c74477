use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_std, model_label, ExperimentResult};
use crate::error::{Result, VsaError};
use crate::models::{BindingModel, ModelKind, DEFAULT_MU};
use crate::report::Table;
use crate::seed::SeedSpec;
use crate::similarity::cosine;

/// `Random` binds a fresh vector each round; `Auto` reuses one vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequentialMode {
    Random,
    Auto,
}

impl SequentialMode {
    pub fn name(self) -> &'static str {
        match self {
            SequentialMode::Random => "random",
            SequentialMode::Auto => "auto",
        }
    }
}

impl fmt::Display for SequentialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequentialMode {
    type Err = VsaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(SequentialMode::Random),
            "auto" => Ok(SequentialMode::Auto),
            other => Err(VsaError::invalid(format!(
                "unknown sequential mode `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequentialConfig {
    pub modes: Vec<SequentialMode>,
    pub depth: usize,
    pub d: usize,
    pub trials: usize,
    pub models: Vec<ModelKind>,
    pub mu: f64,
    pub seed: u64,
}

impl Default for SequentialConfig {
    fn default() -> Self {
        Self {
            modes: vec![SequentialMode::Random, SequentialMode::Auto],
            depth: 50,
            d: 1024,
            trials: 10,
            models: ModelKind::ALL.to_vec(),
            mu: DEFAULT_MU,
            seed: 0,
        }
    }
}

impl SequentialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth == 0 || self.trials == 0 {
            return Err(VsaError::invalid("depth and trials must be at least 1"));
        }
        if self.modes.is_empty() || self.models.is_empty() {
            return Err(VsaError::invalid("modes and models must be non-empty"));
        }
        for &kind in &self.models {
            BindingModel::with_mu(kind, self.d, self.mu)?;
        }
        Ok(())
    }
}

/// Step `t` (1-based): `unbind(b_t, x_{t−1})` compared with `b_{t−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialRecord {
    pub model: ModelKind,
    pub mode: SequentialMode,
    pub d: usize,
    pub t: usize,
    pub trial: usize,
    pub similarity: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequentialOutcome {
    pub config: SequentialConfig,
    /// Ordered by (model, mode, trial, t).
    pub records: Vec<SequentialRecord>,
}

impl SequentialOutcome {
    pub fn series(
        &self,
        model: ModelKind,
        mode: SequentialMode,
    ) -> impl Iterator<Item = &SequentialRecord> {
        self.records
            .iter()
            .filter(move |r| r.model == model && r.mode == mode)
    }

    /// Trial-mean magnitude per step.
    pub fn mean_magnitude(&self, model: ModelKind, mode: SequentialMode) -> Vec<f64> {
        (1..=self.config.depth)
            .map(|t| {
                let v: Vec<f64> = self
                    .series(model, mode)
                    .filter(|r| r.t == t)
                    .map(|r| r.magnitude)
                    .collect();
                mean_std(&v).0
            })
            .collect()
    }

    pub fn to_result(&self) -> ExperimentResult {
        let mut rows = Table::new(
            "sequential",
            [
                "model",
                "mode",
                "d",
                "t",
                "trial",
                "similarity",
                "magnitude",
            ],
        );
        for r in &self.records {
            rows.push(vec![
                r.model.name().into(),
                r.mode.name().into(),
                r.d.into(),
                r.t.into(),
                r.trial.into(),
                r.similarity.into(),
                r.magnitude.into(),
            ]);
        }
        let mut summary = Table::new(
            "sequential_summary",
            [
                "model",
                "mode",
                "d",
                "t",
                "similarity_mean",
                "similarity_std",
                "magnitude_mean",
                "magnitude_std",
            ],
        );
        for &m in &self.config.models {
            for &mode in &self.config.modes {
                for t in 1..=self.config.depth {
                    let sel: Vec<&SequentialRecord> =
                        self.series(m, mode).filter(|r| r.t == t).collect();
                    let sims: Vec<f64> = sel.iter().map(|r| r.similarity).collect();
                    let mags: Vec<f64> = sel.iter().map(|r| r.magnitude).collect();
                    let (sm, ss) = mean_std(&sims);
                    let (mm, ms) = mean_std(&mags);
                    summary.push(vec![
                        m.name().into(),
                        mode.name().into(),
                        self.config.d.into(),
                        t.into(),
                        sm.into(),
                        ss.into(),
                        mm.into(),
                        ms.into(),
                    ]);
                }
            }
        }
        ExperimentResult {
            name: "sequential".into(),
            tables: vec![rows, summary],
        }
    }
}

fn run_chain(
    model: &BindingModel,
    mode: SequentialMode,
    depth: usize,
    spec: &SeedSpec,
) -> Result<Vec<(f64, f64)>> {
    let mut rng = spec.stream();
    let b0 = model.sample(&mut rng);
    let xs = match mode {
        SequentialMode::Random => model.sample_many(depth, &mut rng),
        SequentialMode::Auto => vec![model.sample(&mut rng); depth],
    };
    let chain = model.sequential_bind(&b0, &xs)?;
    let mut prev = &b0;
    let mut out = Vec::with_capacity(depth);
    for (b, x) in chain.iter().zip(&xs) {
        let back = model.unbind(b, x)?;
        let sim = cosine(&back, prev).unwrap_or(f64::NAN);
        out.push((sim, back.norm()));
        prev = b;
    }
    Ok(out)
}

/// Repeatedly binds onto `b_0`, unbinding each step to see how well the
/// previous state comes back and how its magnitude evolves.
pub fn run_sequential(cfg: &SequentialConfig) -> Result<SequentialOutcome> {
    cfg.validate()?;
    let base = SeedSpec::new(cfg.seed, "sequential");
    let jobs: Vec<(ModelKind, SequentialMode, usize)> = cfg
        .models
        .iter()
        .flat_map(|&m| {
            cfg.modes
                .iter()
                .flat_map(move |&mode| (0..cfg.trials).map(move |t| (m, mode, t)))
        })
        .collect();
    let chains: Vec<Vec<(f64, f64)>> = jobs
        .par_iter()
        .map(|&(kind, mode, trial)| {
            let model = BindingModel::with_mu(kind, cfg.d, cfg.mu)?;
            let mode_label = match mode {
                SequentialMode::Random => 0,
                SequentialMode::Auto => 1,
            };
            let spec = base
                .child(model_label(kind))
                .child(mode_label)
                .child(cfg.d as u64)
                .child(trial as u64);
            run_chain(&model, mode, cfg.depth, &spec)
        })
        .collect::<Result<_>>()?;

    let records = jobs
        .iter()
        .zip(chains)
        .flat_map(|(&(model, mode, trial), chain)| {
            chain
                .into_iter()
                .enumerate()
                .map(move |(i, (similarity, magnitude))| SequentialRecord {
                    model,
                    mode,
                    d: cfg.d,
                    t: i + 1,
                    trial,
                    similarity,
                    magnitude,
                })
        })
        .collect();
    Ok(SequentialOutcome {
        config: cfg.clone(),
        records,
    })
}
