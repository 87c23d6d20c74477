use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_std, model_label, ExperimentResult};
use crate::codebook::Codebook;
use crate::error::{Result, VsaError};
use crate::models::{BindingModel, ModelKind, DEFAULT_MU};
use crate::report::Table;
use crate::seed::SeedSpec;
use crate::similarity::Metric;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetrievalConfig {
    pub pool_size: usize,
    pub dims: Vec<usize>,
    pub rhos: Vec<usize>,
    pub trials: usize,
    pub models: Vec<ModelKind>,
    pub metric: Metric,
    pub mu: f64,
    pub seed: u64,
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        Self {
            pool_size: 1000,
            dims: vec![16, 64, 256, 1024],
            rhos: (1..=25).collect(),
            trials: 50,
            models: ModelKind::ALL.to_vec(),
            metric: Metric::Dot,
            mu: DEFAULT_MU,
            seed: 0,
        }
    }
}

impl RetrievalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pool_size < 2 {
            return Err(VsaError::invalid("pool size must be at least 2"));
        }
        if self.trials == 0 {
            return Err(VsaError::invalid("trials must be at least 1"));
        }
        if self.rhos.is_empty() || self.rhos.contains(&0) {
            return Err(VsaError::invalid(
                "rho values must be non-empty and at least 1",
            ));
        }
        if self.dims.is_empty() || self.models.is_empty() {
            return Err(VsaError::invalid("dims and models must be non-empty"));
        }
        for &kind in &self.models {
            for &d in &self.dims {
                BindingModel::with_mu(kind, d, self.mu)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalRecord {
    pub model: ModelKind,
    pub d: usize,
    pub rho: usize,
    pub trial: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AucRecord {
    pub model: ModelKind,
    pub d: usize,
    pub auc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalOutcome {
    pub config: RetrievalConfig,
    /// Ordered by (model, d, rho, trial).
    pub records: Vec<RetrievalRecord>,
    pub auc: Vec<AucRecord>,
}

impl RetrievalOutcome {
    /// Trial-mean accuracy per rho for one model and dimension.
    pub fn mean_accuracy(&self, model: ModelKind, d: usize) -> Vec<(usize, f64)> {
        self.config
            .rhos
            .iter()
            .map(|&rho| {
                let accs: Vec<f64> = self
                    .records
                    .iter()
                    .filter(|r| r.model == model && r.d == d && r.rho == rho)
                    .map(|r| r.accuracy)
                    .collect();
                (rho, mean_std(&accs).0)
            })
            .collect()
    }

    pub fn auc_of(&self, model: ModelKind, d: usize) -> Option<f64> {
        self.auc
            .iter()
            .find(|a| a.model == model && a.d == d)
            .map(|a| a.auc)
    }

    pub fn to_result(&self) -> ExperimentResult {
        let mut rows = Table::new("retrieval", ["model", "d", "rho", "trial", "accuracy"]);
        for r in &self.records {
            rows.push(vec![
                r.model.name().into(),
                r.d.into(),
                r.rho.into(),
                r.trial.into(),
                r.accuracy.into(),
            ]);
        }
        let mut summary = Table::new("retrieval_summary", ["model", "d", "rho", "mean", "std"]);
        for &m in &self.config.models {
            for &d in &self.config.dims {
                for &rho in &self.config.rhos {
                    let accs: Vec<f64> = self
                        .records
                        .iter()
                        .filter(|r| r.model == m && r.d == d && r.rho == rho)
                        .map(|r| r.accuracy)
                        .collect();
                    let (mean, std) = mean_std(&accs);
                    summary.push(vec![
                        m.name().into(),
                        d.into(),
                        rho.into(),
                        mean.into(),
                        std.into(),
                    ]);
                }
            }
        }
        let mut auc = Table::new("retrieval_auc", ["model", "d", "auc"]);
        for a in &self.auc {
            auc.push(vec![a.model.name().into(), a.d.into(), a.auc.into()]);
        }
        ExperimentResult {
            name: "retrieval".into(),
            tables: vec![rows, summary, auc],
        }
    }
}

/// Area under an accuracy-vs-rho curve by the trapezoid rule, divided by the
/// rho span so a constant accuracy `a` gives `a`.
pub fn compute_auc(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(VsaError::invalid("AUC needs at least two points"));
    }
    if points.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(VsaError::invalid(
            "AUC points must have strictly ascending rho",
        ));
    }
    let area: f64 = points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
        .sum();
    Ok(area / (points[points.len() - 1].0 - points[0].0))
}

/// Accuracy per rho for one `(model, d, trial)`: one pool, shared by all rho.
fn run_trial(model: &BindingModel, cfg: &RetrievalConfig, spec: &SeedSpec) -> Result<Vec<f64>> {
    let mut pool_rng = spec.child(0).stream();
    let mut pool = Codebook::new(*model);
    for (i, v) in model
        .sample_many(cfg.pool_size, &mut pool_rng)
        .into_iter()
        .enumerate()
    {
        pool.insert(format!("p{i}"), v)?;
    }
    let vectors = pool.vectors();
    let n = cfg.pool_size;

    cfg.rhos
        .iter()
        .map(|&rho| {
            let mut rng = spec.child(1).child(rho as u64).stream();
            let pairs: Vec<(usize, usize)> = (0..rho)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                .collect();
            let (k0, v0) = pairs[0];
            let mut composite = model.bind(&vectors[v0], &vectors[k0])?;
            for &(k, v) in &pairs[1..] {
                composite.add_assign(&model.bind(&vectors[v], &vectors[k])?)?;
            }
            let mut correct = 0usize;
            for &(k, v) in &pairs {
                let retrieved = model.unbind(&composite, &vectors[k])?;
                let scores = pool.scores(&retrieved, cfg.metric)?;
                let target = scores[v];
                // Correct only if the partner strictly beats every other entry.
                if scores
                    .iter()
                    .enumerate()
                    .all(|(j, &s)| j == v || target > s)
                {
                    correct += 1;
                }
            }
            Ok(correct as f64 / rho as f64)
        })
        .collect()
}

/// Bundles `rho` random pairs from a pool, unbinds each with its key and
/// scores the trial correct when the true partner strictly outscores every
/// other pool entry.
pub fn run_retrieval(cfg: &RetrievalConfig) -> Result<RetrievalOutcome> {
    cfg.validate()?;
    let base = SeedSpec::new(cfg.seed, "retrieval");
    let jobs: Vec<(ModelKind, usize, usize)> = cfg
        .models
        .iter()
        .flat_map(|&m| {
            cfg.dims
                .iter()
                .flat_map(move |&d| (0..cfg.trials).map(move |t| (m, d, t)))
        })
        .collect();

    let per_job: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(kind, d, trial)| {
            let model = BindingModel::with_mu(kind, d, cfg.mu)?;
            let spec = base
                .child(model_label(kind))
                .child(d as u64)
                .child(trial as u64);
            run_trial(&model, cfg, &spec)
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(jobs.len() * cfg.rhos.len());
    for (mi, &m) in cfg.models.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            for (ri, &rho) in cfg.rhos.iter().enumerate() {
                for trial in 0..cfg.trials {
                    let job = (mi * cfg.dims.len() + di) * cfg.trials + trial;
                    records.push(RetrievalRecord {
                        model: m,
                        d,
                        rho,
                        trial,
                        accuracy: per_job[job][ri],
                    });
                }
            }
        }
    }

    let mut outcome = RetrievalOutcome {
        config: cfg.clone(),
        records,
        auc: Vec::new(),
    };
    if cfg.rhos.len() >= 2 {
        let mut auc = Vec::new();
        for &m in &cfg.models {
            for &d in &cfg.dims {
                let mut pts: Vec<(f64, f64)> = outcome
                    .mean_accuracy(m, d)
                    .into_iter()
                    .map(|(r, a)| (r as f64, a))
                    .collect();
                pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                auc.push(AucRecord {
                    model: m,
                    d,
                    auc: compute_auc(&pts)?,
                });
            }
        }
        outcome.auc = auc;
    }
    Ok(outcome)
}
