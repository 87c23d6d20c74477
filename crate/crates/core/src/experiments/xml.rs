use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{model_label, ExperimentResult};
use crate::error::{Result, VsaError};
use crate::models::{BindingModel, ModelKind, DEFAULT_MU};
use crate::report::Table;
use crate::seed::SeedSpec;
use crate::similarity::cosine;
use crate::vector::HyperVector;

/// Label vectors plus the "present" and "missing" role vectors for
/// multi-label target encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct XmlCodec {
    pub model: BindingModel,
    pub classes: Vec<HyperVector>,
    /// Sum of every class vector.
    pub all: HyperVector,
    pub p: HyperVector,
    pub m: HyperVector,
}

impl XmlCodec {
    pub fn new(
        model: BindingModel,
        classes: Vec<HyperVector>,
        p: HyperVector,
        m: HyperVector,
    ) -> Result<Self> {
        if classes.is_empty() {
            return Err(VsaError::Empty("class codebook"));
        }
        let all = HyperVector::sum(&classes)?;
        crate::error::ensure_same_dim(model.dim(), all.dim())?;
        crate::error::ensure_same_dim(model.dim(), p.dim())?;
        crate::error::ensure_same_dim(model.dim(), m.dim())?;
        Ok(Self {
            model,
            classes,
            all,
            p,
            m,
        })
    }

    pub fn random<R: Rng + ?Sized>(
        model: BindingModel,
        labels: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let classes = model.sample_many(labels, rng);
        let p = model.sample(rng);
        let m = model.sample(rng);
        Self::new(model, classes, p, m)
    }

    pub fn labels(&self) -> usize {
        self.classes.len()
    }

    fn present_sum(&self, present: &[usize]) -> Result<HyperVector> {
        let mut acc = vec![0.0; self.model.dim()];
        for &i in present {
            let c = self.classes.get(i).ok_or_else(|| {
                VsaError::invalid(format!(
                    "label {i} is out of range for {} classes",
                    self.classes.len()
                ))
            })?;
            for (a, v) in acc.iter_mut().zip(c.iter()) {
                *a += v;
            }
        }
        HyperVector::new(acc)
    }

    /// `bind(Σ_present c, p) + bind(a − Σ_present c, m)`, touching only the
    /// present labels.
    pub fn encode(&self, present: &[usize]) -> Result<HyperVector> {
        let sum = self.present_sum(present)?;
        let absent = self.all.sub(&sum)?;
        self.model
            .bind(&sum, &self.p)?
            .add(&self.model.bind(&absent, &self.m)?)
    }

    /// The same target built label by label over all `L` classes.
    pub fn encode_direct(&self, present: &[usize]) -> Result<HyperVector> {
        let mut is_present = vec![false; self.classes.len()];
        for &i in present {
            *is_present
                .get_mut(i)
                .ok_or_else(|| VsaError::invalid(format!("label {i} is out of range")))? = true;
        }
        let mut acc = HyperVector::zeros(self.model.dim())?;
        for (c, &hit) in self.classes.iter().zip(&is_present) {
            let role = if hit { &self.p } else { &self.m };
            acc.add_assign(&self.model.bind(c, role)?)?;
        }
        Ok(acc)
    }

    /// `Σ_present (1 − cos(unbind(ŝ, p), cᵢ)) + cos(unbind(ŝ, m), Σ_present cᵢ)`.
    pub fn loss(&self, predicted: &HyperVector, present: &[usize]) -> Result<f64> {
        if present.is_empty() {
            return Err(VsaError::invalid("loss needs at least one present label"));
        }
        let at_p = self.model.unbind(predicted, &self.p)?;
        let at_m = self.model.unbind(predicted, &self.m)?;
        let mut loss = 0.0;
        for &i in present {
            loss += 1.0 - cosine(&at_p, &self.classes[i])?;
        }
        Ok(loss + cosine(&at_m, &self.present_sum(present)?)?)
    }
}

pub fn xml_encode(codec: &XmlCodec, present: &[usize]) -> Result<HyperVector> {
    codec.encode(present)
}

pub fn xml_loss(codec: &XmlCodec, predicted: &HyperVector, present: &[usize]) -> Result<f64> {
    codec.loss(predicted, present)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XmlConfig {
    pub models: Vec<ModelKind>,
    pub d: usize,
    pub labels: usize,
    /// Present-set sizes to evaluate.
    pub ks: Vec<usize>,
    pub trials: usize,
    pub mu: f64,
    pub seed: u64,
}

impl Default for XmlConfig {
    fn default() -> Self {
        Self {
            models: ModelKind::ALL.to_vec(),
            d: 1024,
            labels: 100,
            ks: vec![1, 3, 10],
            trials: 10,
            mu: DEFAULT_MU,
            seed: 0,
        }
    }
}

impl XmlConfig {
    fn validate(&self) -> Result<()> {
        if self.models.is_empty() || self.ks.is_empty() {
            return Err(VsaError::invalid("models and k list must be non-empty"));
        }
        if self.trials == 0 || self.labels == 0 {
            return Err(VsaError::invalid("trials and labels must be at least 1"));
        }
        if let Some(&k) = self.ks.iter().find(|&&k| k == 0 || k > self.labels) {
            return Err(VsaError::invalid(format!(
                "k = {k} must lie in 1..={}",
                self.labels
            )));
        }
        for &kind in &self.models {
            BindingModel::with_mu(kind, self.d, self.mu)?;
        }
        Ok(())
    }
}

/// Encodes random label sets, then reports the loss of the exact target and
/// the gap between the complement-identity and label-by-label encodings.
/// Schema `model,d,labels,k,trial,loss,identity_error`.
pub fn run_xml_demo(cfg: &XmlConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let base = SeedSpec::new(cfg.seed, "xml");
    let jobs: Vec<(ModelKind, usize, usize)> = cfg
        .models
        .iter()
        .flat_map(|&m| {
            cfg.ks
                .iter()
                .flat_map(move |&k| (0..cfg.trials).map(move |t| (m, k, t)))
        })
        .collect();
    let rows: Vec<Vec<crate::report::Value>> = jobs
        .par_iter()
        .map(|&(kind, k, trial)| {
            let model = BindingModel::with_mu(kind, cfg.d, cfg.mu)?;
            let mut rng = base
                .child(model_label(kind))
                .child(k as u64)
                .child(trial as u64)
                .stream();
            let codec = XmlCodec::random(model, cfg.labels, &mut rng)?;
            let present = sample(&mut rng, cfg.labels, k).into_vec();
            let target = codec.encode(&present)?;
            let gap = target.max_abs_diff(&codec.encode_direct(&present)?)?;
            let loss = codec.loss(&target, &present)?;
            Ok(vec![
                kind.name().into(),
                cfg.d.into(),
                cfg.labels.into(),
                k.into(),
                trial.into(),
                loss.into(),
                gap.into(),
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(
        "xml",
        [
            "model",
            "d",
            "labels",
            "k",
            "trial",
            "loss",
            "identity_error",
        ],
    );
    for row in rows {
        table.push(row);
    }
    Ok(ExperimentResult {
        name: "xml".into(),
        tables: vec![table],
    })
}
