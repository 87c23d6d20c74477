use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_std, ExperimentResult};
use crate::error::{Result, VsaError};
use crate::models::BindingModel;
use crate::report::{CurveSeries, Table};
use crate::seed::SeedSpec;
use crate::similarity::cosine;
use crate::theory::{norm_curve, theoretical_phi};

/// Composite-norm and retrieval-cosine sweeps for HLB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationConfig {
    pub trials: usize,
    pub norm_mu: f64,
    pub norm_d: usize,
    pub norm_rho_max: usize,
    pub cos_d: usize,
    pub cos_rho_max: usize,
    pub cos_mu: f64,
    pub seed: u64,
}

impl Default for RelationConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            norm_mu: 0.5,
            norm_d: 1024,
            norm_rho_max: 200,
            cos_d: 512,
            cos_rho_max: 50,
            cos_mu: 1.0,
            seed: 0,
        }
    }
}

impl RelationConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(VsaError::invalid("trials must be at least 1"));
        }
        if self.norm_rho_max == 0 || self.cos_rho_max == 0 {
            return Err(VsaError::invalid("rho maximum must be at least 1"));
        }
        BindingModel::hlb(self.norm_d, self.norm_mu)?;
        BindingModel::hlb(self.cos_d, self.cos_mu)?;
        Ok(())
    }
}

/// Empirical mean and std at one `ρ`, with the theoretical value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub rho: usize,
    pub mean: f64,
    pub std: f64,
    pub theory: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCurves {
    pub norm: Vec<CurvePoint>,
    pub cosine: Vec<CurvePoint>,
}

fn summarize(per_trial: &[Vec<f64>], theory: impl Fn(usize) -> f64) -> Vec<CurvePoint> {
    let len = per_trial.first().map_or(0, Vec::len);
    (0..len)
        .map(|k| {
            let column: Vec<f64> = per_trial.iter().map(|t| t[k]).collect();
            let (mean, std) = mean_std(&column);
            CurvePoint {
                rho: k + 1,
                mean,
                std,
                theory: theory(k + 1),
            }
        })
        .collect()
}

/// `‖χ_ρ‖` for `ρ = 1..=norm_rho_max`. Each trial grows one composite a
/// pair at a time, so the curve within a trial is a single random walk.
pub fn run_norm_curve(cfg: &RelationConfig) -> Result<Vec<CurvePoint>> {
    cfg.validate()?;
    let model = BindingModel::hlb(cfg.norm_d, cfg.norm_mu)?;
    let base = SeedSpec::new(cfg.seed, "relation-norm");
    let per_trial: Vec<Vec<f64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = base.child(trial as u64).stream();
            let mut chi = vec![0.0; cfg.norm_d];
            (0..cfg.norm_rho_max)
                .map(|_| {
                    let x = model.sample(&mut rng);
                    let y = model.sample(&mut rng);
                    for ((c, a), b) in chi.iter_mut().zip(x.iter()).zip(y.iter()) {
                        *c += a * b;
                    }
                    chi.iter().map(|v| v * v).sum::<f64>().sqrt()
                })
                .collect()
        })
        .collect();
    Ok(summarize(&per_trial, |rho| {
        norm_curve(rho, cfg.norm_mu, cfg.norm_d)
    }))
}

/// Uncorrected `cos(χ ⊘ y₀, x₀)` for `ρ = 1..=cos_rho_max`, each `(ρ, trial)`
/// drawing its own pairs.
pub fn run_cosine_curve(cfg: &RelationConfig) -> Result<Vec<CurvePoint>> {
    cfg.validate()?;
    let model = BindingModel::hlb(cfg.cos_d, cfg.cos_mu)?;
    let base = SeedSpec::new(cfg.seed, "relation-cosine");
    let per_trial: Vec<Vec<f64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            (1..=cfg.cos_rho_max)
                .map(|rho| {
                    let mut rng = base.child(trial as u64).child(rho as u64).stream();
                    let pairs: Vec<_> = (0..rho)
                        .map(|_| (model.sample(&mut rng), model.sample(&mut rng)))
                        .collect();
                    let chi = model.bundle(&pairs)?.vector;
                    cosine(&model.unbind(&chi, &pairs[0].1)?, &pairs[0].0)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(summarize(&per_trial, theoretical_phi))
}

pub fn run_relation_curves(cfg: &RelationConfig) -> Result<RelationCurves> {
    Ok(RelationCurves {
        norm: run_norm_curve(cfg)?,
        cosine: run_cosine_curve(cfg)?,
    })
}

/// Table with schema `rho,mean,std,theory`.
pub fn curve_table(name: &str, points: &[CurvePoint]) -> Table {
    let mut t = Table::new(name, ["rho", "mean", "std", "theory"]);
    for p in points {
        t.push(vec![
            p.rho.into(),
            p.mean.into(),
            p.std.into(),
            p.theory.into(),
        ]);
    }
    t
}

pub fn curve_series(title: &str, y_label: &str, points: &[CurvePoint]) -> CurveSeries {
    CurveSeries {
        title: title.into(),
        x_label: "rho".into(),
        y_label: y_label.into(),
        x: points.iter().map(|p| p.rho as f64).collect(),
        mean: points.iter().map(|p| p.mean).collect(),
        std: points.iter().map(|p| p.std).collect(),
        theory: points.iter().map(|p| p.theory).collect(),
    }
}

impl RelationCurves {
    pub fn to_result(&self) -> ExperimentResult {
        ExperimentResult {
            name: "relation".into(),
            tables: vec![
                curve_table("relation_norm", &self.norm),
                curve_table("relation_cosine", &self.cosine),
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RelationConfig {
        RelationConfig {
            trials: 20,
            norm_d: 256,
            norm_rho_max: 30,
            cos_d: 256,
            cos_rho_max: 10,
            seed: 3,
            ..RelationConfig::default()
        }
    }

    #[test]
    fn cosine_starts_at_one() {
        let c = run_cosine_curve(&small()).unwrap();
        assert!((c[0].mean - 1.0).abs() < 1e-12);
        assert!(c[0].std < 1e-12);
        assert_eq!(c.len(), 10);
    }

    #[test]
    fn norm_first_point_near_theory() {
        let n = run_norm_curve(&small()).unwrap();
        // ‖x⊙y‖² = Σ x²y², each factor ≈ μ² + 1/d.
        let expected = (256.0f64).sqrt() * (0.25 + 1.0 / 256.0);
        assert!((n[0].mean / expected - 1.0).abs() < 0.05);
        assert_eq!(n.len(), 30);
    }

    #[test]
    fn rejects_zero_trials() {
        let cfg = RelationConfig {
            trials: 0,
            ..small()
        };
        assert!(run_relation_curves(&cfg).is_err());
    }

    #[test]
    fn tables_use_curve_schema() {
        let r = run_relation_curves(&small()).unwrap().to_result();
        assert_eq!(
            r.table("relation_cosine").unwrap().columns,
            ["rho", "mean", "std", "theory"]
        );
        assert_eq!(r.table("relation_norm").unwrap().len(), 30);
    }
}
