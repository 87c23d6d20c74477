use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExperimentResult;
use crate::error::{Result, VsaError};
use crate::models::{BindingModel, DEFAULT_MU};
use crate::report::Table;
use crate::seed::SeedSpec;
use crate::similarity::corrected_cosine;
use crate::theory::{noise_circ, noise_proj, GridResult, NoiseReport};
use crate::vector::HyperVector;

/// Which non-bundled-partner comparison the negative grid averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegativeCase {
    /// One uniformly random `j ≠ i` per trial.
    #[default]
    RandomOther,
    /// The mean over every `j ≠ i`.
    AllOthers,
}

/// Grid over `d = 2^n` and bundle size `ρ`, HLB with MiND sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapConfig {
    pub ns: Vec<u32>,
    pub rhos: Vec<usize>,
    pub trials: usize,
    pub mu: f64,
    pub seed: u64,
    pub negative: NegativeCase,
}

impl HeatmapConfig {
    pub fn correction_default() -> Self {
        Self {
            ns: (1..=10).collect(),
            rhos: (1..=50).collect(),
            trials: 100,
            mu: DEFAULT_MU,
            seed: 0,
            negative: NegativeCase::RandomOther,
        }
    }

    pub fn noise_default() -> Self {
        Self {
            rhos: (2..=50).collect(),
            ..Self::correction_default()
        }
    }

    fn validate(&self, min_rho: usize) -> Result<()> {
        if self.ns.is_empty() || self.rhos.is_empty() {
            return Err(VsaError::invalid("n and rho ranges must be non-empty"));
        }
        if self.trials == 0 {
            return Err(VsaError::invalid("trials must be at least 1"));
        }
        if self.ns.iter().any(|&n| n == 0 || n > 24) {
            return Err(VsaError::invalid("n must lie in 1..=24"));
        }
        if let Some(&r) = self.rhos.iter().find(|&&r| r < min_rho) {
            return Err(VsaError::invalid(format!(
                "rho {r} is below the minimum {min_rho}"
            )));
        }
        BindingModel::hlb(2, self.mu)?;
        Ok(())
    }

    fn cells(&self) -> Vec<(u32, usize)> {
        self.ns
            .iter()
            .flat_map(|&n| self.rhos.iter().map(move |&r| (n, r)))
            .collect()
    }

    fn grid(&self, values: &[f64], metric: &str, range: Option<(f64, f64)>) -> Result<GridResult> {
        let cols = self.rhos.len();
        let cells = values.chunks(cols).map(<[f64]>::to_vec).collect();
        let mut g = GridResult::new(
            "n",
            self.ns.iter().map(|&n| n as usize).collect(),
            "rho",
            self.rhos.clone(),
            cells,
            metric,
        )?;
        g.trials = self.trials;
        g.seed = self.seed;
        g.value_range = range;
        Ok(g)
    }
}

fn mind_pairs<R: Rng + ?Sized>(
    model: &BindingModel,
    rho: usize,
    rng: &mut R,
) -> Vec<(HyperVector, HyperVector)> {
    (0..rho)
        .map(|_| (model.sample(rng), model.sample(rng)))
        .collect()
}

/// Mean corrected cosine `φ′ = cos·√ρ` for the retrieved vector against its
/// true partner (positive grid) and against another bundled item (negative
/// grid). With a single pair there is no other bundled item, so the
/// negative case uses a fresh unbundled vector.
pub fn run_correction_heatmap(cfg: &HeatmapConfig) -> Result<(GridResult, GridResult)> {
    cfg.validate(1)?;
    let base = SeedSpec::new(cfg.seed, "heatmap-correction");
    let values: Vec<(f64, f64)> = cfg
        .cells()
        .par_iter()
        .map(|&(n, rho)| {
            let d = 1usize << n;
            let model = BindingModel::hlb(d, cfg.mu)?;
            let (mut pos, mut neg) = (0.0, 0.0);
            for trial in 0..cfg.trials {
                let mut rng = base
                    .child(n as u64)
                    .child(rho as u64)
                    .child(trial as u64)
                    .stream();
                let pairs = mind_pairs(&model, rho, &mut rng);
                let chi = model.bundle(&pairs)?.vector;
                let i = rng.random_range(0..rho);
                let retrieved = model.unbind(&chi, &pairs[i].1)?;
                pos += corrected_cosine(&retrieved, &pairs[i].0, rho)?;
                neg += if rho == 1 {
                    corrected_cosine(&retrieved, &model.sample(&mut rng), rho)?
                } else {
                    match cfg.negative {
                        NegativeCase::RandomOther => {
                            let mut j = rng.random_range(0..rho - 1);
                            if j >= i {
                                j += 1;
                            }
                            corrected_cosine(&retrieved, &pairs[j].0, rho)?
                        }
                        NegativeCase::AllOthers => {
                            let mut acc = 0.0;
                            for (j, (x, _)) in pairs.iter().enumerate() {
                                if j != i {
                                    acc += corrected_cosine(&retrieved, x, rho)?;
                                }
                            }
                            acc / (rho - 1) as f64
                        }
                    }
                };
            }
            let t = cfg.trials as f64;
            Ok((pos / t, neg / t))
        })
        .collect::<Result<_>>()?;
    let pos: Vec<f64> = values.iter().map(|v| v.0).collect();
    let neg: Vec<f64> = values.iter().map(|v| v.1).collect();
    Ok((
        cfg.grid(&pos, "phi_prime_positive", Some((0.0, 1.0)))?,
        cfg.grid(&neg, "phi_prime_negative", Some((0.0, 1.0)))?,
    ))
}

/// Log mean absolute retrieval noise with and without projection.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseHeatmap {
    /// `ln(mean |η°|)`
    pub circ: GridResult,
    /// `ln(mean |η^π|)`
    pub proj: GridResult,
    pub reports: Vec<NoiseReport>,
}

impl NoiseHeatmap {
    /// Cells where either noise mean is not finite.
    pub fn overflow_cells(&self) -> Vec<(u32, usize)> {
        self.reports
            .iter()
            .filter(|r| r.overflowed())
            .map(|r| (r.n, r.rho))
            .collect()
    }
}

/// Noise means over `trials`, retrieving the first pair each time.
pub fn run_noise_heatmap(cfg: &HeatmapConfig) -> Result<NoiseHeatmap> {
    cfg.validate(2)?;
    let base = SeedSpec::new(cfg.seed, "heatmap-noise");
    let reports: Vec<NoiseReport> = cfg
        .cells()
        .par_iter()
        .map(|&(n, rho)| {
            let d = 1usize << n;
            let model = BindingModel::hlb(d, cfg.mu)?;
            let (mut circ, mut proj) = (0.0, 0.0);
            for trial in 0..cfg.trials {
                let mut rng = base
                    .child(n as u64)
                    .child(rho as u64)
                    .child(trial as u64)
                    .stream();
                let pairs = mind_pairs(&model, rho, &mut rng);
                circ += noise_circ(&pairs, 0).map_or(f64::INFINITY, |v| v.mean_abs());
                proj += noise_proj(&pairs, 0).map_or(f64::INFINITY, |v| v.mean_abs());
            }
            let t = cfg.trials as f64;
            Ok(NoiseReport {
                n,
                rho,
                mean_abs_eta_circ: circ / t,
                mean_abs_eta_proj: proj / t,
                trials: cfg.trials,
            })
        })
        .collect::<Result<_>>()?;
    let circ: Vec<f64> = reports.iter().map(|r| r.mean_abs_eta_circ.ln()).collect();
    let proj: Vec<f64> = reports.iter().map(|r| r.mean_abs_eta_proj.ln()).collect();
    Ok(NoiseHeatmap {
        circ: cfg.grid(&circ, "ln_mean_abs_eta_circ", None)?,
        proj: cfg.grid(&proj, "ln_mean_abs_eta_proj", None)?,
        reports,
    })
}

/// `n,rho,value,metric` rows for any number of grids.
pub(crate) fn grids_to_result(name: &str, grids: &[&GridResult]) -> ExperimentResult {
    let mut t = Table::new(name, ["n", "rho", "value", "metric"]);
    for g in grids {
        for (n, rho, v) in g.iter_cells() {
            t.push(vec![
                n.into(),
                rho.into(),
                v.into(),
                g.metric.as_str().into(),
            ]);
        }
    }
    ExperimentResult {
        name: name.into(),
        tables: vec![t],
    }
}

impl NoiseHeatmap {
    pub fn to_result(&self) -> ExperimentResult {
        let mut result = grids_to_result("heatmap_noise", &[&self.circ, &self.proj]);
        let mut flags = Table::new("heatmap_noise_overflow", ["n", "rho"]);
        for (n, rho) in self.overflow_cells() {
            flags.push(vec![n.into(), rho.into()]);
        }
        result.tables.push(flags);
        result
    }
}

pub fn correction_to_result(pos: &GridResult, neg: &GridResult) -> ExperimentResult {
    grids_to_result("heatmap_correction", &[pos, neg])
}
