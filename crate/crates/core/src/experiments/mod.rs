//! Desk-scale studies: cleanup retrieval, sequential binding, corrected
//! similarity and noise heatmaps, norm/cosine relation curves, and the XML
//! and CSPS vector primitives.
//!
//! Every runner is a pure function of its config. Trials draw from streams
//! keyed by `(experiment, model, d, trial, ...)` and are collected in index
//! order, so results do not depend on how many rayon workers execute them.
//!
//! For the non-symmetric VTB, the key (the vector unbinding is done with)
//! always goes in the second argument of `bind`, so that
//! `unbind(bind(value, key), key) ≈ value` for all five models.

mod csps;
mod heatmap;
mod relation;
mod retrieval;
mod sequential;
mod xml;

pub use csps::{csps_mask, csps_unmask, run_csps_demo, CspsConfig};
pub use heatmap::{
    correction_to_result, run_correction_heatmap, run_noise_heatmap, HeatmapConfig, NegativeCase,
    NoiseHeatmap,
};
pub use relation::{
    curve_series, curve_table, run_cosine_curve, run_norm_curve, run_relation_curves, CurvePoint,
    RelationConfig, RelationCurves,
};
pub use retrieval::{
    compute_auc, run_retrieval, AucRecord, RetrievalConfig, RetrievalOutcome, RetrievalRecord,
};
pub use sequential::{
    run_sequential, SequentialConfig, SequentialMode, SequentialOutcome, SequentialRecord,
};
pub use xml::{run_xml_demo, xml_encode, xml_loss, XmlCodec, XmlConfig};

use crate::report::Table;

/// The tables produced by one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub name: String,
    pub tables: Vec<Table>,
}

impl ExperimentResult {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }
}

/// Sample mean and standard deviation (n − 1 denominator; 0 for one value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Stable index for stream labels.
pub(crate) fn model_label(kind: crate::models::ModelKind) -> u64 {
    crate::models::ModelKind::ALL
        .iter()
        .position(|k| *k == kind)
        .unwrap() as u64
}
