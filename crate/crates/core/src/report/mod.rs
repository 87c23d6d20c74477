//! Tabular results and their file formats: CSV, JSON, SVG and run manifests.

mod manifest;
pub(crate) use manifest::unix_now;
mod svg;
mod table;

pub use manifest::RunManifest;
pub use svg::{diverging_color, render_curves, render_heatmap, CurveSeries};
pub use table::{Table, Value};
