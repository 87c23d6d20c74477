//! Hadamard-derived linear binding (HLB) and four baseline vector symbolic
//! architectures: HRR, VTB, MAP-C and MAP-B.
//!
//! ```
//! use hlb::{BindingModel, SeedSpec};
//!
//! let model = BindingModel::hlb(1024, 1.0).unwrap();
//! let mut rng = SeedSpec::new(7, "doc").stream();
//! let (x, y) = (model.sample(&mut rng), model.sample(&mut rng));
//! let back = model.unbind(&model.bind(&x, &y).unwrap(), &y).unwrap();
//! assert!(back.relative_error(&x).unwrap() < 1e-10);
//! ```

pub mod cli;
pub mod codebook;
pub mod error;
pub mod experiments;
pub mod models;
pub mod report;
pub mod seed;
pub mod similarity;
pub mod theory;
pub mod transforms;
pub mod vector;

pub use codebook::Codebook;
pub use error::{Result, VsaError};
pub use models::{BindingModel, Composite, ModelKind};
pub use seed::SeedSpec;
pub use similarity::{corrected_cosine, cosine, dot, Metric};
pub use theory::GridResult;
pub use vector::HyperVector;
