//! Similarity metrics and the bundle-size correction for cosine scores.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_dim, Result, VsaError};
use crate::vector::HyperVector;

/// Scoring rule for cleanup against a codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Dot,
    Cosine,
}

impl Metric {
    pub fn score(self, a: &HyperVector, b: &HyperVector) -> Result<f64> {
        match self {
            Metric::Dot => dot(a, b),
            Metric::Cosine => cosine(a, b),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Dot => "dot",
            Metric::Cosine => "cosine",
        })
    }
}

impl FromStr for Metric {
    type Err = VsaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(Metric::Dot),
            "cosine" | "cos" => Ok(Metric::Cosine),
            other => Err(VsaError::invalid(format!("unknown metric `{other}`"))),
        }
    }
}

pub fn dot(a: &HyperVector, b: &HyperVector) -> Result<f64> {
    ensure_same_dim(a.dim(), b.dim())?;
    Ok(dot_slices(a.as_slice(), b.as_slice()))
}

#[inline]
pub(crate) fn dot_slices(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cosine similarity. Symmetric bit-for-bit in its arguments.
pub fn cosine(a: &HyperVector, b: &HyperVector) -> Result<f64> {
    ensure_same_dim(a.dim(), b.dim())?;
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return Err(VsaError::ZeroNorm);
    }
    // The norm product is commutative, so swapping arguments is exact.
    Ok(dot_slices(a.as_slice(), b.as_slice()) / (na * nb))
}

/// Cosine between a retrieved vector and a candidate, rescaled by `√ρ` where
/// `ρ` is the number of pairs bundled into the composite the vector was
/// retrieved from. A present item scores near 1 and an absent one near 0.
pub fn corrected_cosine(
    retrieved: &HyperVector,
    candidate: &HyperVector,
    rho: usize,
) -> Result<f64> {
    if rho == 0 {
        return Err(VsaError::invalid("rho must be at least 1"));
    }
    let phi = cosine(retrieved, candidate)?;
    if rho == 1 {
        return Ok(phi);
    }
    Ok(phi * (rho as f64).sqrt())
}
