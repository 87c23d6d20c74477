//! Hadamard-domain binding and the quantities derived from it.
//!
//! The transform-domain binding `(1/d)·H(Hx ⊙ Hy)` collapses to the linear
//! HLB form `x ⊙ y` once inputs are projected with `π(x) = (1/d)·H·x`. The
//! functions here compute both routes so one can check the other, plus the
//! two retrieval noise terms and the norm/cosine curves that follow from
//! MiND sampling.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_dim, Result, VsaError};
use crate::models::Composite;
use crate::transforms::{fwht, is_power_of_two};
use crate::vector::HyperVector;

fn require_pow2(d: usize) -> Result<()> {
    if is_power_of_two(d) {
        Ok(())
    } else {
        Err(VsaError::NotPowerOfTwo(d))
    }
}

/// `(1/d)·H(Hx ⊙ Hy)`.
pub fn hadamard_bind(x: &HyperVector, y: &HyperVector) -> Result<HyperVector> {
    ensure_same_dim(x.dim(), y.dim())?;
    require_pow2(x.dim())?;
    let spectrum = fwht(x)?.mul(&fwht(y)?)?;
    Ok(fwht(&spectrum)?.scale(1.0 / x.dim() as f64))
}

/// `y†` with `H y† = 1 ⊘ H y`, i.e. `(1/d)·H(1 ⊘ Hy)`.
pub fn hadamard_inverse_vector(y: &HyperVector) -> Result<HyperVector> {
    require_pow2(y.dim())?;
    let hy = fwht(y)?;
    if let Some((index, _)) = hy.iter().enumerate().find(|(_, v)| **v == 0.0) {
        return Err(VsaError::NearZeroDivisor { index, value: 0.0 });
    }
    let recip = HyperVector::from_raw(hy.iter().map(|v| 1.0 / v).collect());
    Ok(fwht(&recip)?.scale(1.0 / y.dim() as f64))
}

/// The identity of [`hadamard_bind`]: the vector whose transform is all ones.
pub fn hadamard_identity(d: usize) -> Result<HyperVector> {
    require_pow2(d)?;
    HyperVector::basis(d, 0)
}

/// `π(x) = (1/d)·H·x`.
pub fn projection(x: &HyperVector) -> Result<HyperVector> {
    Ok(fwht(x)?.scale(1.0 / x.dim() as f64))
}

/// Undoes [`projection`]: `π⁻¹(z) = H·z`.
pub fn reverse_projection(z: &HyperVector) -> Result<HyperVector> {
    fwht(z)
}

fn check_pairs(pairs: &[(HyperVector, HyperVector)], i: usize) -> Result<usize> {
    let first = pairs.first().ok_or(VsaError::Empty("pair list"))?;
    if i >= pairs.len() {
        return Err(VsaError::invalid(format!(
            "query index {i} out of range for {} pairs",
            pairs.len()
        )));
    }
    let d = first.0.dim();
    for (x, y) in pairs {
        ensure_same_dim(d, x.dim())?;
        ensure_same_dim(d, y.dim())?;
    }
    Ok(d)
}

/// Both routes to retrieving `x_i` from the projected composite.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineForms {
    /// `(Σ_j x_j ⊙ y_j) ⊘ y_i`.
    pub linear_form: HyperVector,
    /// Project inputs, bind in the Hadamard domain, unbind with the inverse
    /// of the projected query, then reverse the projection.
    pub transform_form: HyperVector,
}

impl PipelineForms {
    /// `max|linear − transform| / max|linear|`.
    pub fn relative_gap(&self) -> Result<f64> {
        let gap = self.linear_form.max_abs_diff(&self.transform_form)?;
        let scale = self.linear_form.max_abs();
        if scale == 0.0 {
            return Err(VsaError::ZeroNorm);
        }
        Ok(gap / scale)
    }
}

pub fn pipeline_equivalence_check(
    pairs: &[(HyperVector, HyperVector)],
    i: usize,
) -> Result<PipelineForms> {
    let d = check_pairs(pairs, i)?;
    require_pow2(d)?;

    let mut chi_linear = pairs[0].0.mul(&pairs[0].1)?;
    for (x, y) in &pairs[1..] {
        chi_linear.add_assign(&x.mul(y)?)?;
    }
    let linear_form = chi_linear.div(&pairs[i].1)?;

    let mut chi = hadamard_bind(&projection(&pairs[0].0)?, &projection(&pairs[0].1)?)?;
    for (x, y) in &pairs[1..] {
        chi.add_assign(&hadamard_bind(&projection(x)?, &projection(y)?)?)?;
    }
    let query_inverse = hadamard_inverse_vector(&projection(&pairs[i].1)?)?;
    let transform_form = reverse_projection(&hadamard_bind(&chi, &query_inverse)?)?;

    Ok(PipelineForms {
        linear_form,
        transform_form,
    })
}

/// Retrieval noise without projection:
/// `η°_i = (1/d)·H((1 ⊘ Hy_i) ⊙ Σ_{j≠i} Hx_j ⊙ Hy_j)`.
///
/// Zero for a single pair. Divides by the transform of `y_i`, whose
/// components are unbounded near zero, so the result can be huge.
pub fn noise_circ(pairs: &[(HyperVector, HyperVector)], i: usize) -> Result<HyperVector> {
    let d = check_pairs(pairs, i)?;
    require_pow2(d)?;
    let mut acc = HyperVector::zeros(d)?;
    for (j, (x, y)) in pairs.iter().enumerate() {
        if j != i {
            acc.add_assign(&fwht(x)?.mul(&fwht(y)?)?)?;
        }
    }
    if pairs.len() == 1 {
        return Ok(acc);
    }
    let hy = fwht(&pairs[i].1)?;
    if let Some(index) = hy.iter().position(|v| *v == 0.0) {
        return Err(VsaError::NearZeroDivisor { index, value: 0.0 });
    }
    Ok(fwht(&acc.div(&hy)?)?.scale(1.0 / d as f64))
}

/// Retrieval noise after projection: `η^π_i = (Σ_{j≠i} x_j ⊙ y_j) ⊘ y_i`.
pub fn noise_proj(pairs: &[(HyperVector, HyperVector)], i: usize) -> Result<HyperVector> {
    let d = check_pairs(pairs, i)?;
    let mut acc = HyperVector::zeros(d)?;
    for (j, (x, y)) in pairs.iter().enumerate() {
        if j != i {
            acc.add_assign(&x.mul(y)?)?;
        }
    }
    if pairs.len() == 1 {
        return Ok(acc);
    }
    let y = &pairs[i].1;
    if let Some(index) = y.iter().position(|v| *v == 0.0) {
        return Err(VsaError::NearZeroDivisor { index, value: 0.0 });
    }
    acc.div(y)
}

/// Number of bundled pairs inferred from the composite norm,
/// `round(‖χ‖² / (μ⁴ d))`, never less than one.
pub fn estimate_rho(composite: &Composite, mu: f64, d: usize) -> Result<usize> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(VsaError::invalid(format!(
            "mu must be finite and positive, got {mu}"
        )));
    }
    if d == 0 {
        return Err(VsaError::invalid("d must be at least 1"));
    }
    let ratio = composite.vector.norm_squared() / (mu.powi(4) * d as f64);
    Ok((ratio.round() as usize).max(1))
}

/// Expected cosine between a retrieved vector and its original, `1/√ρ`.
pub fn theoretical_phi(rho: usize) -> f64 {
    1.0 / (rho as f64).sqrt()
}

/// Expected composite norm, `μ²·√(ρ d)`.
pub fn norm_curve(rho: usize, mu: f64, d: usize) -> f64 {
    mu * mu * ((rho * d) as f64).sqrt()
}

/// Mean absolute noise of both kinds for one `(n, ρ)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseReport {
    /// `log2 d`
    pub n: u32,
    pub rho: usize,
    pub mean_abs_eta_circ: f64,
    pub mean_abs_eta_proj: f64,
    pub trials: usize,
}

impl NoiseReport {
    /// True if either mean overflowed or is otherwise non-finite.
    pub fn overflowed(&self) -> bool {
        !(self.mean_abs_eta_circ.is_finite() && self.mean_abs_eta_proj.is_finite())
    }
}

/// Values over a two-axis grid; `cells[i][j]` belongs to `axis1[i]`, `axis2[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub axis1_name: String,
    pub axis1: Vec<usize>,
    pub axis2_name: String,
    pub axis2: Vec<usize>,
    pub cells: Vec<Vec<f64>>,
    pub metric: String,
    pub trials: usize,
    pub seed: u64,
    /// Fixed color range for rendering, if the metric has a natural one.
    pub value_range: Option<(f64, f64)>,
}

impl GridResult {
    pub fn new(
        axis1_name: impl Into<String>,
        axis1: Vec<usize>,
        axis2_name: impl Into<String>,
        axis2: Vec<usize>,
        cells: Vec<Vec<f64>>,
        metric: impl Into<String>,
    ) -> Result<Self> {
        if cells.len() != axis1.len() || cells.iter().any(|row| row.len() != axis2.len()) {
            return Err(VsaError::invalid("grid cells do not match axis lengths"));
        }
        Ok(Self {
            axis1_name: axis1_name.into(),
            axis1,
            axis2_name: axis2_name.into(),
            axis2,
            cells,
            metric: metric.into(),
            trials: 0,
            seed: 0,
            value_range: None,
        })
    }

    pub fn get(&self, a1: usize, a2: usize) -> Option<f64> {
        let i = self.axis1.iter().position(|&v| v == a1)?;
        let j = self.axis2.iter().position(|&v| v == a2)?;
        Some(self.cells[i][j])
    }

    /// `(axis1, axis2, value)` for every cell, row-major.
    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.axis1.iter().enumerate().flat_map(move |(i, &a)| {
            self.axis2
                .iter()
                .enumerate()
                .map(move |(j, &b)| (a, b, self.cells[i][j]))
        })
    }

    pub fn non_finite_cells(&self) -> Vec<(usize, usize)> {
        self.iter_cells()
            .filter(|c| !c.2.is_finite())
            .map(|c| (c.0, c.1))
            .collect()
    }
}
