//! Dense real hypervectors.

use std::fmt;

use crate::error::{ensure_same_dim, Result, VsaError};

/// A dense vector of `d` 64-bit components.
///
/// Construction through [`HyperVector::new`] rejects empty and non-finite
/// input. Arithmetic that divides (HLB or HRR unbinding) may still produce
/// non-finite components from finite operands; use
/// [`HyperVector::is_finite`] to check such results.
#[derive(Clone, PartialEq)]
pub struct HyperVector {
    data: Vec<f64>,
}

impl HyperVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(VsaError::EmptyVector);
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(VsaError::NonFinite { index });
        }
        Ok(Self { data })
    }

    /// Wraps `data` without the finiteness check. `data` must be non-empty.
    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn zeros(d: usize) -> Result<Self> {
        Self::filled(d, 0.0)
    }

    pub fn ones(d: usize) -> Result<Self> {
        Self::filled(d, 1.0)
    }

    pub fn filled(d: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; d])
    }

    /// The standard basis vector `e_index`.
    pub fn basis(d: usize, index: usize) -> Result<Self> {
        if index >= d {
            return Err(VsaError::invalid(format!(
                "basis index {index} out of range for dimension {d}"
            )));
        }
        let mut data = vec![0.0; d];
        data[index] = 1.0;
        Self::new(data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn norm_squared(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn mean_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).sum::<f64>() / self.dim() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Elementwise (Hadamard) product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Elementwise quotient. Zero divisors yield non-finite components.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a / b)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_raw(self.data.iter().map(|v| v * factor).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        ensure_same_dim(self.dim(), other.dim())?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    pub fn sub_assign(&mut self, other: &Self) -> Result<()> {
        ensure_same_dim(self.dim(), other.dim())?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(())
    }

    /// Sum of a nonempty list of equal-dimension vectors, accumulated in order.
    pub fn sum<'a, I>(vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a HyperVector>,
    {
        let mut iter = vectors.into_iter();
        let mut acc = iter.next().ok_or(VsaError::Empty("vector list"))?.clone();
        for v in iter {
            acc.add_assign(v)?;
        }
        Ok(acc)
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        ensure_same_dim(self.dim(), other.dim())?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// `‖self − other‖ / ‖other‖`.
    pub fn relative_error(&self, reference: &Self) -> Result<f64> {
        let diff = self.sub(reference)?;
        let scale = reference.norm();
        if scale == 0.0 {
            return Err(VsaError::ZeroNorm);
        }
        Ok(diff.norm() / scale)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        ensure_same_dim(self.dim(), other.dim())?;
        Ok(Self::from_raw(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }
}

impl fmt::Debug for HyperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 8;
        write!(f, "HyperVector(d={}, [", self.dim())?;
        for (i, v) in self.data.iter().take(SHOWN).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v:.4}")?;
        }
        if self.dim() > SHOWN {
            write!(f, ", ...")?;
        }
        write!(f, "])")
    }
}

impl AsRef<[f64]> for HyperVector {
    fn as_ref(&self) -> &[f64] {
        &self.data
    }
}

impl TryFrom<Vec<f64>> for HyperVector {
    type Error = VsaError;

    fn try_from(data: Vec<f64>) -> Result<Self> {
        Self::new(data)
    }
}
