use std::cell::RefCell;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{ensure_same_dim, Result, VsaError};
use crate::vector::HyperVector;

/// Paired real/imaginary parts of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexVector {
    pub fn new(re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        ensure_same_dim(re.len(), im.len())?;
        if re.is_empty() {
            return Err(VsaError::EmptyVector);
        }
        if let Some(index) = re.iter().chain(&im).position(|v| !v.is_finite()) {
            return Err(VsaError::NonFinite {
                index: index % re.len(),
            });
        }
        Ok(Self { re, im })
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    /// Smallest bin magnitude; near-zero bins make spectral division unstable.
    pub fn min_magnitude(&self) -> f64 {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| r.hypot(*i))
            .fold(f64::INFINITY, f64::min)
    }

    fn from_complex(buf: &[Complex<f64>]) -> Self {
        Self {
            re: buf.iter().map(|c| c.re).collect(),
            im: buf.iter().map(|c| c.im).collect(),
        }
    }

    fn to_complex(&self) -> Vec<Complex<f64>> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex::new(re, im))
            .collect()
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<f64>, Complex<f64>) -> Complex<f64>,
    ) -> Result<Self> {
        ensure_same_dim(self.len(), other.len())?;
        let out: Vec<_> = self
            .to_complex()
            .into_iter()
            .zip(other.to_complex())
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self::from_complex(&out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Binwise quotient; zero bins in `other` give non-finite output.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a / b)
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn transform(buf: &mut [Complex<f64>], inverse: bool) {
    PLANNER.with(|planner| {
        let mut planner = planner.borrow_mut();
        let fft = if inverse {
            planner.plan_fft_inverse(buf.len())
        } else {
            planner.plan_fft_forward(buf.len())
        };
        fft.process(buf);
    });
}

/// Forward DFT, `X_k = Σ_j x_j e^{-2πi jk/d}`, for any length.
pub fn dft(x: &HyperVector) -> ComplexVector {
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    transform(&mut buf, false);
    ComplexVector::from_complex(&buf)
}

/// Inverse DFT (with the `1/d` factor), keeping the real part.
pub fn idft(spectrum: &ComplexVector) -> HyperVector {
    let mut buf = spectrum.to_complex();
    transform(&mut buf, true);
    let scale = 1.0 / buf.len() as f64;
    HyperVector::from_raw(buf.iter().map(|c| c.re * scale).collect())
}

/// Circular convolution through the spectral product.
pub fn circ_conv(x: &HyperVector, y: &HyperVector) -> Result<HyperVector> {
    ensure_same_dim(x.dim(), y.dim())?;
    Ok(idft(&dft(x).mul(&dft(y))?))
}

/// Direct `O(d²)` circular convolution `z_k = Σ_j x_j y_{(k−j) mod d}`.
pub fn circ_conv_naive(x: &HyperVector, y: &HyperVector) -> Result<HyperVector> {
    ensure_same_dim(x.dim(), y.dim())?;
    let d = x.dim();
    let (xs, ys) = (x.as_slice(), y.as_slice());
    let out = (0..d)
        .map(|k| (0..d).map(|j| xs[j] * ys[(k + d - j) % d]).sum())
        .collect();
    Ok(HyperVector::from_raw(out))
}
