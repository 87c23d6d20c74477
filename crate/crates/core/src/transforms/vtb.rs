use crate::error::{ensure_same_dim, Result, VsaError};
use crate::vector::HyperVector;

/// The VTB matrix `V_y = d^{1/4} · (I_{d′} ⊗ Y)`, where `Y` is `y` reshaped
/// row-major into a `d′ × d′` block and `d′ = √d`.
///
/// Only the single block is stored; `apply` costs `Θ(d·d′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonalOperator {
    block: Vec<f64>,
    side: usize,
    scale: f64,
}

/// Exact integer square root, if `d` is a perfect square.
pub(crate) fn exact_sqrt(d: usize) -> Option<usize> {
    let r = (d as f64).sqrt().round() as usize;
    (r * r == d).then_some(r)
}

pub fn vtb_operator(y: &HyperVector) -> Result<BlockDiagonalOperator> {
    let d = y.dim();
    let side = exact_sqrt(d).ok_or(VsaError::NotPerfectSquare(d))?;
    Ok(BlockDiagonalOperator {
        block: y.as_slice().to_vec(),
        side,
        scale: (d as f64).powf(0.25),
    })
}

impl BlockDiagonalOperator {
    /// Side length `d′` of the repeated block.
    pub fn block_side(&self) -> usize {
        self.side
    }

    pub fn block_count(&self) -> usize {
        self.side
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The block in row-major order (unscaled).
    pub fn block(&self) -> &[f64] {
        &self.block
    }

    pub fn dim(&self) -> usize {
        self.side * self.side
    }

    /// `V_y · x`.
    pub fn apply(&self, x: &HyperVector) -> Result<HyperVector> {
        self.apply_impl(x, false)
    }

    /// `V_yᵀ · x`.
    pub fn apply_transpose(&self, x: &HyperVector) -> Result<HyperVector> {
        self.apply_impl(x, true)
    }

    fn apply_impl(&self, x: &HyperVector, transpose: bool) -> Result<HyperVector> {
        ensure_same_dim(self.dim(), x.dim())?;
        let n = self.side;
        let mut out = vec![0.0; n * n];
        for (chunk, dst) in x.as_slice().chunks_exact(n).zip(out.chunks_exact_mut(n)) {
            for (r, o) in dst.iter_mut().enumerate() {
                let acc: f64 = if transpose {
                    (0..n).map(|c| self.block[c * n + r] * chunk[c]).sum()
                } else {
                    self.block[r * n..(r + 1) * n]
                        .iter()
                        .zip(chunk)
                        .map(|(b, v)| b * v)
                        .sum()
                };
                *o = self.scale * acc;
            }
        }
        Ok(HyperVector::from_raw(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(v: &[f64]) -> HyperVector {
        HyperVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_block_scales_by_root_two() {
        let op = vtb_operator(&hv(&[1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(op.block_count(), 2);
        let x = hv(&[0.5, -1.0, 2.0, 3.0]);
        let out = op.apply(&x).unwrap();
        for (o, v) in out.iter().zip(x.iter()) {
            assert!((o - 2f64.sqrt() * v).abs() < 1e-15);
        }
    }

    #[test]
    fn first_basis_picks_first_block_column() {
        let (a, b, c, d) = (1.5, -2.0, 0.25, 4.0);
        let op = vtb_operator(&hv(&[a, b, c, d])).unwrap();
        let out = op.apply(&HyperVector::basis(4, 0).unwrap()).unwrap();
        let s = 2f64.sqrt();
        assert_eq!(out.as_slice(), &[s * a, s * c, 0.0, 0.0]);
        let back = op
            .apply_transpose(&HyperVector::basis(4, 0).unwrap())
            .unwrap();
        assert_eq!(back.as_slice(), &[s * a, s * b, 0.0, 0.0]);
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            vtb_operator(&hv(&[1.0; 8])),
            Err(VsaError::NotPerfectSquare(8))
        ));
        let op = vtb_operator(&hv(&[1.0; 9])).unwrap();
        assert!(op.apply(&hv(&[1.0; 4])).is_err());
    }

    #[test]
    fn perfect_square_detection() {
        assert_eq!(exact_sqrt(1024), Some(32));
        assert_eq!(exact_sqrt(1), Some(1));
        assert_eq!(exact_sqrt(1023), None);
    }

    #[test]
    fn transpose_round_trip_cosine_is_one_over_root_two() {
        // √d·YᵀY is a square Wishart matrix; for aspect ratio one its spectrum
        // has E[λ] = 1 and E[λ²] = 2, so cos(Wx, x) concentrates at 1/√2.
        use crate::models::{BindingModel, ModelKind};
        use crate::similarity::cosine;
        let model = BindingModel::new(ModelKind::Vtb, 1024).unwrap();
        let mut rng = crate::seed::SeedSpec::new(1, "vtb-round-trip").stream();
        let cosines: Vec<f64> = (0..100)
            .map(|_| {
                let (x, y) = (model.sample(&mut rng), model.sample(&mut rng));
                let op = vtb_operator(&y).unwrap();
                cosine(&op.apply_transpose(&op.apply(&x).unwrap()).unwrap(), &x).unwrap()
            })
            .collect();
        let mean = cosines.iter().sum::<f64>() / cosines.len() as f64;
        assert!(
            (mean - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.02,
            "mean {mean}"
        );
        assert!(cosines.iter().all(|&c| c > 0.6));
    }
}
