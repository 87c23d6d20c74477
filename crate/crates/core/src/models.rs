//! The five binding algebras: HLB, HRR, VTB, MAP-C and MAP-B.
//!
//! | model | bind        | unbind          | init                          |
//! |-------|-------------|-----------------|-------------------------------|
//! | HLB   | `x ⊙ y`     | `x ⊘ y`         | `N(±μ, 1/d)`, sign fair coin  |
//! | HRR   | `F⁻¹(Fx⊙Fy)`| `F⁻¹(Fx⊘Fy)`    | `N(0, 1/d)`                   |
//! | VTB   | `V_y x`     | `V_yᵀ x`        | `N(0, 1)` then unit L2 norm   |
//! | MAP-C | `x ⊙ y`     | `x ⊙ y`         | `U(−1, 1)`                    |
//! | MAP-B | `x ⊙ y`     | `x ⊙ y`         | uniform on `{−1, +1}`         |

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_dim, Result, VsaError};
use crate::transforms::{circ_conv, dft, idft, vtb_operator};
use crate::vector::HyperVector;

/// Default MiND mean magnitude.
pub const DEFAULT_MU: f64 = 1.0;

/// Divisor magnitude below which strict HLB unbinding refuses to divide.
pub const STRICT_DIVISOR_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "hlb")]
    Hlb,
    #[serde(rename = "hrr")]
    Hrr,
    #[serde(rename = "vtb")]
    Vtb,
    #[serde(rename = "map-c")]
    MapC,
    #[serde(rename = "map-b")]
    MapB,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Hlb,
        ModelKind::Hrr,
        ModelKind::Vtb,
        ModelKind::MapC,
        ModelKind::MapB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Hlb => "hlb",
            ModelKind::Hrr => "hrr",
            ModelKind::Vtb => "vtb",
            ModelKind::MapC => "map-c",
            ModelKind::MapB => "map-b",
        }
    }

    /// Whether `bind(x, y) == bind(y, x)`.
    pub fn is_symmetric(self) -> bool {
        self != ModelKind::Vtb
    }

    pub fn supports_dim(self, d: usize) -> bool {
        match self {
            ModelKind::Vtb => crate::transforms::vtb::exact_sqrt(d).is_some(),
            _ => d >= 1,
        }
    }

    /// Parses a comma-separated list; `all` expands to every model.
    pub fn parse_list(s: &str) -> Result<Vec<ModelKind>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                for k in ModelKind::ALL {
                    if !out.contains(&k) {
                        out.push(k);
                    }
                }
            } else {
                let k: ModelKind = part.parse()?;
                if !out.contains(&k) {
                    out.push(k);
                }
            }
        }
        if out.is_empty() {
            return Err(VsaError::Empty("model list"));
        }
        Ok(out)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = VsaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "hlb" => Ok(ModelKind::Hlb),
            "hrr" => Ok(ModelKind::Hrr),
            "vtb" => Ok(ModelKind::Vtb),
            "map-c" | "mapc" => Ok(ModelKind::MapC),
            "map-b" | "mapb" => Ok(ModelKind::MapB),
            other => Err(VsaError::invalid(format!("unknown model `{other}`"))),
        }
    }
}

/// One binding algebra at a fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BindingModel {
    kind: ModelKind,
    d: usize,
    mu: f64,
}

impl BindingModel {
    /// Builds a model; HLB gets the default `μ`.
    pub fn new(kind: ModelKind, d: usize) -> Result<Self> {
        Self::with_mu(kind, d, DEFAULT_MU)
    }

    pub fn hlb(d: usize, mu: f64) -> Result<Self> {
        Self::with_mu(ModelKind::Hlb, d, mu)
    }

    /// `mu` is validated for every kind but only used by HLB.
    pub fn with_mu(kind: ModelKind, d: usize, mu: f64) -> Result<Self> {
        if d == 0 {
            return Err(VsaError::EmptyVector);
        }
        if !kind.supports_dim(d) {
            return Err(VsaError::NotPerfectSquare(d));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(VsaError::invalid(format!(
                "mu must be finite and positive, got {mu}"
            )));
        }
        Ok(Self { kind, d, mu })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `μ` for HLB, `None` for the other models.
    pub fn hlb_mu(&self) -> Option<f64> {
        (self.kind == ModelKind::Hlb).then_some(self.mu)
    }

    /// Draws one vector from the model's initialization distribution.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HyperVector {
        let d = self.d;
        let sd = 1.0 / (d as f64).sqrt();
        let data: Vec<f64> = match self.kind {
            ModelKind::Hlb => (0..d)
                .map(|_| {
                    let mean = if rng.random::<bool>() {
                        -self.mu
                    } else {
                        self.mu
                    };
                    mean + sd * rng.sample::<f64, _>(StandardNormal)
                })
                .collect(),
            ModelKind::Hrr => (0..d)
                .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
                .collect(),
            ModelKind::Vtb => loop {
                let raw: Vec<f64> = (0..d)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect();
                let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm > 0.0 {
                    break raw.into_iter().map(|v| v / norm).collect();
                }
            },
            ModelKind::MapC => (0..d).map(|_| rng.random_range(-1.0..1.0)).collect(),
            ModelKind::MapB => (0..d)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect(),
        };
        HyperVector::from_raw(data)
    }

    pub fn sample_many<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<HyperVector> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    fn check(&self, v: &HyperVector) -> Result<()> {
        ensure_same_dim(self.d, v.dim())
    }

    pub fn bind(&self, x: &HyperVector, y: &HyperVector) -> Result<HyperVector> {
        self.check(x)?;
        self.check(y)?;
        match self.kind {
            ModelKind::Hlb | ModelKind::MapC | ModelKind::MapB => x.mul(y),
            ModelKind::Hrr => circ_conv(x, y),
            ModelKind::Vtb => vtb_operator(y)?.apply(x),
        }
    }

    /// Retrieves from `s` the vector associated with `y`.
    ///
    /// HLB divides elementwise without guarding zero divisors, so the output
    /// can be non-finite; [`BindingModel::unbind_strict`] checks first. HRR
    /// divides spectra and is unstable when a bin of `F(y)` is near zero.
    pub fn unbind(&self, s: &HyperVector, y: &HyperVector) -> Result<HyperVector> {
        self.check(s)?;
        self.check(y)?;
        match self.kind {
            ModelKind::Hlb => s.div(y),
            ModelKind::MapC | ModelKind::MapB => s.mul(y),
            ModelKind::Hrr => Ok(idft(&dft(s).div(&dft(y))?)),
            ModelKind::Vtb => vtb_operator(y)?.apply_transpose(s),
        }
    }

    /// Like [`BindingModel::unbind`], but HLB rejects any divisor component
    /// with magnitude below [`STRICT_DIVISOR_FLOOR`].
    pub fn unbind_strict(&self, s: &HyperVector, y: &HyperVector) -> Result<HyperVector> {
        if self.kind == ModelKind::Hlb {
            if let Some((index, &value)) = y
                .iter()
                .enumerate()
                .find(|(_, v)| v.abs() < STRICT_DIVISOR_FLOOR)
            {
                return Err(VsaError::NearZeroDivisor { index, value });
            }
        }
        self.unbind(s, y)
    }

    /// Sums the bound pairs into a composite.
    pub fn bundle(&self, pairs: &[(HyperVector, HyperVector)]) -> Result<Composite> {
        let (first, rest) = pairs.split_first().ok_or(VsaError::Empty("pair list"))?;
        let mut acc = self.bind(&first.0, &first.1)?;
        for (x, y) in rest {
            acc.add_assign(&self.bind(x, y)?)?;
        }
        Ok(Composite {
            vector: acc,
            rho_hint: Some(pairs.len()),
        })
    }

    /// `b_{t+1} = bind(b_t, x_t)`; returns `[b_1, …, b_p]`.
    pub fn sequential_bind(
        &self,
        b0: &HyperVector,
        xs: &[HyperVector],
    ) -> Result<Vec<HyperVector>> {
        self.check(b0)?;
        let mut out = Vec::with_capacity(xs.len());
        let mut current = b0.clone();
        for x in xs {
            current = self.bind(&current, x)?;
            out.push(current.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for BindingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hlb_mu() {
            Some(mu) => write!(f, "{}(d={}, mu={})", self.kind, self.d, mu),
            None => write!(f, "{}(d={})", self.kind, self.d),
        }
    }
}

/// A sum of bound pairs, optionally tagged with how many pairs went in.
#[derive(Debug, Clone, PartialEq)]
pub struct Composite {
    pub vector: HyperVector,
    pub rho_hint: Option<usize>,
}

impl Composite {
    pub fn new(vector: HyperVector, rho_hint: Option<usize>) -> Result<Self> {
        if rho_hint == Some(0) {
            return Err(VsaError::invalid("rho hint must be at least 1"));
        }
        Ok(Self { vector, rho_hint })
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::SeedSpec;
    use crate::similarity::cosine;

    fn rng(tag: u64) -> crate::seed::Stream {
        SeedSpec::new(tag, "models-unit").stream()
    }

    #[test]
    fn hlb_identity_and_exact_inverse() {
        let m = BindingModel::hlb(1024, 1.0).unwrap();
        let mut r = rng(1);
        let x = m.sample(&mut r);
        let y = m.sample(&mut r);
        assert_eq!(m.bind(&x, &HyperVector::ones(1024).unwrap()).unwrap(), x);
        let back = m.unbind(&m.bind(&x, &y).unwrap(), &y).unwrap();
        assert!(back.relative_error(&x).unwrap() < 1e-10);
    }

    #[test]
    fn hrr_convolution_identity() {
        let m = BindingModel::new(ModelKind::Hrr, 64).unwrap();
        let x = m.sample(&mut rng(2));
        let out = m.bind(&x, &HyperVector::basis(64, 0).unwrap()).unwrap();
        assert!(out.relative_error(&x).unwrap() < 1e-12);
    }

    #[test]
    fn map_b_self_binding_and_inverse() {
        let m = BindingModel::new(ModelKind::MapB, 256).unwrap();
        let mut r = rng(3);
        let x = m.sample(&mut r);
        let y = m.sample(&mut r);
        assert!(x.iter().all(|v| *v == 1.0 || *v == -1.0));
        assert_eq!(m.bind(&x, &x).unwrap(), HyperVector::ones(256).unwrap());
        assert_eq!(m.unbind(&m.bind(&x, &y).unwrap(), &y).unwrap(), x);
    }

    #[test]
    fn map_c_inverse_is_approximate() {
        let m = BindingModel::new(ModelKind::MapC, 1024).unwrap();
        let mut r = rng(4);
        let mut total = 0.0;
        for _ in 0..100 {
            let x = m.sample(&mut r);
            let y = m.sample(&mut r);
            let back = m.unbind(&m.bind(&x, &y).unwrap(), &y).unwrap();
            assert_ne!(back, x);
            total += cosine(&back, &x).unwrap();
        }
        // E[cos] for x⊙y² against x is ~0.745 at this size.
        assert!(total / 100.0 > 0.5, "mean cosine {}", total / 100.0);
    }

    #[test]
    fn vtb_sample_is_unit_norm_and_needs_square_dim() {
        let m = BindingModel::new(ModelKind::Vtb, 256).unwrap();
        let x = m.sample(&mut rng(5));
        assert!((x.norm() - 1.0).abs() < 1e-12);
        assert!(matches!(
            BindingModel::new(ModelKind::Vtb, 128),
            Err(VsaError::NotPerfectSquare(128))
        ));
        assert!(BindingModel::new(ModelKind::Hlb, 100).is_ok());
    }

    #[test]
    fn invalid_mu_rejected() {
        assert!(BindingModel::hlb(16, 0.0).is_err());
        assert!(BindingModel::hlb(16, f64::NAN).is_err());
        assert!(BindingModel::hlb(16, -1.0).is_err());
        assert!(BindingModel::hlb(0, 1.0).is_err());
    }

    #[test]
    fn hlb_sample_matches_mind_moments() {
        let d = 4096;
        let mu = 1.0;
        let x = BindingModel::hlb(d, mu).unwrap().sample(&mut rng(6));
        let n = d as f64;
        let mean = x.iter().sum::<f64>() / n;
        // component variance is mu² + 1/d
        let sigma = ((mu * mu + 1.0 / n) / n).sqrt();
        assert!(mean.abs() < 3.0 * sigma, "mean {mean}");
        let abs_sigma = (1.0 / n / n).sqrt();
        assert!(
            (x.mean_abs() - mu).abs() < 3.0 * abs_sigma,
            "mean |x| {}",
            x.mean_abs()
        );
        let expected_norm = (mu * mu * n).sqrt();
        assert!((x.norm() / expected_norm - 1.0).abs() < 0.02);
    }

    #[test]
    fn strict_unbind_rejects_tiny_divisors() {
        let m = BindingModel::hlb(4, 1.0).unwrap();
        let s = HyperVector::ones(4).unwrap();
        let y = HyperVector::new(vec![1.0, 1e-9, 1.0, 1.0]).unwrap();
        assert!(matches!(
            m.unbind_strict(&s, &y),
            Err(VsaError::NearZeroDivisor { index: 1, .. })
        ));
        let zero = HyperVector::new(vec![1.0, 0.0, 1.0, 1.0]).unwrap();
        assert!(!m.unbind(&s, &zero).unwrap().is_finite());
        assert!(m.unbind_strict(&s, &HyperVector::ones(4).unwrap()).is_ok());
    }

    #[test]
    fn bundle_cases() {
        let m = BindingModel::hlb(64, 1.0).unwrap();
        let mut r = rng(7);
        let pairs: Vec<_> = (0..2)
            .map(|_| (m.sample(&mut r), m.sample(&mut r)))
            .collect();
        let single = m.bundle(&pairs[..1]).unwrap();
        assert_eq!(single.rho_hint, Some(1));
        assert_eq!(single.vector, m.bind(&pairs[0].0, &pairs[0].1).unwrap());

        let chi = m.bundle(&pairs).unwrap();
        let got = m.unbind(&chi.vector, &pairs[0].1).unwrap();
        let noise = pairs[1]
            .0
            .mul(&pairs[1].1)
            .unwrap()
            .div(&pairs[0].1)
            .unwrap();
        let want = pairs[0].0.add(&noise).unwrap();
        assert!(got.max_abs_diff(&want).unwrap() < 1e-12);

        let reversed: Vec<_> = pairs.iter().rev().cloned().collect();
        let chi_rev = m.bundle(&reversed).unwrap();
        assert!(chi_rev.vector.max_abs_diff(&chi.vector).unwrap() < 1e-12);
        assert!(m.bundle(&[]).is_err());
    }

    #[test]
    fn sequential_bind_hlb_is_stable_in_random_mode() {
        let d = 1024;
        let m = BindingModel::hlb(d, 1.0).unwrap();
        let mut r = rng(8);
        let b0 = m.sample(&mut r);
        let xs = m.sample_many(50, &mut r);
        let bs = m.sequential_bind(&b0, &xs).unwrap();
        assert_eq!(bs.len(), 50);
        let mut prev = b0;
        for (t, b) in bs.iter().enumerate() {
            let back = m.unbind(b, &xs[t]).unwrap();
            assert!((cosine(&back, &prev).unwrap() - 1.0).abs() < 1e-9);
            assert!((b.norm() / (d as f64).sqrt() - 1.0).abs() < 0.05);
            prev = b.clone();
        }
    }

    #[test]
    fn auto_binding_map_b_returns_every_second_step() {
        let m = BindingModel::new(ModelKind::MapB, 64).unwrap();
        let mut r = rng(9);
        let b0 = m.sample(&mut r);
        let x = m.sample(&mut r);
        let bs = m.sequential_bind(&b0, &vec![x; 10]).unwrap();
        for k in (1..10).step_by(2) {
            assert_eq!(bs[k], b0);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = BindingModel::hlb(8, 1.0).unwrap();
        let a = HyperVector::ones(8).unwrap();
        let b = HyperVector::ones(4).unwrap();
        assert!(m.bind(&a, &b).is_err());
        assert!(m.unbind(&b, &a).is_err());
        assert!(m.sequential_bind(&b, &[a]).is_err());
    }

    #[test]
    fn parse_model_lists() {
        assert_eq!(ModelKind::parse_list("all").unwrap().len(), 5);
        assert_eq!(
            ModelKind::parse_list("hlb,map-c,hlb").unwrap(),
            vec![ModelKind::Hlb, ModelKind::MapC]
        );
        assert!(ModelKind::parse_list("hlb,tpr").is_err());
        assert!(ModelKind::parse_list("").is_err());
    }
}
