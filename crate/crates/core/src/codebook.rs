//! Named item memory with nearest-neighbour cleanup.

use std::collections::HashMap;
use std::path::Path;

use rand::Rng;
use serde_json::{Map, Value};

use crate::error::{ensure_same_dim, Result, VsaError};
use crate::models::{BindingModel, ModelKind};
use crate::similarity::{dot_slices, Metric};
use crate::vector::HyperVector;

/// Ordered `name → vector` map bound to one model. Names are unique and all
/// entries share the model's dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    model: BindingModel,
    names: Vec<String>,
    vectors: Vec<HyperVector>,
    index: HashMap<String, usize>,
}

impl Codebook {
    pub fn new(model: BindingModel) -> Self {
        Self {
            model,
            names: Vec::new(),
            vectors: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// A codebook of freshly sampled vectors, one per name.
    pub fn random<R, I, S>(model: BindingModel, names: I, rng: &mut R) -> Result<Self>
    where
        R: Rng + ?Sized,
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut cb = Self::new(model);
        for name in names {
            let v = model.sample(rng);
            cb.insert(name, v)?;
        }
        Ok(cb)
    }

    pub fn model(&self) -> &BindingModel {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn insert(&mut self, name: impl Into<String>, vector: HyperVector) -> Result<()> {
        let name = name.into();
        ensure_same_dim(self.dim(), vector.dim())?;
        if self.index.contains_key(&name) {
            return Err(VsaError::DuplicateSymbol(name));
        }
        self.index.insert(name.clone(), self.vectors.len());
        self.names.push(name);
        self.vectors.push(vector);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&HyperVector> {
        self.index.get(name).map(|&i| &self.vectors[i])
    }

    pub fn require(&self, name: &str) -> Result<&HyperVector> {
        self.get(name)
            .ok_or_else(|| VsaError::UnknownSymbol(name.to_string()))
    }

    pub fn name_at(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn vectors(&self) -> &[HyperVector] {
        &self.vectors
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &HyperVector)> {
        self.names.iter().map(String::as_str).zip(&self.vectors)
    }

    /// Name and score of the best-matching entry.
    pub fn nearest(&self, query: &HyperVector, metric: Metric) -> Result<(&str, f64)> {
        let (i, score) = self.nearest_index(query, metric)?;
        Ok((&self.names[i], score))
    }

    /// Index and score of the entry maximizing `metric`; the earliest entry
    /// wins ties.
    pub fn nearest_index(&self, query: &HyperVector, metric: Metric) -> Result<(usize, f64)> {
        let scores = self.scores(query, metric)?;
        let mut best = (0, scores[0]);
        for (i, &s) in scores.iter().enumerate().skip(1) {
            if s > best.1 {
                best = (i, s);
            }
        }
        Ok(best)
    }

    /// Scores of `query` against every entry, in insertion order.
    pub fn scores(&self, query: &HyperVector, metric: Metric) -> Result<Vec<f64>> {
        if self.is_empty() {
            return Err(VsaError::Empty("codebook"));
        }
        ensure_same_dim(self.dim(), query.dim())?;
        let q = query.as_slice();
        match metric {
            Metric::Dot => Ok(self
                .vectors
                .iter()
                .map(|v| dot_slices(q, v.as_slice()))
                .collect()),
            Metric::Cosine => {
                let qn = query.norm();
                if qn == 0.0 {
                    return Err(VsaError::ZeroNorm);
                }
                self.vectors
                    .iter()
                    .map(|v| {
                        let vn = v.norm();
                        if vn == 0.0 {
                            Err(VsaError::ZeroNorm)
                        } else {
                            Ok(dot_slices(q, v.as_slice()) / (qn * vn))
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Map::new();
        for (name, v) in self.iter() {
            entries.insert(name.to_string(), Value::from(v.as_slice().to_vec()));
        }
        let mut obj = Map::new();
        obj.insert("model".into(), Value::from(self.model.kind().name()));
        obj.insert("d".into(), Value::from(self.dim()));
        obj.insert(
            "mu".into(),
            self.model.hlb_mu().map_or(Value::Null, Value::from),
        );
        obj.insert("entries".into(), Value::Object(entries));
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("codebook JSON is always serializable")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| VsaError::Parse("codebook must be a JSON object".into()))?;
        let field = |k: &str| {
            obj.get(k)
                .ok_or_else(|| VsaError::Parse(format!("missing `{k}`")))
        };
        let kind: ModelKind = field("model")?
            .as_str()
            .ok_or_else(|| VsaError::Parse("`model` must be a string".into()))?
            .parse()?;
        let d = field("d")?
            .as_u64()
            .ok_or_else(|| VsaError::Parse("`d` must be a non-negative integer".into()))?
            as usize;
        let model = match obj.get("mu") {
            None | Some(Value::Null) => BindingModel::new(kind, d)?,
            Some(mu) => {
                let mu = mu
                    .as_f64()
                    .ok_or_else(|| VsaError::Parse("`mu` must be a number or null".into()))?;
                BindingModel::with_mu(kind, d, mu)?
            }
        };
        let entries = field("entries")?
            .as_object()
            .ok_or_else(|| VsaError::Parse("`entries` must be an object".into()))?;
        let mut cb = Codebook::new(model);
        for (name, v) in entries {
            let data = v
                .as_array()
                .ok_or_else(|| VsaError::Parse(format!("entry `{name}` must be an array")))?
                .iter()
                .map(|x| {
                    x.as_f64()
                        .ok_or_else(|| VsaError::Parse(format!("entry `{name}` has a non-number")))
                })
                .collect::<Result<Vec<f64>>>()?;
            cb.insert(name.clone(), HyperVector::new(data)?)?;
        }
        Ok(cb)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::SeedSpec;

    fn hv(v: &[f64]) -> HyperVector {
        HyperVector::new(v.to_vec()).unwrap()
    }

    fn small() -> Codebook {
        let mut cb = Codebook::new(BindingModel::new(ModelKind::MapC, 2).unwrap());
        cb.insert("a", hv(&[1.0, 0.0])).unwrap();
        cb.insert("b", hv(&[0.0, 2.0])).unwrap();
        cb.insert("c", hv(&[-1.0, 0.5])).unwrap();
        cb
    }

    #[test]
    fn exact_query_finds_itself() {
        let cb = small();
        let (name, score) = cb.nearest(&hv(&[0.0, 2.0]), Metric::Cosine).unwrap();
        assert_eq!(name, "b");
        assert!((score - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ties_go_to_first_entry() {
        let mut cb = Codebook::new(BindingModel::new(ModelKind::MapC, 3).unwrap());
        cb.insert("x", hv(&[1.0, 0.0, 0.0])).unwrap();
        cb.insert("y", hv(&[0.0, 1.0, 0.0])).unwrap();
        let (name, score) = cb.nearest(&hv(&[0.0, 0.0, 1.0]), Metric::Dot).unwrap();
        assert_eq!((name, score), ("x", 0.0));
    }

    #[test]
    fn errors() {
        let empty = Codebook::new(BindingModel::new(ModelKind::MapC, 2).unwrap());
        assert!(matches!(
            empty.nearest(&hv(&[1.0, 0.0]), Metric::Dot),
            Err(VsaError::Empty(_))
        ));
        let mut cb = small();
        assert!(matches!(
            cb.insert("a", hv(&[1.0, 1.0])),
            Err(VsaError::DuplicateSymbol(_))
        ));
        assert!(cb.insert("z", hv(&[1.0])).is_err());
        assert!(cb.nearest(&hv(&[1.0, 0.0, 0.0]), Metric::Dot).is_err());
        assert!(matches!(
            cb.require("nope"),
            Err(VsaError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let model = BindingModel::hlb(16, 0.5).unwrap();
        let mut rng = SeedSpec::new(3, "codebook").stream();
        let cb = Codebook::random(model, ["zeta", "alpha", "mid"], &mut rng).unwrap();
        let text = cb.to_json_string();
        let back = Codebook::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, cb);
        let names: Vec<_> = back.iter().map(|(n, _)| n.to_string()).collect();
        assert_eq!(names, ["zeta", "alpha", "mid"]);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["model"], "hlb");
        assert_eq!(v["mu"], 0.5);
    }

    #[test]
    fn non_hlb_serializes_null_mu() {
        let v = small().to_json();
        assert!(v["mu"].is_null());
        assert_eq!(v["d"], 2);
    }

    #[test]
    fn rejects_malformed_json() {
        let bad = serde_json::json!({"model": "hlb", "d": 2, "mu": null, "entries": {"a": [1.0]}});
        assert!(Codebook::from_json(&bad).is_err());
        let bad = serde_json::json!({"model": "nope", "d": 2, "entries": {}});
        assert!(Codebook::from_json(&bad).is_err());
    }
}
