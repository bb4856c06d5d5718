//! Candidate fixed-point data: a half dimension `n` and a labelled list of
//! isolated fixed points, each carrying its `n` isotropy weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("{field}: weight 0 is not allowed (fixed points are isolated)")]
    ZeroWeight { field: String },
    #[error("multiplicity of 0 is undefined")]
    ZeroLookup,
    #[error("half_dim must be positive")]
    ZeroHalfDim,
    #[error("at least one fixed point is required")]
    NoPoints,
    #[error("{field}: fixed point id must be nonempty")]
    EmptyId { field: String },
    #[error("{field}: duplicate fixed point id {id:?}")]
    DuplicateId { field: String, id: String },
    #[error("{field}: expected {expected} weights, found {found}")]
    WrongWeightCount { field: String, expected: usize, found: usize },
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
}

/// Finite multiset of nonzero integers, stored sorted ascending. Equality,
/// ordering and hashing all go through the sorted list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightMultiset(Vec<i64>);

impl WeightMultiset {
    pub fn new(mut weights: Vec<i64>) -> Result<Self, ModelError> {
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(ModelError::ZeroWeight { field: format!("weights[{pos}]") });
        }
        weights.sort_unstable();
        Ok(Self(weights))
    }

    /// Caller guarantees the list is sorted and zero-free.
    pub(crate) fn from_sorted_unchecked(weights: Vec<i64>) -> Self {
        debug_assert!(weights.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(!weights.contains(&0));
        Self(weights)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `N(ℓ)`, the multiplicity of `ell`.
    pub fn multiplicity(&self, ell: i64) -> Result<usize, ModelError> {
        if ell == 0 {
            return Err(ModelError::ZeroLookup);
        }
        Ok(self.count(ell))
    }

    pub(crate) fn count(&self, ell: i64) -> usize {
        let lo = self.0.partition_point(|&w| w < ell);
        let hi = self.0.partition_point(|&w| w <= ell);
        hi - lo
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn negative_count(&self) -> usize {
        self.0.partition_point(|&w| w < 0)
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().map(|&w| BigInt::from(w)).product()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().rev().map(|w| -w).collect())
    }

    /// Residues in `[0, |m|)`, sorted. `m` must be nonzero.
    pub fn residues(&self, m: i64) -> Vec<i64> {
        let m = m.abs();
        let mut r: Vec<i64> = self.0.iter().map(|w| w.rem_euclid(m)).collect();
        r.sort_unstable();
        r
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    /// Distinct values with their multiplicities.
    pub fn counts(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &w in &self.0 {
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    pub id: String,
    pub weights: WeightMultiset,
}

impl FixedPoint {
    pub fn new(id: impl Into<String>, weights: Vec<i64>) -> Result<Self, ModelError> {
        let id = id.into();
        if id.is_empty() {
            return Err(ModelError::EmptyId { field: "id".into() });
        }
        Ok(Self { id, weights: WeightMultiset::new(weights)? })
    }

    /// `c_1(M)(p)`: the sum of the weights.
    pub fn chern_one(&self) -> i64 {
        self.weights.sum()
    }

    /// `λ_p`: number of negative weights, with multiplicity.
    pub fn lambda_neg(&self) -> usize {
        self.weights.negative_count()
    }

    /// `Λ_p`: product of the weights.
    pub fn weight_product(&self) -> BigInt {
        self.weights.product()
    }

    /// `N_p(ℓ)`.
    pub fn multiplicity(&self, ell: i64) -> Result<usize, ModelError> {
        self.weights.multiplicity(ell)
    }
}

/// Validated fixed-point data. Construction enforces a positive half
/// dimension, a nonempty point list, unique nonempty ids and exactly `n`
/// nonzero weights per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointData {
    half_dim: usize,
    points: Vec<FixedPoint>,
}

impl FixedPointData {
    pub fn new(half_dim: usize, points: Vec<FixedPoint>) -> Result<Self, ModelError> {
        if half_dim == 0 {
            return Err(ModelError::ZeroHalfDim);
        }
        if points.is_empty() {
            return Err(ModelError::NoPoints);
        }
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            let field = format!("fixed_points[{i}]");
            if p.id.is_empty() {
                return Err(ModelError::EmptyId { field: format!("{field}.id") });
            }
            if !seen.insert(p.id.as_str()) {
                return Err(ModelError::DuplicateId { field: format!("{field}.id"), id: p.id.clone() });
            }
            if p.weights.len() != half_dim {
                return Err(ModelError::WrongWeightCount {
                    field: format!("{field}.weights"),
                    expected: half_dim,
                    found: p.weights.len(),
                });
            }
        }
        Ok(Self { half_dim, points })
    }

    /// Builds data from bare weight lists, labelling points `p0, p1, ...`.
    pub fn from_weights(half_dim: usize, weights: Vec<Vec<i64>>) -> Result<Self, ModelError> {
        let points = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                FixedPoint::new(format!("p{i}"), w).map_err(|e| match e {
                    ModelError::ZeroWeight { field } => {
                        ModelError::ZeroWeight { field: format!("fixed_points[{i}].{field}") }
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(half_dim, points)
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// gcd of every weight at every point.
    pub fn weight_gcd(&self) -> i64 {
        self.points
            .iter()
            .flat_map(|p| p.weights.as_slice())
            .fold(0i64, |g, &w| g.gcd(&w))
    }

    /// Divides every weight by the overall gcd. Returns a clone when the gcd
    /// is already 1.
    pub fn normalize_effective(&self) -> Self {
        let g = self.weight_gcd();
        if g <= 1 {
            return self.clone();
        }
        let points = self
            .points
            .iter()
            .map(|p| FixedPoint {
                id: p.id.clone(),
                weights: WeightMultiset::from_sorted_unchecked(
                    p.weights.as_slice().iter().map(|w| w / g).collect(),
                ),
            })
            .collect();
        Self { half_dim: self.half_dim, points }
    }

    /// Every weight negated: the same action with the circle reversed.
    pub fn negated(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| FixedPoint { id: p.id.clone(), weights: p.weights.negated() })
            .collect();
        Self { half_dim: self.half_dim, points }
    }

    /// Sorted weight multisets, ignoring labels.
    pub fn relabel_key(&self) -> Vec<WeightMultiset> {
        let mut key: Vec<WeightMultiset> = self.points.iter().map(|p| p.weights.clone()).collect();
        key.sort();
        key
    }

    /// Representative of the data up to relabelling and global sign: the
    /// smaller of the relabel keys of the data and of its negation.
    pub fn canonical_key(&self) -> Vec<WeightMultiset> {
        let key = self.relabel_key();
        let neg = self.negated().relabel_key();
        key.min(neg)
    }

    /// Canonical data with points relabelled `p0, p1, ...` in key order.
    pub fn canonicalize(&self) -> Self {
        Self::from_key(self.half_dim, self.canonical_key())
    }

    pub(crate) fn from_key(half_dim: usize, key: Vec<WeightMultiset>) -> Self {
        let points = key
            .into_iter()
            .enumerate()
            .map(|(i, weights)| FixedPoint { id: format!("p{i}"), weights })
            .collect();
        Self { half_dim, points }
    }

    pub fn to_document(&self) -> DataDocument {
        DataDocument {
            half_dim: self.half_dim,
            fixed_points: self
                .points
                .iter()
                .map(|p| PointDocument { id: p.id.clone(), weights: p.weights.as_slice().to_vec() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let doc: DataDocument = serde_json::from_str(text).map_err(|e| ModelError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.into_data()
    }
}

impl fmt::Display for FixedPointData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:", self.half_dim)?;
        for p in &self.points {
            write!(f, " {}={}", p.id, p.weights)?;
        }
        Ok(())
    }
}

/// On-disk form: `{"half_dim": n, "fixed_points": [{"id": "p", "weights": [...]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataDocument {
    pub half_dim: usize,
    pub fixed_points: Vec<PointDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub id: String,
    pub weights: Vec<i64>,
}

impl DataDocument {
    pub fn into_data(self) -> Result<FixedPointData, ModelError> {
        let mut points = Vec::with_capacity(self.fixed_points.len());
        for (i, p) in self.fixed_points.into_iter().enumerate() {
            if let Some(j) = p.weights.iter().position(|&w| w == 0) {
                return Err(ModelError::ZeroWeight { field: format!("fixed_points[{i}].weights[{j}]") });
            }
            if p.id.is_empty() {
                return Err(ModelError::EmptyId { field: format!("fixed_points[{i}].id") });
            }
            points.push(FixedPoint::new(p.id, p.weights)?);
        }
        FixedPointData::new(self.half_dim, points)
    }
}
