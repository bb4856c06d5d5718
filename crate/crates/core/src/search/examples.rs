use std::collections::BTreeSet;

use crate::model::{FixedPoint, FixedPointData, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecipeError {
    #[error("sphere weight must be at least 1, got {0}")]
    SphereWeight(i64),
    #[error("projective recipe needs at least two parameters")]
    ProjectiveTooSmall,
    #[error("projective parameters must be distinct; {0} repeats")]
    RepeatedParameter(i64),
    #[error("product needs at least one factor")]
    EmptyProduct,
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters {0:?}")]
    BadParams(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Known actions whose fixed-point data must pass every check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleRecipe {
    /// Rotation of `S²` at speed `a`: weights `{a}` and `{−a}`.
    Sphere(i64),
    /// Linear action on `CP^n` with parameters `a_0..a_n`; the fixed point
    /// `p_i` has weights `{a_j − a_i : j ≠ i}`.
    Projective(Vec<i64>),
    /// Diagonal action on a product.
    Product(Vec<ExampleRecipe>),
}

impl ExampleRecipe {
    /// `family` is `sphere`, `cpn` or `product`. Product factors are
    /// `family:params` separated by `;`, e.g. `sphere:1;cpn:0,1,2`.
    pub fn from_family(family: &str, params: &str) -> Result<Self, RecipeError> {
        let ints = |s: &str| -> Result<Vec<i64>, RecipeError> {
            s.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| RecipeError::BadParams(s.to_string())))
                .collect()
        };
        match family.trim() {
            "sphere" => match ints(params)?.as_slice() {
                [a] => Ok(ExampleRecipe::Sphere(*a)),
                _ => Err(RecipeError::BadParams(params.to_string())),
            },
            "cpn" | "projective" => Ok(ExampleRecipe::Projective(ints(params)?)),
            "product" => {
                let factors = params
                    .split(';')
                    .filter(|f| !f.trim().is_empty())
                    .map(|f| {
                        let (fam, p) = f.split_once(':').ok_or_else(|| RecipeError::BadParams(f.to_string()))?;
                        Self::from_family(fam, p)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ExampleRecipe::Product(factors))
            }
            other => Err(RecipeError::UnknownFamily(other.to_string())),
        }
    }
}

/// Fixed points as (id, weights) before validation.
fn raw_points(recipe: &ExampleRecipe) -> Result<Vec<(String, Vec<i64>)>, RecipeError> {
    match recipe {
        ExampleRecipe::Sphere(a) => {
            if *a < 1 {
                return Err(RecipeError::SphereWeight(*a));
            }
            Ok(vec![("p0".into(), vec![*a]), ("p1".into(), vec![-*a])])
        }
        ExampleRecipe::Projective(params) => {
            if params.len() < 2 {
                return Err(RecipeError::ProjectiveTooSmall);
            }
            let mut seen = BTreeSet::new();
            for &a in params {
                if !seen.insert(a) {
                    return Err(RecipeError::RepeatedParameter(a));
                }
            }
            Ok(params
                .iter()
                .enumerate()
                .map(|(i, ai)| {
                    let w = params.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, aj)| aj - ai).collect();
                    (format!("p{i}"), w)
                })
                .collect())
        }
        ExampleRecipe::Product(factors) => {
            let (first, rest) = factors.split_first().ok_or(RecipeError::EmptyProduct)?;
            let mut acc = raw_points(first)?;
            for f in rest {
                let next = raw_points(f)?;
                acc = acc
                    .iter()
                    .flat_map(|(id_a, w_a)| {
                        next.iter().map(move |(id_b, w_b)| {
                            (format!("{id_a}.{id_b}"), w_a.iter().chain(w_b).copied().collect())
                        })
                    })
                    .collect();
            }
            Ok(acc)
        }
    }
}

pub fn generate_example(recipe: &ExampleRecipe) -> Result<FixedPointData, RecipeError> {
    let raw = raw_points(recipe)?;
    let n = raw[0].1.len();
    let points = raw.into_iter().map(|(id, w)| FixedPoint::new(id, w)).collect::<Result<Vec<_>, _>>()?;
    Ok(FixedPointData::new(n, points)?)
}
