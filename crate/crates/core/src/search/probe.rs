use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{enumerate, SearchError, SearchSpec, DEFAULT_BUDGET};
use crate::constraints::{check_somewhere_injective, two_point_pattern};
use crate::model::FixedPointData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeName {
    /// No feasible data with a single fixed point.
    NoOnePoint,
    /// Two points: the sphere for `n = 1`, `{a+b,−a,−b}` / `{a,b,−a−b}` for
    /// `n = 3`, nothing otherwise.
    TwoPointClassification,
    /// An odd number of points forces even `n`.
    OddCountParity,
    /// No feasible data with `k ≤ n` has a singleton Chern class fibre.
    SomewhereInjectiveBound,
    /// Lists three-point data without asserting anything.
    ThreePointExplore,
}

impl ProbeName {
    pub const ALL: [ProbeName; 5] = [
        ProbeName::NoOnePoint,
        ProbeName::TwoPointClassification,
        ProbeName::OddCountParity,
        ProbeName::SomewhereInjectiveBound,
        ProbeName::ThreePointExplore,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProbeName::NoOnePoint => "no-one-point",
            ProbeName::TwoPointClassification => "two-point-classification",
            ProbeName::OddCountParity => "odd-count-parity",
            ProbeName::SomewhereInjectiveBound => "somewhere-injective-bound",
            ProbeName::ThreePointExplore => "three-point-explore",
        }
    }
}

impl fmt::Display for ProbeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProbeName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProbeName::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| format!("unknown probe {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeBounds {
    pub max_points: usize,
    pub max_half_dim: usize,
    pub max_weight: i64,
    pub effective_only: bool,
    pub budget: u128,
}

impl ProbeBounds {
    pub fn new(max_points: usize, max_half_dim: usize, max_weight: i64) -> Self {
        Self { max_points, max_half_dim, max_weight, effective_only: true, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    Pass,
    Fail,
    /// Listing only; nothing asserted.
    Exploration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeRun {
    pub points: usize,
    pub half_dim: usize,
    pub max_weight: i64,
    pub feasible: usize,
    #[serde(serialize_with = "serialize_data")]
    pub counterexamples: Vec<FixedPointData>,
    #[serde(serialize_with = "serialize_data")]
    pub listed: Vec<FixedPointData>,
}

fn serialize_data<S: serde::Serializer>(v: &[FixedPointData], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_document()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub name: ProbeName,
    pub bounds: ProbeBounds,
    pub verdict: ProbeVerdict,
    pub runs: Vec<ProbeRun>,
}

impl ProbeReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &FixedPointData> {
        self.runs.iter().flat_map(|r| r.counterexamples.iter())
    }
}

/// Whether a feasible configuration contradicts the probe's conclusion.
fn violates(name: ProbeName, data: &FixedPointData) -> bool {
    let n = data.half_dim();
    let k = data.point_count();
    match name {
        ProbeName::NoOnePoint => k == 1,
        ProbeName::TwoPointClassification => {
            let pts = data.points();
            match n {
                1 => pts[0].weights != pts[1].weights.negated(),
                3 => two_point_pattern(&pts[0].weights, &pts[1].weights).is_none(),
                _ => true,
            }
        }
        ProbeName::OddCountParity => k % 2 == 1 && n % 2 == 1,
        ProbeName::SomewhereInjectiveBound => k <= n && check_somewhere_injective(data).somewhere_injective,
        ProbeName::ThreePointExplore => false,
    }
}

/// `(points, half_dim)` pairs the probe enumerates.
fn cases(name: ProbeName, b: &ProbeBounds) -> Vec<(usize, usize)> {
    let dims = 1..=b.max_half_dim;
    match name {
        ProbeName::NoOnePoint => dims.map(|n| (1, n)).collect(),
        ProbeName::TwoPointClassification => dims.map(|n| (2, n)).collect(),
        ProbeName::OddCountParity => (1..=b.max_points)
            .filter(|k| k % 2 == 1)
            .flat_map(|k| dims.clone().filter(|n| n % 2 == 1).map(move |n| (k, n)))
            .collect(),
        ProbeName::SomewhereInjectiveBound => {
            dims.flat_map(|n| (1..=n.min(b.max_points)).map(move |k| (k, n))).collect()
        }
        ProbeName::ThreePointExplore => dims.map(|n| (3, n)).collect(),
    }
}

/// Runs the enumerations behind one structural statement and checks the
/// statement on every feasible configuration found. Enumerating at weight
/// bound `W` covers every smaller bound.
pub fn theorem_probe(name: ProbeName, bounds: &ProbeBounds) -> Result<ProbeReport, SearchError> {
    let mut runs = Vec::new();
    for (k, n) in cases(name, bounds) {
        let spec = SearchSpec::new(k, n, bounds.max_weight)
            .effective_only(bounds.effective_only)
            .with_budget(bounds.budget);
        let result = enumerate(&spec)?;
        let counterexamples: Vec<FixedPointData> =
            result.configurations.iter().filter(|d| violates(name, d)).cloned().collect();
        let listed = if name == ProbeName::ThreePointExplore { result.configurations.clone() } else { Vec::new() };
        runs.push(ProbeRun {
            points: k,
            half_dim: n,
            max_weight: bounds.max_weight,
            feasible: result.configurations.len(),
            counterexamples,
            listed,
        });
    }
    let verdict = if name == ProbeName::ThreePointExplore {
        ProbeVerdict::Exploration
    } else if runs.iter().all(|r| r.counterexamples.is_empty()) {
        ProbeVerdict::Pass
    } else {
        ProbeVerdict::Fail
    };
    Ok(ProbeReport { name, bounds: bounds.clone(), verdict, runs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in ProbeName::ALL {
            assert_eq!(p.as_str().parse::<ProbeName>().unwrap(), p);
        }
        assert!("nope".parse::<ProbeName>().is_err());
    }

    #[test]
    fn case_lists() {
        let b = ProbeBounds::new(3, 3, 2);
        assert_eq!(cases(ProbeName::OddCountParity, &b), vec![(1, 1), (1, 3), (3, 1), (3, 3)]);
        assert_eq!(
            cases(ProbeName::SomewhereInjectiveBound, &b),
            vec![(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]
        );
    }

    #[test]
    fn no_one_point_small() {
        let r = theorem_probe(ProbeName::NoOnePoint, &ProbeBounds::new(1, 3, 3)).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::Pass);
        assert!(r.runs.iter().all(|x| x.feasible == 0));
    }

    #[test]
    fn odd_parity_small() {
        let r = theorem_probe(ProbeName::OddCountParity, &ProbeBounds::new(3, 3, 3)).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::Pass);
    }

    #[test]
    fn violation_detection() {
        let one = FixedPointData::from_weights(2, vec![vec![1, 2]]).unwrap();
        assert!(violates(ProbeName::NoOnePoint, &one));
        assert!(violates(ProbeName::SomewhereInjectiveBound, &one));
        let tw = FixedPointData::from_weights(3, vec![vec![1, 1, -2], vec![-1, -1, 2]]).unwrap();
        assert!(!violates(ProbeName::TwoPointClassification, &tw));
        let four = FixedPointData::from_weights(4, vec![vec![1, 1, 1, -3], vec![-1, -1, -1, 3]]).unwrap();
        assert!(violates(ProbeName::TwoPointClassification, &four));
    }
}
