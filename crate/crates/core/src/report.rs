use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis of the condition does not hold for this data.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Registered constraints, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintId {
    /// Grouped sums of `1/Λ_p` over fibres of `c_1` vanish when `c_1` takes
    /// at most `n` values.
    GroupedSums,
    /// Vandermonde consistency between grouped sums and `∫c_1^j`.
    Vandermonde,
    /// Index symmetry `#{λ_p = i} = #{λ_p = n − i}`.
    IndexSymmetry,
    /// `Σ_p N_p(ℓ) = Σ_p N_p(−ℓ)`.
    WeightBalance,
    /// `Σ_p c_1(p) = 0`.
    ChernSum,
    /// Odd point count forces even `n`.
    Parity,
    /// Two-point structure.
    TwoPoint,
    /// Somewhere-injective Chern class map needs `n + 1` points.
    SomewhereInjective,
    /// Low-degree integrals vanish, plus grouped sums for other monomials.
    DegreeBattery,
}

impl ConstraintId {
    pub const ALL: [ConstraintId; 9] = [
        ConstraintId::GroupedSums,
        ConstraintId::Vandermonde,
        ConstraintId::IndexSymmetry,
        ConstraintId::WeightBalance,
        ConstraintId::ChernSum,
        ConstraintId::Parity,
        ConstraintId::TwoPoint,
        ConstraintId::SomewhereInjective,
        ConstraintId::DegreeBattery,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstraintId::GroupedSums => "C-AK",
            ConstraintId::Vandermonde => "C-VDM",
            ConstraintId::IndexSymmetry => "C-IDX",
            ConstraintId::WeightBalance => "C-BAL",
            ConstraintId::ChernSum => "C-C1",
            ConstraintId::Parity => "C-PAR",
            ConstraintId::TwoPoint => "C-2PT",
            ConstraintId::SomewhereInjective => "C-SI",
            ConstraintId::DegreeBattery => "C-DEG",
        }
    }
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown constraint id {0:?}")]
pub struct UnknownConstraint(pub String);

impl FromStr for ConstraintId {
    type Err = UnknownConstraint;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        ConstraintId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownConstraint(s.to_string()))
    }
}

/// Parses a comma-separated id list such as `C-AK,C-BAL`.
pub fn parse_constraint_list(s: &str) -> Result<Vec<ConstraintId>, UnknownConstraint> {
    let mut out: Vec<ConstraintId> = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub witness: String,
}

impl CheckOutcome {
    pub fn new(verdict: Verdict, witness: impl Into<String>) -> Self {
        Self { verdict, witness: witness.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub verdict: Verdict,
    pub witness: String,
}

/// Result of running a set of constraints over one data set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub feasible: bool,
    pub constraints: Vec<ReportEntry>,
    pub advisories: Vec<String>,
}

impl ConstraintReport {
    pub fn entry(&self, id: ConstraintId) -> Option<&ReportEntry> {
        self.constraints.iter().find(|e| e.id == id.as_str())
    }

    pub fn verdict(&self, id: ConstraintId) -> Option<Verdict> {
        self.entry(id).map(|e| e.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.constraints.iter().map(|e| e.id.len()).max().unwrap_or(2).max(2);
        out.push_str(&format!("{:<width$}  {:<14}  witness\n", "id", "verdict"));
        for e in &self.constraints {
            out.push_str(&format!("{:<width$}  {:<14}  {}\n", e.id, e.verdict.as_str(), e.witness));
        }
        out.push_str(&format!("feasible: {}\n", self.feasible));
        for a in &self.advisories {
            out.push_str(&format!("note: {a}\n"));
        }
        out
    }
}
