//! Necessary conditions on fixed-point data of a symplectic circle action
//! with isolated fixed points.
//!
//! Each check returns a [`CheckOutcome`]; a failure always carries a concrete
//! witness. Passing every check certifies nothing beyond the conditions
//! themselves: feasible data need not come from any manifold.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::kernel::{elementary_symmetric_all, format_rational, LaurentPoly, Rational};
use crate::localization::{abbv_integral, value_from_sigma, ChernMonomial};
use crate::model::{FixedPointData, WeightMultiset};
use crate::multiset_lemma::{classify, congruent_to_negation};
use crate::report::{CheckOutcome, ConstraintId, ConstraintReport, ReportEntry, Verdict};

pub const DISCLAIMER: &str = "feasible means every implemented necessary condition holds; \
it does not certify that a symplectic circle action with this data exists";

/// `A_k = Σ_{c_1(p) = k} 1/Λ_p` for every value `k` of the Chern class map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedSums {
    pub sums: BTreeMap<i64, Rational>,
}

impl GroupedSums {
    pub fn range_size(&self) -> usize {
        self.sums.len()
    }
}

pub fn grouped_sums(data: &FixedPointData) -> GroupedSums {
    let mut sums: BTreeMap<i64, Rational> = BTreeMap::new();
    for p in data.points() {
        let inv = Rational::new(BigInt::one(), p.weight_product());
        *sums.entry(p.chern_one()).or_insert_with(Rational::zero) += inv;
    }
    GroupedSums { sums }
}

fn render_set<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// C-AK: when `c_1` takes at most `n` values, every grouped sum vanishes.
pub fn check_grouped_sums(data: &FixedPointData) -> CheckOutcome {
    let n = data.half_dim();
    let g = grouped_sums(data);
    let range = render_set(g.sums.keys());
    if g.range_size() > n {
        return CheckOutcome::new(
            Verdict::NotApplicable,
            format!("c1 range {range} has {} values > n={n}", g.range_size()),
        );
    }
    match g.sums.iter().find(|(_, a)| !a.is_zero()) {
        Some((k, a)) => CheckOutcome::new(
            Verdict::Fail,
            format!("A_{k} = {} != 0 (c1 range {range}, {} <= n={n})", format_rational(a), g.range_size()),
        ),
        None => CheckOutcome::new(Verdict::Pass, format!("A_k = 0 for every k in c1 range {range}")),
    }
}

/// Cross-check of C-AK: for `j < ℓ`, `Σ_i k_i^j A_i` must equal the
/// coefficient of `∫c_1^j` computed by localization.
pub fn check_vandermonde_equivalence(data: &FixedPointData) -> CheckOutcome {
    let n = data.half_dim();
    let g = grouped_sums(data);
    let ell = g.range_size();
    if ell > n {
        return CheckOutcome::new(Verdict::NotApplicable, format!("c1 range has {ell} values > n={n}"));
    }
    for j in 0..ell {
        // row j of B^T·A, with 0^0 = 1
        let lhs: Rational = g
            .sums
            .iter()
            .map(|(k, a)| a * Rational::from_integer(num_traits::pow(BigInt::from(*k), j)))
            .fold(Rational::zero(), |acc, x| acc + x);
        let lhs = LaurentPoly::monomial(lhs, j as i64 - n as i64);
        let mut e = vec![0u32; n];
        e[0] = j as u32;
        let rhs = abbv_integral(data, &ChernMonomial::new(e)).expect("c1 is always in range");
        if lhs != rhs {
            return CheckOutcome::new(
                Verdict::Fail,
                format!("j={j}: sum_k k^j A_k gives {lhs} but integral of c1^{j} is {rhs}"),
            );
        }
    }
    let zero = g.sums.values().all(Zero::is_zero);
    CheckOutcome::new(
        Verdict::Pass,
        format!("{ell}x{ell} Vandermonde system consistent with integrals of c1^j, j<{ell} (solution {})",
            if zero { "zero" } else { "nonzero" }),
    )
}

fn lambda_counts(data: &FixedPointData) -> Vec<usize> {
    let mut counts = vec![0usize; data.half_dim() + 1];
    for p in data.points() {
        counts[p.lambda_neg()] += 1;
    }
    counts
}

/// C-IDX: `#{λ_p = i} = #{λ_p = n − i}` for all `i`.
pub fn check_index_symmetry(data: &FixedPointData) -> CheckOutcome {
    let n = data.half_dim();
    let counts = lambda_counts(data);
    for i in 0..=n / 2 {
        if counts[i] != counts[n - i] {
            return CheckOutcome::new(
                Verdict::Fail,
                format!("#{{lambda={i}}}={} != #{{lambda={}}}={}", counts[i], n - i, counts[n - i]),
            );
        }
    }
    CheckOutcome::new(Verdict::Pass, format!("lambda counts {counts:?} are symmetric"))
}

/// C-BAL: `Σ_p N_p(ℓ) = Σ_p N_p(−ℓ)` for every `ℓ ≥ 1`.
pub fn check_weight_balance(data: &FixedPointData) -> CheckOutcome {
    let mut totals: BTreeMap<i64, i64> = BTreeMap::new();
    for p in data.points() {
        for &w in p.weights.as_slice() {
            *totals.entry(w.abs()).or_insert(0) += w.signum();
        }
    }
    if let Some((&ell, _)) = totals.iter().find(|(_, &d)| d != 0) {
        let pos: usize = data.points().iter().map(|p| p.weights.count(ell)).sum();
        let neg: usize = data.points().iter().map(|p| p.weights.count(-ell)).sum();
        return CheckOutcome::new(Verdict::Fail, format!("l={ell}: total N(l)={pos} != total N(-l)={neg}"));
    }
    CheckOutcome::new(Verdict::Pass, format!("balanced for l in {}", render_set(totals.keys())))
}

/// C-C1: the Chern class map sums to zero.
pub fn check_c1_sum(data: &FixedPointData) -> CheckOutcome {
    let s: i64 = data.points().iter().map(|p| p.chern_one()).sum();
    CheckOutcome::new(Verdict::from_bool(s == 0), format!("sum of c1 = {s}"))
}

/// C-PAR: an odd number of fixed points forces `n` even.
pub fn check_parity(data: &FixedPointData) -> CheckOutcome {
    let k = data.point_count();
    let n = data.half_dim();
    CheckOutcome::new(Verdict::from_bool(k.is_multiple_of(2) || n.is_multiple_of(2)), format!("k={k}, n={n}"))
}

/// C-2PT: structure forced on data with exactly two fixed points.
pub fn check_two_point_claims(data: &FixedPointData) -> CheckOutcome {
    let k = data.point_count();
    if k != 2 {
        return CheckOutcome::new(Verdict::NotApplicable, format!("k={k} != 2"));
    }
    let n = data.half_dim();
    let (p, q) = (&data.points()[0], &data.points()[1]);
    let fail = |why: String| CheckOutcome::new(Verdict::Fail, why);

    if p.weights != q.weights.negated() {
        return fail(format!("{}={} is not the negation of {}={}", p.id, p.weights, q.id, q.weights));
    }
    if n > 1 {
        let (lp, lq) = (p.weight_product(), q.weight_product());
        if !(&lp + &lq).is_zero() {
            return fail(format!("Lambda_{} + Lambda_{} = {} != 0", p.id, q.id, lp + lq));
        }
        if p.chern_one() != q.chern_one() {
            return fail(format!("c1({})={} != c1({})={}", p.id, p.chern_one(), q.id, q.chern_one()));
        }
    }
    for pt in [p, q] {
        if let Some(&alpha) = pt.weights.as_slice().iter().find(|&&a| !congruent_to_negation(&pt.weights, a)) {
            return fail(format!("{}: weights not congruent to their negation mod {}", pt.id, alpha.abs()));
        }
    }
    match n {
        1 => CheckOutcome::new(Verdict::Pass, format!("sphere weights a={}", p.weights.max_abs())),
        3 => match classify(&p.weights).or_else(|| classify(&q.weights)) {
            Some(pat) => CheckOutcome::new(Verdict::Pass, format!("(a,b) = ({},{})", pat.a, pat.b)),
            None => fail(format!("{} is not of the form {{a+b,-a,-b}} / {{a,b,-a-b}}", p.weights)),
        },
        _ => fail(format!("n={n}: two fixed points require n in {{1, 3}}")),
    }
}

/// Fibres of the Chern class map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SomewhereInjective {
    pub somewhere_injective: bool,
    /// Values of `c_1` attained at exactly one point.
    pub singleton_values: Vec<i64>,
    pub point_count: usize,
    pub half_dim: usize,
    pub outcome: CheckOutcome,
}

pub fn check_somewhere_injective(data: &FixedPointData) -> SomewhereInjective {
    let mut fibres: BTreeMap<i64, Vec<&str>> = BTreeMap::new();
    for p in data.points() {
        fibres.entry(p.chern_one()).or_default().push(p.id.as_str());
    }
    let singleton_values: Vec<i64> = fibres.iter().filter(|(_, f)| f.len() == 1).map(|(k, _)| *k).collect();
    let k = data.point_count();
    let n = data.half_dim();
    let si = !singleton_values.is_empty();
    let outcome = if !si {
        CheckOutcome::new(Verdict::NotApplicable, "c1 map has no singleton fibre")
    } else if k > n {
        CheckOutcome::new(Verdict::Pass, format!("singleton c1 fibres over {}; k={k} >= n+1={}", render_set(&singleton_values), n + 1))
    } else {
        let v = singleton_values[0];
        CheckOutcome::new(
            Verdict::Fail,
            format!("c1 fibre over {v} is {{{}}} but k={k} <= n={n}", fibres[&v][0]),
        )
    };
    SomewhereInjective { somewhere_injective: si, singleton_values, point_count: k, half_dim: n, outcome }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatteryKind {
    /// `∫s = 0` for `deg s < dim M`.
    Vanishing,
    /// Grouped sums of `1/Λ_p` over fibres of `s` vanish when `s` has few values.
    Grouped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryEntry {
    pub monomial: ChernMonomial,
    pub kind: BatteryKind,
    pub outcome: CheckOutcome,
}

/// Per-point `σ_i` and `Λ_p`, computed once.
struct PointSigmas {
    sigma: Vec<Vec<BigInt>>,
}

impl PointSigmas {
    fn new(data: &FixedPointData) -> Self {
        Self { sigma: data.points().iter().map(|p| elementary_symmetric_all(p.weights.as_slice())).collect() }
    }

    fn lambda(&self, i: usize) -> &BigInt {
        self.sigma[i].last().expect("sigma has n+1 entries")
    }
}

/// Runs the vanishing check over every monomial of weighted degree
/// `d < n` with `d <= max_total_degree`, and the grouped-sum test for each
/// such monomial `s` of degree `m >= 1` whose value set has at most `n/m`
/// elements.
pub fn check_degree_battery(data: &FixedPointData, max_total_degree: u64) -> Vec<BatteryEntry> {
    let n = data.half_dim() as u64;
    let sig = PointSigmas::new(data);
    let mut out = Vec::new();
    for d in 0..n.min(max_total_degree.saturating_add(1)) {
        for mono in ChernMonomial::all_of_degree(d, data.half_dim()) {
            let values: Vec<BigInt> = sig.sigma.iter().map(|s| value_from_sigma(s, &mono)).collect();
            let total = values
                .iter()
                .enumerate()
                .map(|(i, v)| Rational::new(v.clone(), sig.lambda(i).clone()))
                .fold(Rational::zero(), |a, x| a + x);
            let integral = LaurentPoly::monomial(total.clone(), d as i64 - n as i64);
            out.push(BatteryEntry {
                monomial: mono.clone(),
                kind: BatteryKind::Vanishing,
                outcome: CheckOutcome::new(
                    Verdict::from_bool(total.is_zero()),
                    format!("integral of {mono} = {integral} (degree {} < {})", 2 * d, 2 * n),
                ),
            });
            if d == 0 {
                continue;
            }
            let mut groups: BTreeMap<&BigInt, Rational> = BTreeMap::new();
            for (i, v) in values.iter().enumerate() {
                *groups.entry(v).or_insert_with(Rational::zero) += Rational::new(BigInt::one(), sig.lambda(i).clone());
            }
            let ell = groups.len() as u64;
            let outcome = if ell * d > n {
                CheckOutcome::new(Verdict::NotApplicable, format!("{mono} takes {ell} values > n/{d}"))
            } else if let Some((v, a)) = groups.iter().find(|(_, a)| !a.is_zero()) {
                CheckOutcome::new(
                    Verdict::Fail,
                    format!("{mono} takes {ell} values <= n/{d} but sum of 1/Lambda over {mono}={v} is {}", format_rational(a)),
                )
            } else {
                CheckOutcome::new(Verdict::Pass, format!("grouped sums over values of {mono} vanish"))
            };
            out.push(BatteryEntry { monomial: mono, kind: BatteryKind::Grouped, outcome });
        }
    }
    out
}

fn summarize_battery(entries: &[BatteryEntry]) -> CheckOutcome {
    if let Some(e) = entries.iter().find(|e| e.outcome.verdict == Verdict::Fail) {
        return CheckOutcome::new(Verdict::Fail, e.outcome.witness.clone());
    }
    let vanishing = entries.iter().filter(|e| e.kind == BatteryKind::Vanishing).count();
    let grouped = entries
        .iter()
        .filter(|e| e.kind == BatteryKind::Grouped && e.outcome.verdict == Verdict::Pass)
        .count();
    CheckOutcome::new(Verdict::Pass, format!("{vanishing} low-degree integrals vanish; {grouped} grouped tests pass"))
}

fn top_degree_advisories(data: &FixedPointData) -> Vec<String> {
    let n = data.half_dim();
    ChernMonomial::all_of_degree(n as u64, n)
        .into_iter()
        .filter_map(|m| {
            let c = abbv_integral(data, &m).expect("monomial fits").coeff(0);
            (!c.is_integer()).then(|| format!("Chern number of {m} is {}, not an integer", format_rational(&c)))
        })
        .collect()
}

/// Cheapest checks first; also the order in which a failure is attributed
/// when several constraints fail.
pub const CHEAP_FIRST: [ConstraintId; 9] = [
    ConstraintId::ChernSum,
    ConstraintId::WeightBalance,
    ConstraintId::IndexSymmetry,
    ConstraintId::Parity,
    ConstraintId::GroupedSums,
    ConstraintId::DegreeBattery,
    ConstraintId::TwoPoint,
    ConstraintId::SomewhereInjective,
    ConstraintId::Vandermonde,
];

pub fn check_one(data: &FixedPointData, id: ConstraintId) -> CheckOutcome {
    match id {
        ConstraintId::GroupedSums => check_grouped_sums(data),
        ConstraintId::Vandermonde => check_vandermonde_equivalence(data),
        ConstraintId::IndexSymmetry => check_index_symmetry(data),
        ConstraintId::WeightBalance => check_weight_balance(data),
        ConstraintId::ChernSum => check_c1_sum(data),
        ConstraintId::Parity => check_parity(data),
        ConstraintId::TwoPoint => check_two_point_claims(data),
        ConstraintId::SomewhereInjective => check_somewhere_injective(data).outcome,
        ConstraintId::DegreeBattery => {
            summarize_battery(&check_degree_battery(data, data.half_dim() as u64 - 1))
        }
    }
}

/// First selected constraint to fail, in [`CHEAP_FIRST`] order, without
/// building a report. `None` exactly when [`run_selected`] reports feasible.
pub fn first_failure(data: &FixedPointData, selected: &[ConstraintId]) -> Option<ConstraintId> {
    CHEAP_FIRST
        .into_iter()
        .filter(|id| selected.contains(id))
        .find(|&id| check_one(data, id).verdict == Verdict::Fail)
}

/// Runs the selected constraints (in registry order) and collects
/// advisories. Data is feasible iff no selected constraint fails.
pub fn run_selected(data: &FixedPointData, selected: &[ConstraintId]) -> ConstraintReport {
    let selected: BTreeSet<ConstraintId> = selected.iter().copied().collect();
    let n = data.half_dim();
    let mut constraints = Vec::with_capacity(selected.len());
    let mut advisories = vec![DISCLAIMER.to_string()];

    for id in selected {
        let outcome = check_one(data, id);
        constraints.push(ReportEntry { id: id.as_str().to_string(), verdict: outcome.verdict, witness: outcome.witness });
    }

    let g = data.weight_gcd();
    if g > 1 {
        advisories.push(format!("weights share the common factor {g}; the action is not effective"));
    }
    if !check_somewhere_injective(data).somewhere_injective {
        let k = data.point_count();
        advisories.push(format!(
            "c1 map is not somewhere injective; k={k} {} n+1={} (no bound asserted)",
            if k > n { ">=" } else { "<" },
            n + 1
        ));
    }
    advisories.extend(top_degree_advisories(data));

    let feasible = constraints.iter().all(|e| e.verdict != Verdict::Fail);
    ConstraintReport { feasible, constraints, advisories }
}

pub fn run_all(data: &FixedPointData) -> ConstraintReport {
    run_selected(data, &ConstraintId::ALL)
}

/// Whether the weights form a pattern `{a+b,−a,−b}` up to sign; used by
/// callers that inspect two-point search output.
pub fn two_point_pattern(p: &WeightMultiset, q: &WeightMultiset) -> Option<(i64, i64)> {
    if *p != q.negated() {
        return None;
    }
    classify(p).or_else(|| classify(q)).map(|s| (s.a, s.b))
}
