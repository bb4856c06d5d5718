//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symfix_core::localization::{chern_restriction, euler_class};
use symfix_core::model::WeightMultiset;
use symfix_core::multiset_lemma::{classify, enumerate_satisfying, SigmaPattern};
use symfix_core::search::{brute_oracle, enumerate, generate_example, ExampleRecipe, SearchSpec};
use symfix_core::{abbv_integral, run_all, run_selected, ChernMonomial, ConstraintId, FixedPointData, LaurentPoly, Rational, Verdict};

const CORPUS_SIZE: usize = 10_000;
const CORPUS_SEED: u64 = 0x5eed_0001;

fn corpus() -> Vec<FixedPointData> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| common::random_data(&mut rng, 4, 4, 6)).collect()
}

fn within(limit: Duration, start: Instant, what: &str) -> String {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, limit {limit:?}");
    format!("{took:.2?}")
}

fn ms(w: &[i64]) -> WeightMultiset {
    WeightMultiset::new(w.to_vec()).unwrap()
}

fn without(id: ConstraintId) -> Vec<ConstraintId> {
    ConstraintId::ALL.into_iter().filter(|c| *c != id).collect()
}

fn two_point_dim6() -> String {
    let start = Instant::now();
    let data = FixedPointData::from_weights(3, vec![vec![1, 1, -2], vec![-1, -1, 2]]).unwrap();
    let report = run_all(&data);
    assert!(report.feasible, "{}", report.to_table());
    assert!(report.constraints.iter().all(|e| e.verdict != Verdict::Fail));
    let c3 = abbv_integral(&data, &ChernMonomial::class(3)).unwrap();
    assert_eq!(c3, LaurentPoly::monomial(Rational::from_integer(2.into()), 0));
    assert_eq!(c3.to_string(), "2*t^0");
    format!("feasible, integral of c3 = {c3}, {}", within(Duration::from_secs(1), start, "criterion"))
}

fn no_single_point() -> String {
    let start = Instant::now();
    let mut raw = Vec::new();
    for n in 1..=4 {
        let spec = SearchSpec::new(1, n, 6);
        let r = enumerate(&spec).unwrap();
        assert!(r.configurations.is_empty(), "n={n}");
        assert_eq!(r.counts.feasible, 0);
        // a single point: C(12 + n − 1, n) multisets
        let expected = [12u64, 78, 364, 1365][n - 1];
        assert_eq!(r.counts.raw_size.to_u64(), Some(expected), "n={n}");
        raw.push(expected);
    }
    format!("0 feasible for n=1..4, raw sizes {raw:?}, {}", within(Duration::from_secs(10), start, "criterion"))
}

fn dim_six_classification() -> String {
    let start = Instant::now();
    let spec = SearchSpec::new(2, 3, 6).effective_only(false);
    let r = enumerate(&spec).unwrap();
    let got: BTreeSet<Vec<WeightMultiset>> = r.keys().into_iter().collect();

    let mut expected = BTreeSet::new();
    for a in 1..=6i64 {
        for b in a..=6 - a {
            let p = SigmaPattern::new(a, b).multiset();
            let mut key = vec![p.negated(), p];
            key.sort();
            expected.insert(key);
        }
    }
    assert_eq!(expected.len(), 9);
    assert_eq!(got, expected, "membership both ways");

    let oracle = brute_oracle(&spec).unwrap();
    assert_eq!(oracle.counts.feasible, r.counts.feasible);
    assert_eq!(oracle.keys(), r.keys());

    // default search keeps only effective data: the gcd-1 patterns
    let eff = enumerate(&SearchSpec::new(2, 3, 6)).unwrap();
    let eff_keys: BTreeSet<Vec<WeightMultiset>> = eff.keys().into_iter().collect();
    let gcd_one: BTreeSet<Vec<WeightMultiset>> =
        expected.iter().filter(|k| num_integer::gcd(-k[0].as_slice()[0], -k[0].as_slice()[1]) == 1).cloned().collect();
    assert_eq!(eff_keys, gcd_one);
    assert_eq!(eff_keys.len(), 6);

    format!(
        "{} configurations = all (a,b) with a+b <= 6, oracle agrees ({} effective), {}",
        got.len(),
        eff_keys.len(),
        within(Duration::from_secs(60), start, "criterion")
    )
}

fn no_two_point_in_high_dim() -> String {
    let start = Instant::now();
    let mut leaves = 0u128;
    for n in [4, 5] {
        for eff in [true, false] {
            let r = enumerate(&SearchSpec::new(2, n, 4).effective_only(eff)).unwrap();
            assert!(r.configurations.is_empty(), "n={n}: {:?}", r.configurations);
            leaves += r.counts.leaves_examined;
        }
    }
    format!("0 feasible for n=4,5 at W=4 ({leaves} leaves), {}", within(Duration::from_secs(300), start, "criterion"))
}

fn balance_implies_c1(corpus: &[FixedPointData]) -> String {
    let mut balanced = 0;
    for d in corpus {
        let bal = run_selected(d, &[ConstraintId::WeightBalance, ConstraintId::ChernSum]);
        if bal.verdict(ConstraintId::WeightBalance) == Some(Verdict::Pass) {
            balanced += 1;
            assert_eq!(bal.verdict(ConstraintId::ChernSum), Some(Verdict::Pass), "{d}");
        }
    }
    assert!(balanced >= 1000, "only {balanced} balanced sets");
    format!("{} sets, {balanced} balanced, 0 exceptions", corpus.len())
}

fn odd_count_parity(corpus: &[FixedPointData]) -> String {
    let no_parity = without(ConstraintId::Parity);
    let mut feasible_odd = 0;
    for d in corpus {
        for report in [run_all(d), run_selected(d, &no_parity)] {
            if report.feasible && d.point_count() % 2 == 1 {
                feasible_odd += 1;
                assert_eq!(d.half_dim() % 2, 0, "{d}");
            }
        }
    }
    for w in 1..=3 {
        for constraints in [ConstraintId::ALL.to_vec(), no_parity.clone()] {
            for eff in [true, false] {
                let spec = SearchSpec::new(3, 3, w).with_constraints(constraints.clone()).effective_only(eff);
                let r = enumerate(&spec).unwrap();
                assert!(r.configurations.is_empty(), "W={w}: {:?}", r.configurations);
            }
        }
    }
    format!("{feasible_odd} feasible odd-k reports in corpus all have even n; k=n=3, W<=3 search empty")
}

fn somewhere_injective_bound() -> String {
    let start = Instant::now();
    let no_si = without(ConstraintId::SomewhereInjective);
    let mut feasible = 0;
    for n in 1..=3 {
        for k in 1..=n {
            for constraints in [ConstraintId::ALL.to_vec(), no_si.clone()] {
                let spec = SearchSpec::new(k, n, 4).with_constraints(constraints).effective_only(false);
                let r = enumerate(&spec).unwrap();
                for d in &r.configurations {
                    feasible += 1;
                    let mut fibres = std::collections::BTreeMap::<i64, usize>::new();
                    for p in d.points() {
                        *fibres.entry(p.chern_one()).or_default() += 1;
                    }
                    assert!(fibres.values().all(|&c| c > 1), "somewhere injective: {d}");
                }
            }
        }
    }
    format!("k <= n <= 3, W <= 4: {feasible} feasible, none somewhere injective, {:.2?}", start.elapsed())
}

fn multiset_lemma() -> String {
    let start = Instant::now();
    let found = enumerate_satisfying(8, 6);
    let mut patterns = BTreeSet::new();
    for m in &found {
        let p = classify(m).unwrap_or_else(|| panic!("{m} does not classify"));
        patterns.insert(p);
    }
    for a in 1..=8 {
        for b in a..=8 - a {
            assert!(patterns.contains(&SigmaPattern::new(a, b)), "({a},{b}) missing");
            assert!(found.contains(&ms(&[a + b, -a, -b])));
        }
    }
    let min = found.iter().map(|m| m.len()).min().unwrap();
    assert_eq!(min, 3);
    assert_eq!(found.len(), 16);
    format!("{} multisets, all {{a+b,-a,-b}}, min size {min}, {}", found.len(), within(Duration::from_secs(60), start, "criterion"))
}

fn oracle_equivalence() -> String {
    let mut cases = Vec::new();
    for n in 1..=3 {
        for w in 1..=4 {
            cases.push((1, n, w));
        }
    }
    for w in 1..=3 {
        cases.push((2, 2, w));
    }
    for w in 1..=4 {
        cases.push((2, 3, w));
    }
    let mut total = 0;
    for &(k, n, w) in &cases {
        for eff in [true, false] {
            let spec = SearchSpec::new(k, n, w).effective_only(eff);
            let a = enumerate(&spec).unwrap();
            let b = brute_oracle(&spec).unwrap();
            assert_eq!(a.keys(), b.keys(), "({k},{n},{w}) eff={eff}");
            assert_eq!(a.counts.feasible, b.counts.feasible);
            total += a.counts.feasible;
        }
    }
    format!("{} search spaces agree, {total} configurations in total", 2 * cases.len())
}

fn positive_controls() -> String {
    let mut basics = Vec::new();
    for a in 1..=5 {
        basics.push(ExampleRecipe::Sphere(a));
    }
    let param_sets: [&[i64]; 9] = [
        &[0, 1],
        &[0, 3],
        &[0, 1, 2],
        &[0, 1, 3],
        &[-2, 0, 5],
        &[0, 1, 2, 3],
        &[0, 1, 3, 7],
        &[0, 1, 2, 3, 4],
        &[-3, -1, 0, 2, 5],
    ];
    for p in param_sets {
        basics.push(ExampleRecipe::Projective(p.to_vec()));
    }
    let mut recipes = basics.clone();
    for (i, x) in basics.iter().enumerate() {
        for y in &basics[i..] {
            recipes.push(ExampleRecipe::Product(vec![x.clone(), y.clone()]));
        }
    }
    for r in &recipes {
        let d = generate_example(r).unwrap();
        let report = run_all(&d);
        assert!(report.feasible, "{r:?}: {}", report.to_table());
        let euler = abbv_integral(&d, &ChernMonomial::class(d.half_dim())).unwrap();
        let k = BigInt::from(d.point_count());
        assert_eq!(euler, LaurentPoly::monomial(Rational::from_integer(k), 0), "{r:?}");
    }
    format!("{} examples feasible with integral of c_n = k", recipes.len())
}

fn localization_identities(corpus: &[FixedPointData]) -> String {
    let mut integrals = 0;
    for d in corpus {
        let n = d.half_dim();
        for deg in 0..=(n as u64 + 1) {
            for m in ChernMonomial::all_of_degree(deg, n) {
                let v = abbv_integral(d, &m).unwrap();
                let support = v.support();
                assert!(support.iter().all(|&p| p == deg as i64 - n as i64), "{d}: {m} = {v}");
                integrals += 1;
            }
        }
        for p in d.points() {
            assert_eq!(chern_restriction(p, n).unwrap(), euler_class(p), "{d}");
            assert!(!euler_class(p).coeff(n as i64).is_zero());
        }
    }
    format!("{} sets, {integrals} homogeneous integrals on one power; c_n|p = e(p) at every point", corpus.len())
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> String + 'a>);

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("two-point dim 6 candidate", Box::new(two_point_dim6)),
        ("no single fixed point", Box::new(no_single_point)),
        ("dim 6 two-point classification", Box::new(dim_six_classification)),
        ("no two-point data in dim 8, 10", Box::new(no_two_point_in_high_dim)),
        ("weight balance implies zero c1 sum", Box::new(|| balance_implies_c1(&corpus))),
        ("odd point count forces even n", Box::new(|| odd_count_parity(&corpus))),
        ("somewhere injective needs n+1 points", Box::new(somewhere_injective_bound)),
        ("multiset classification", Box::new(multiset_lemma)),
        ("search equals brute oracle", Box::new(oracle_equivalence)),
        ("positive controls", Box::new(positive_controls)),
        ("localization identities", Box::new(|| localization_identities(&corpus))),
    ];

    let prev = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match panic::catch_unwind(AssertUnwindSafe(f)) {
            Ok(detail) => println!("AC{:<2} PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("AC{:<2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    panic::set_hook(prev);
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
