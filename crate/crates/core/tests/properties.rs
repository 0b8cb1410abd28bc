mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use pathideal::formulas;
use pathideal::linearity::{self, QuotientOutcome};
use pathideal::oracle::{self, betti_table};
use pathideal::path_ideal::{binomial, composition_to_monomial, power_generators, Compositions};
use pathideal::verify::{run_sweep, BettiCache, SweepConfig};
use pathideal::{minimalize, FieldSpec, Limits, Monomial, MonomialIdeal, PathIdealSpec};
use proptest::prelude::*;

const CAP: usize = 100_000;

/// All monomials in `k` variables with every exponent at most `e`.
fn box_monomials(k: usize, e: u32) -> Vec<Monomial> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=e).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Monomial::new(v).unwrap()).collect()
}

fn reg(i: &MonomialIdeal) -> i64 {
    oracle::regularity_of_quotient(i, FieldSpec::default(), &Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn colon_membership(
        (i, m) in (2usize..=4).prop_flat_map(|k| (common::ideal(k, 4), common::monomial_in(k, 0, k, 2)))
    ) {
        let colon = i.colon(&m).unwrap();
        for v in box_monomials(i.ambient(), 2) {
            let mv = m.mul(&v).unwrap();
            prop_assert_eq!(colon.contains(&v).unwrap(), i.contains(&mv).unwrap(), "v = {}", v);
        }
    }

    #[test]
    fn minimalize_is_idempotent(
        gens in (1usize..=5).prop_flat_map(|k| prop::collection::vec(common::monomial_in(k, 0, k, 3), 0..8))
    ) {
        let once = minimalize(gens);
        prop_assert_eq!(minimalize(once.clone()), once);
    }

    #[test]
    fn colon_distributes_over_sum(
        (i, j, m) in (2usize..=4).prop_flat_map(|k| (common::ideal(k, 3), common::ideal(k, 3), common::monomial_in(k, 0, k, 2)))
    ) {
        let left = i.sum(&j).unwrap().colon(&m).unwrap();
        let right = i.colon(&m).unwrap().sum(&j.colon(&m).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn power_is_associative(i in (1usize..=6).prop_flat_map(|k| common::ideal(k, 4))) {
        let sq = i.product(&i, CAP).unwrap();
        let cube = i.power(3, CAP).unwrap();
        prop_assert_eq!(&sq.product(&i, CAP).unwrap(), &cube);
        prop_assert_eq!(&i.product(&sq, CAP).unwrap(), &cube);
    }

    #[test]
    fn zeroth_betti_numbers_are_the_generators(i in (1usize..=5).prop_flat_map(|k| common::ideal(k, 4))) {
        let table = betti_table(&i, FieldSpec::default(), &Limits::default()).unwrap();
        let zeroth: BTreeSet<Vec<u32>> = table.entries.iter().filter(|e| e.i == 0).map(|e| {
            prop_assert_eq!(e.rank, 1);
            Ok(e.multidegree.clone())
        }).collect::<Result<_, TestCaseError>>()?;
        let gens: BTreeSet<Vec<u32>> = i.generators().iter().map(|g| g.exponents().to_vec()).collect();
        prop_assert_eq!(zeroth, gens);
        prop_assert_eq!(table.total(0), i.len() as u64);
    }

    #[test]
    fn nothing_below_the_linear_strand(i in (1usize..=5).prop_flat_map(|k| common::ideal(k, 4))) {
        let d = i.min_generator_degree().unwrap();
        let table = betti_table(&i, FieldSpec::new(3).unwrap(), &Limits::default()).unwrap();
        for g in &table.graded {
            prop_assert!(g.j >= g.i as u64 + d, "beta[{},{}] = {}", g.i, g.j, g.rank);
        }
    }

    #[test]
    fn disjoint_supports_add_regularity((i, j) in common::disjoint_pair()) {
        prop_assert_eq!(reg(&i.sum(&j).unwrap()), reg(&i) + reg(&j));
        prop_assert_eq!(reg(&i.product(&j, CAP).unwrap()), reg(&i) + reg(&j) + 1);
    }

    #[test]
    fn exact_sequence_bounds((i, m) in common::ideal_and_outside_monomial()) {
        let rm = reg(&i.colon(&m).unwrap()) + m.degree() as i64;
        let rn = reg(&i);
        let rp = reg(&i.sum(&MonomialIdeal::new(i.ambient(), vec![m]).unwrap()).unwrap());
        prop_assert!(rn <= rm.max(rp));
        prop_assert!(rm <= rn.max(rp + 1));
        prop_assert!(rp <= (rm - 1).max(rn));
        if rp != rm - 1 {
            prop_assert_eq!(rn, rm.max(rp));
        }
        if rn != rp {
            prop_assert_eq!(rm, rn.max(rp + 1));
        }
        if rm != rn {
            prop_assert_eq!(rp, (rm - 1).max(rn));
        }
    }
}

#[test]
fn composition_labels_are_injective() {
    for t in 1..=4usize {
        for n in t..=9 {
            let spec = PathIdealSpec::new(n, t).unwrap();
            for s in 1..=3 {
                let q = spec.num_generators();
                let ms: BTreeSet<Monomial> = Compositions::new(s, q)
                    .map(|c| composition_to_monomial(&spec, &c).unwrap())
                    .collect();
                let count = binomial(s as u64 + (n - t) as u64, s as u64);
                assert_eq!(ms.len(), power_generators(&spec, s, CAP).unwrap().len());
                assert_eq!(BigUint::from(ms.len()), count, "n={n} t={t} s={s}");
            }
        }
    }
}

#[test]
fn degree_pattern_of_generators_in_the_linear_range() {
    for t in 1..=5usize {
        for n in t..=2 * t {
            let spec = PathIdealSpec::new(n, t).unwrap();
            for k in 1..=n - t {
                for i in 1..=spec.num_generators() {
                    let want = u32::from(i <= k);
                    assert_eq!(
                        spec.generator(i).unwrap().deg_k(k),
                        want,
                        "n={n} t={t} k={k} i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn greatest_first_order_ends() {
    for (n, t, s) in [(5, 3, 2), (6, 3, 3), (9, 2, 2), (4, 4, 2)] {
        let spec = PathIdealSpec::new(n, t).unwrap();
        let order = linearity::greatest_first_order(&spec, s, CAP).unwrap();
        let q = spec.num_generators();
        let first = composition_to_monomial(&spec, &order[0]).unwrap();
        let last = composition_to_monomial(&spec, order.last().unwrap()).unwrap();
        assert_eq!(first, spec.generator(1).unwrap().pow(s).unwrap());
        assert_eq!(last, spec.generator(q).unwrap().pow(s).unwrap());
    }
}

#[test]
fn implication_chain_matches_the_predicate() {
    let f = FieldSpec::default();
    for t in 2..=3usize {
        for n in t..=8 {
            for s in 1..=2 {
                let spec = PathIdealSpec::new(n, t).unwrap();
                let ideal = spec.power_ideal(s, CAP).unwrap();
                let order = linearity::greatest_first_order(&spec, s, CAP).unwrap();
                let lq = matches!(
                    linearity::linear_quotients_check(&spec, s, &order, CAP).unwrap(),
                    QuotientOutcome::Certificate(_)
                );
                let lin = oracle::has_linear_resolution(&ideal, f, &Limits::default()).unwrap();
                let ql = linearity::quasi_linear_check(&ideal).unwrap().holds();
                let pred = formulas::linear_resolution_predicate(n as u64, t as u64).unwrap();
                assert!(!lq || lin, "n={n} t={t} s={s}");
                assert!(!lin || ql, "n={n} t={t} s={s}");
                assert_eq!((lq, lin, ql), (pred, pred, pred), "n={n} t={t} s={s}");
            }
        }
    }
}

#[test]
fn linear_case_regularity_agrees() {
    for t in 2..=8u64 {
        for n in t..=2 * t {
            for s in 1..=5 {
                assert_eq!(
                    formulas::reg_linear_case(n, t, s).unwrap(),
                    formulas::reg_power(n, t, s).unwrap()
                );
            }
        }
    }
}

fn small_sweep() -> SweepConfig {
    SweepConfig {
        t_max: 3,
        n_max: 7,
        s_max: 2,
        ..SweepConfig::default()
    }
}

#[test]
fn sweeps_are_deterministic() {
    let cfg = small_sweep();
    let a = run_sweep(&cfg, &BettiCache::disabled()).unwrap();
    let b = run_sweep(&SweepConfig { jobs: 1, ..cfg }, &BettiCache::disabled()).unwrap();
    assert!(a.passed());
    assert_eq!(a.summary.skipped, 0);
    let strip = |r: &pathideal::verify::VerificationReport| {
        let mut v: serde_json::Value = serde_json::from_str(&r.canonical_json().unwrap()).unwrap();
        v["config"]["jobs"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn cached_sweep_matches_fresh_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_sweep();
    let cache = BettiCache::new(Some(dir.path().to_path_buf()));
    let first = run_sweep(&cfg, &cache).unwrap();
    let misses = cache.misses();
    assert!(misses > 0);
    let again = BettiCache::new(Some(dir.path().to_path_buf()));
    let second = run_sweep(&cfg, &again).unwrap();
    assert_eq!(again.misses(), 0);
    assert_eq!(again.hits(), cache.hits() + misses);
    assert_eq!(
        first.canonical_json().unwrap(),
        second.canonical_json().unwrap()
    );

    let gf3 = BettiCache::new(Some(dir.path().to_path_buf()));
    run_sweep(
        &SweepConfig {
            characteristic: 3,
            ..cfg
        },
        &gf3,
    )
    .unwrap();
    assert!(gf3.misses() > 0);
}

#[test]
fn empty_range_gives_an_empty_report() {
    let cfg = SweepConfig {
        t_min: 5,
        t_max: 4,
        ..SweepConfig::default()
    };
    let r = run_sweep(&cfg, &BettiCache::disabled()).unwrap();
    assert!(r.cells.is_empty());
    assert_eq!(r.summary, Default::default());
}

#[test]
fn cap_exceeded_cells_are_skipped_not_failed() {
    let cfg = SweepConfig {
        t_min: 2,
        t_max: 2,
        n_min: Some(8),
        n_max: 9,
        s_min: 2,
        s_max: 2,
        max_lattice: 50,
        ..SweepConfig::default()
    };
    let r = run_sweep(&cfg, &BettiCache::disabled()).unwrap();
    assert_eq!(r.summary.skipped, 2);
    assert_eq!(r.summary.failed, 0);
    assert!(r.passed());
    for c in &r.cells {
        assert!(c.note.as_deref().unwrap().contains("cap"), "{:?}", c.note);
    }
}
