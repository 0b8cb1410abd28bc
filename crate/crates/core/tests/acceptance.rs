//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use pathideal::formulas;
use pathideal::linearity::{self, QuasiLinear, QuotientOutcome};
use pathideal::oracle::{self, reduced_homology_dims, SimplicialComplexFaces};
use pathideal::verify::{
    run_sweep, BettiCache, CellReport, Check, Status, SweepConfig, VerificationReport,
};
use pathideal::{FieldSpec, Limits, Monomial, MonomialIdeal, PathIdealSpec};

type Outcome = Result<String, String>;

fn in_range(c: &CellReport) -> bool {
    c.t <= c.n && c.n <= 2 * c.t
}

/// Every check named by `quantity` passes and at least `min` of them ran.
fn all_pass(
    report: &VerificationReport,
    min: usize,
    cell: impl Fn(&CellReport) -> bool,
    quantity: impl Fn(&str) -> bool,
) -> Outcome {
    let checks: Vec<(&CellReport, &Check)> = report
        .checks_where(|c, k| cell(c) && quantity(&k.quantity))
        .collect();
    if let Some((c, k)) = checks.iter().find(|(_, k)| k.status != Status::Pass) {
        return Err(format!(
            "n={} t={} s={} {}: formula {} oracle {} ({})",
            c.n,
            c.t,
            c.s,
            k.quantity,
            k.formula,
            k.oracle.as_deref().unwrap_or("-"),
            c.repro
        ));
    }
    if checks.len() < min {
        return Err(format!(
            "only {} checks ran, expected at least {min}",
            checks.len()
        ));
    }
    Ok(format!("{} checks", checks.len()))
}

fn count_cells(report: &VerificationReport, pred: impl Fn(&CellReport) -> bool) -> usize {
    report.cells.iter().filter(|c| pred(c)).count()
}

fn criterion_1(r: &VerificationReport) -> Outcome {
    all_pass(r, r.cells.len(), |_| true, |q| q == "reg")
}

fn criterion_2(r: &VerificationReport) -> Outcome {
    let below = count_cells(r, |c| c.n < c.t);
    if below == 0 {
        return Err("no n < t cells in the sweep".into());
    }
    let zeros = r
        .checks_where(|c, k| c.n < c.t && k.quantity == "reg" && k.formula == "0")
        .count();
    if zeros != below {
        return Err(format!(
            "{zeros} of {below} n < t cells have formula value 0"
        ));
    }
    all_pass(
        r,
        count_cells(r, |c| c.s == 1),
        |c| c.s == 1,
        |q| q == "reg",
    )
    .map(|m| format!("{m}, {below} with n < t"))
}

fn criterion_3(r: &VerificationReport) -> Outcome {
    let main = all_pass(
        r,
        count_cells(r, |c| c.n >= c.t),
        |_| true,
        |q| q == "linear_resolution",
    )?;
    let spot = all_pass(
        r,
        count_cells(r, |c| c.t == 3 && c.n >= c.t),
        |c| c.t == 3,
        |q| q == "linear_resolution@gf3",
    )?;
    Ok(format!("GF(2) {main}; GF(3) {spot}"))
}

fn criterion_4(r: &VerificationReport) -> Outcome {
    let cap = Limits::default().max_generators;
    let mut cells = 0;
    for c in r.cells.iter().filter(|c| in_range(c)) {
        let spec = PathIdealSpec::new(c.n as usize, c.t as usize).map_err(|e| e.to_string())?;
        let order = linearity::greatest_first_order(&spec, c.s, cap).map_err(|e| e.to_string())?;
        match linearity::linear_quotients_check(&spec, c.s, &order, cap)
            .map_err(|e| e.to_string())?
        {
            QuotientOutcome::Certificate(cert) if cert.closed_form_checked => {
                if cert.steps.len() + 1 != order.len() {
                    return Err(format!(
                        "n={} t={} s={}: certificate is short",
                        c.n, c.t, c.s
                    ));
                }
            }
            QuotientOutcome::Certificate(_) => {
                return Err(format!(
                    "n={} t={} s={}: closed form not compared",
                    c.n, c.t, c.s
                ));
            }
            QuotientOutcome::Failure(f) => {
                return Err(format!("n={} t={} s={}: {f:?}", c.n, c.t, c.s));
            }
        }
        cells += 1;
    }
    let swept = all_pass(r, cells, in_range, |q| q == "linear_quotients")?;
    Ok(format!(
        "{cells} cells certified, closed form matched; {swept}"
    ))
}

fn criterion_5(r: &VerificationReport) -> Outcome {
    let cap = Limits::default().max_generators;
    let out = |c: &CellReport| c.n > 2 * c.t;
    let mut cells = 0;
    for c in r.cells.iter().filter(|c| out(c)) {
        let spec = PathIdealSpec::new(c.n as usize, c.t as usize).map_err(|e| e.to_string())?;
        let ideal = spec.power_ideal(c.s, cap).map_err(|e| e.to_string())?;
        if linearity::quasi_linear_check(&ideal)
            .map_err(|e| e.to_string())?
            .holds()
        {
            return Err(format!("n={} t={} s={}: quasi-linear", c.n, c.t, c.s));
        }
        let w = linearity::quasi_linear_witness(&spec, c.s, cap).map_err(|e| e.to_string())?;
        if !w.confirmed() {
            return Err(format!("n={} t={} s={}: witness {w:?}", c.n, c.t, c.s));
        }
        cells += 1;
    }
    all_pass(r, cells, out, |q| q == "quasi_linear.witness")?;

    let spec = PathIdealSpec::new(7, 3).unwrap();
    let w = linearity::quasi_linear_witness(&spec, 1, cap).map_err(|e| e.to_string())?;
    let want = vec![
        Monomial::parse("x4", 7).unwrap(),
        Monomial::parse("x1*x2*x3", 7).unwrap(),
    ];
    let mut got = w.colon.clone();
    got.sort_by_key(Monomial::degree);
    if got != want {
        return Err(format!("(7,3,1) witness colon {:?}", w.colon));
    }
    match linearity::quasi_linear_check(&spec.ideal()).map_err(|e| e.to_string())? {
        QuasiLinear::Fails { .. } => {}
        QuasiLinear::Holds => return Err("(7,3,1) reported quasi-linear".into()),
    }
    Ok(format!("{cells} cells, (7,3,1) colon (x4, x1*x2*x3)"))
}

fn criterion_6(r: &VerificationReport) -> Outcome {
    let cells: Vec<&CellReport> = r.cells.iter().filter(|c| in_range(c)).collect();
    let betti: usize = cells.iter().map(|c| (c.n - c.t + 2) as usize).sum();
    let census: usize = cells.iter().map(|c| (c.n - c.t) as usize).sum();
    let b = all_pass(r, betti, in_range, |q| q.starts_with("betti["))?;
    all_pass(r, cells.len(), in_range, |q| q == "betti.concentrated")?;
    all_pass(r, cells.len(), in_range, |q| q == "pd")?;
    let s = all_pass(r, census, in_range, |q| q.starts_with("s_k["))?;
    Ok(format!(
        "betti {b}, census {s}, pd and concentration on {} cells",
        cells.len()
    ))
}

fn criterion_7(r: &VerificationReport) -> Outcome {
    let cells = count_cells(r, |c| c.n >= c.t);
    all_pass(
        r,
        3 * cells,
        |_| true,
        |q| matches!(q, "gens.count" | "gens.distinct" | "gens.minimal"),
    )
}

fn criterion_8(r: &VerificationReport) -> Outcome {
    all_pass(
        r,
        count_cells(r, |c| c.n >= c.t && c.s >= 2),
        |_| true,
        |q| q == "colon_by_last",
    )
}

fn criterion_9(r: &VerificationReport) -> Outcome {
    let out = |c: &CellReport| c.n > 2 * c.t && c.s <= 2;
    let expected: usize = r
        .cells
        .iter()
        .filter(|c| out(c))
        .map(|c| (c.n - c.t) as usize)
        .sum();
    all_pass(r, expected, out, |q| q.starts_with("tail_reg["))
}

fn criterion_10() -> Outcome {
    let mut checked = 0u64;
    for t in 1..=12 {
        for n in (t + 1)..=60 {
            if !formulas::gamma_shift_identity(n, t).map_err(|e| e.to_string())? {
                return Err(format!("shift identity fails at n={n}, t={t}"));
            }
            checked += 1;
        }
        for a in 1..=40 {
            for b in 1..=40 {
                if !formulas::gamma_superadditive(a, b, t).map_err(|e| e.to_string())? {
                    return Err(format!("superadditivity fails at a={a}, b={b}, t={t}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} instances"))
}

fn reg(i: &MonomialIdeal) -> i64 {
    oracle::regularity_of_quotient(i, FieldSpec::default(), &Limits::default()).unwrap()
}

fn criterion_11() -> Outcome {
    use proptest::test_runner::TestCaseError;

    let mut runner = common::deterministic_runner(50);
    let pairs = std::cell::Cell::new(0);
    runner
        .run(&common::disjoint_pair(), |(i, j)| {
            pairs.set(pairs.get() + 1);
            let sum = i.sum(&j).unwrap();
            if reg(&sum) != reg(&i) + reg(&j) {
                return Err(TestCaseError::fail(format!(
                    "splitting fails for {i} and {j}"
                )));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let mut runner = common::deterministic_runner(50);
    let triples = std::cell::Cell::new(0);
    runner
        .run(&common::ideal_and_outside_monomial(), |(i, m)| {
            triples.set(triples.get() + 1);
            let colon = i.colon(&m).unwrap();
            let with_m = i
                .sum(&MonomialIdeal::new(i.ambient(), vec![m.clone()]).unwrap())
                .unwrap();
            let rm = reg(&colon) + m.degree() as i64;
            let (rn, rp) = (reg(&i), reg(&with_m));
            let ok = rn <= rm.max(rp) && rm <= rn.max(rp + 1) && rp <= (rm - 1).max(rn);
            if !ok {
                return Err(TestCaseError::fail(format!(
                    "I={i} m={m}: reg M={rm} N={rn} P={rp}"
                )));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let complex = |facets: &[u64]| {
        let all = facets.iter().fold(0, |a, f| a | f);
        let cx = SimplicialComplexFaces::from_facets(all, facets).unwrap();
        let mut h = reduced_homology_dims(&cx, FieldSpec::default());
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    };
    let fixed = [
        ("two points", complex(&[0b01, 0b10]), vec![0, 1]),
        ("point", complex(&[0b1]), vec![]),
        (
            "hollow triangle",
            complex(&[0b011, 0b110, 0b101]),
            vec![0, 0, 1],
        ),
    ];
    for (name, got, want) in fixed {
        if got != want {
            return Err(format!("{name}: homology {got:?}, expected {want:?}"));
        }
    }
    Ok(format!(
        "{} splitting pairs, {} exact sequences, 3 complexes",
        pairs.get(),
        triples.get()
    ))
}

fn main() {
    let start = Instant::now();
    let cfg = SweepConfig::default();
    let report = run_sweep(&cfg, &BettiCache::disabled()).expect("default sweep runs");
    let swept = Instant::now() - start;

    let mut failures = 0;
    let mut line = |n: u32, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail}"),
        Err(why) => {
            failures += 1;
            println!("criterion {n:>2} FAIL {name}: {why}");
        }
    };

    let envelope: BTreeSet<(u64, u64, u32)> =
        report.cells.iter().map(|c| (c.n, c.t, c.s)).collect();
    let expected: BTreeSet<(u64, u64, u32)> = cfg.cells().iter().map(|c| (c.n, c.t, c.s)).collect();
    let coverage =
        if envelope == expected && report.summary.skipped == 0 && report.summary.failed == 0 {
            Ok(format!(
                "{} cells, {} checks, {:.1?}",
                report.summary.cells, report.summary.checks, swept
            ))
        } else {
            Err(format!("{:?}", report.summary))
        };
    line(0, "default sweep", coverage);
    line(1, "regularity of powers", criterion_1(&report));
    line(2, "regularity of the path ideal", criterion_2(&report));
    line(
        3,
        "linear resolution iff t <= n <= 2t",
        criterion_3(&report),
    );
    line(
        4,
        "linear quotients in the greatest-first order",
        criterion_4(&report),
    );
    line(5, "failure of quasi-linearity", criterion_5(&report));
    line(
        6,
        "Betti numbers, pd and colon census",
        criterion_6(&report),
    );
    line(7, "generators of the power", criterion_7(&report));
    line(8, "colon by the last generator", criterion_8(&report));
    line(9, "regularity of tail extensions", criterion_9(&report));
    line(10, "Gamma arithmetic", criterion_10());
    line(11, "oracle property suites", criterion_11());

    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
