//! Formula-versus-oracle comparisons over a grid of `(n, t, s)` cells.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use super::cache::BettiCache;
use super::config::{Cell, SweepConfig};
use super::report::{CellReport, Check, Status, VerificationReport};
use crate::error::{Error, Result};
use crate::formulas;
use crate::linearity::{self, QuotientOutcome};
use crate::monomial::MonomialIdeal;
use crate::oracle::{self, BettiTable, FieldSpec};
use crate::path_ideal::{composition_count, power_generators, PathIdealSpec};
use crate::Limits;

struct CellRun<'a> {
    cell: Cell,
    cfg: &'a SweepConfig,
    cache: &'a BettiCache,
    limits: Limits,
    field: FieldSpec,
    checks: Vec<Check>,
}

fn yes_no(b: bool) -> String {
    b.to_string()
}

impl CellRun<'_> {
    fn compare(
        &mut self,
        quantity: impl Into<String>,
        formula: impl ToString,
        report_only: bool,
        oracle: impl FnOnce(&mut Self) -> Result<String>,
    ) -> Result<()> {
        let quantity = quantity.into();
        let formula = formula.to_string();
        let start = Instant::now();
        let got = oracle(self);
        let ms = start.elapsed().as_millis() as u64;
        match got {
            Ok(value) => {
                let status = match (value == formula, report_only) {
                    (true, _) => Status::Pass,
                    (false, true) => Status::Noted,
                    (false, false) => Status::Fail,
                };
                self.checks.push(Check {
                    quantity,
                    formula,
                    oracle: Some(value),
                    status,
                    ms,
                });
                Ok(())
            }
            Err(e) => {
                let status = match e {
                    Error::CapExceeded { .. } => Status::Skipped,
                    _ => Status::Fail,
                };
                self.checks.push(Check {
                    quantity,
                    formula,
                    oracle: None,
                    status,
                    ms,
                });
                Err(e)
            }
        }
    }

    fn table(&self, ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
        self.cache.betti_table(ideal, field, &self.limits)
    }

    fn run(&mut self) -> Result<()> {
        let Cell { n, t, s } = self.cell;
        let spec = PathIdealSpec::new(n as usize, t as usize)?;
        if n < t {
            let zero = spec.ideal();
            return self.compare("reg", formulas::gamma(n, t)?, false, |me| {
                let table = me.table(&zero, me.field)?;
                Ok(oracle::quotient_regularity(&zero, &table)?.to_string())
            });
        }
        let cap = self.limits.max_generators;
        let in_range = formulas::linear_resolution_predicate(n, t)?;
        let q = spec.num_generators();

        let base = spec.ideal();
        let generic = {
            let mut slot = None;
            self.compare(
                "gens.count",
                composition_count(s as u64, q as u64)?,
                false,
                |_| {
                    let p = base.power(s, cap)?;
                    let len = p.len();
                    slot = Some(p);
                    Ok(len.to_string())
                },
            )?;
            slot.expect("set on success")
        };
        let named = power_generators(&spec, s, cap)?;
        self.compare("gens.distinct", yes_no(true), false, |_| {
            let set: HashSet<_> = named.iter().map(|(_, m)| m).collect();
            Ok(yes_no(set.len() == named.len()))
        })?;
        self.compare("gens.minimal", yes_no(true), false, |_| {
            let mut ms: Vec<_> = named.iter().map(|(_, m)| m.clone()).collect();
            ms.sort();
            Ok(yes_no(ms == generic.generators()))
        })?;
        let power = generic;

        let mut table_slot = None;
        self.compare("reg", formulas::reg_power(n, t, s as u64)?, false, |me| {
            let table = me.table(&power, me.field)?;
            let r = oracle::quotient_regularity(&power, &table)?;
            table_slot = Some(table);
            Ok(r.to_string())
        })?;
        let table = table_slot.expect("set on success");

        self.compare("linear_resolution", yes_no(in_range), false, |_| {
            Ok(yes_no(oracle::linear_status(&power, &table).is_linear()))
        })?;
        self.compare("quasi_linear", yes_no(in_range), false, |_| {
            Ok(yes_no(linearity::quasi_linear_check(&power)?.holds()))
        })?;

        let order = linearity::greatest_first_order(&spec, s, cap)?;
        let mut outcome = None;
        self.compare("linear_quotients", yes_no(in_range), false, |_| {
            let o = linearity::linear_quotients_check(&spec, s, &order, cap)?;
            let ok = matches!(o, QuotientOutcome::Certificate(_));
            outcome = Some(o);
            Ok(yes_no(ok))
        })?;

        if in_range {
            if let Some(QuotientOutcome::Certificate(cert)) = &outcome {
                for k in 1..=(n - t) {
                    self.compare(
                        format!("s_k[{k}]"),
                        formulas::s_k_closed_form(n, t, s as u64, k)?,
                        false,
                        |_| Ok(cert.census(k as usize).to_string()),
                    )?;
                }
            }
            for i in 0..=(n - t + 1) {
                self.compare(
                    format!("betti[{i}]"),
                    formulas::betti_closed_form(n, t, s as u64, i)?,
                    false,
                    |_| Ok(table.total(i as usize).to_string()),
                )?;
            }
            let st = s as u64 * t;
            self.compare("betti.concentrated", yes_no(true), false, |_| {
                Ok(yes_no(table.graded.iter().all(|g| g.j == g.i as u64 + st)))
            })?;
            self.compare(
                "pd",
                formulas::pd_closed_form(n, t, s as u64)?,
                false,
                |_| Ok(oracle::quotient_projective_dimension(&power, &table)?.to_string()),
            )?;
            let mut euler = 0i64;
            for i in 0..=(n - t) {
                let b = formulas::betti_closed_form(n, t, s as u64, i)? as i64;
                euler += if i % 2 == 0 { b } else { -b };
            }
            self.compare("euler", euler, false, |_| {
                Ok(table.alternating_sum().to_string())
            })?;
        } else {
            let expected = format!("x{}", n - t);
            self.compare("quasi_linear.witness", &expected, false, |_| {
                let w = linearity::quasi_linear_witness(&spec, s, cap)?;
                Ok(if w.confirmed() {
                    format!("x{}", n - t)
                } else {
                    format!("unconfirmed: variables {:?}", w.variables)
                })
            })?;
        }

        if s >= 2 {
            let last = spec.generator(q)?;
            self.compare("colon_by_last", "I^(s-1)", false, |_| {
                let colon = power.colon(&last)?;
                let lower = spec.power_ideal(s - 1, cap)?;
                Ok(if colon == lower {
                    "I^(s-1)".to_string()
                } else {
                    colon.to_string()
                })
            })?;
        }

        if s <= self.cfg.tail_max_power && q >= 2 {
            let report_only = in_range;
            let value = formulas::reg_power(n, t, s as u64)?;
            for j in 2..=q {
                if !report_only {
                    debug_assert_eq!(
                        formulas::tail_extension_reg(n, t, s as u64, j as u64)?,
                        value
                    );
                }
                self.compare(format!("tail_reg[{j}]"), value, report_only, |me| {
                    let ideal = spec.power_plus_tail(s, j, cap)?;
                    let table = me.table(&ideal, me.field)?;
                    Ok(oracle::quotient_regularity(&ideal, &table)?.to_string())
                })?;
            }
        }

        if self.cfg.spot_t.contains(&t) {
            for &p in &self.cfg.spot_chars.clone() {
                let other = FieldSpec::new(p)?;
                let mut spot = None;
                self.compare(
                    format!("linear_resolution@gf{p}"),
                    yes_no(in_range),
                    false,
                    |me| {
                        let tp = me.table(&power, other)?;
                        let lin = oracle::linear_status(&power, &tp).is_linear();
                        spot = Some(tp);
                        Ok(yes_no(lin))
                    },
                )?;
                let tp = spot.expect("set on success");
                self.compare(
                    format!("graded_betti@gf{p}"),
                    "same as primary field",
                    true,
                    |_| {
                        Ok(if tp.graded == table.graded {
                            "same as primary field".to_string()
                        } else {
                            "differs".to_string()
                        })
                    },
                )?;
            }
        }
        Ok(())
    }
}

fn repro(cell: Cell, cfg: &SweepConfig) -> String {
    format!(
        "pathideal verify --n {} --t {} --power {} --char {}",
        cell.n, cell.t, cell.s, cfg.characteristic
    )
}

/// Runs every check of one cell.
pub fn run_cell(cell: Cell, cfg: &SweepConfig, cache: &BettiCache) -> Result<CellReport> {
    let start = Instant::now();
    let mut run = CellRun {
        cell,
        cfg,
        cache,
        limits: cfg.limits(),
        field: cfg.field()?,
        checks: Vec::new(),
    };
    let outcome = run.run();
    let failed = run.checks.iter().any(|c| c.status == Status::Fail);
    let (status, note) = match outcome {
        Ok(()) if failed => (Status::Fail, None),
        Ok(()) => (Status::Pass, None),
        Err(e @ Error::CapExceeded { .. }) => (Status::Skipped, Some(e.to_string())),
        Err(e) => (Status::Fail, Some(e.to_string())),
    };
    if status == Status::Fail {
        log::warn!("cell n={} t={} s={} failed", cell.n, cell.t, cell.s);
    }
    Ok(CellReport {
        n: cell.n,
        t: cell.t,
        s: cell.s,
        status,
        checks: run.checks,
        note,
        repro: repro(cell, cfg),
        ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every cell of `cfg` on a pool of `cfg.jobs` workers. The report is
/// ordered by `(n, t, s)` regardless of scheduling.
pub fn run_sweep(cfg: &SweepConfig, cache: &BettiCache) -> Result<VerificationReport> {
    cfg.validate()?;
    let cells = cfg.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let reports = pool.install(|| {
        cells
            .par_iter()
            .map(|&c| run_cell(c, cfg, cache))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(VerificationReport::new(cfg.clone(), reports))
}
