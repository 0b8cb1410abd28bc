//! Linear quotients and quasi-linearity for powers of path ideals.
//!
//! Generators of `I^s` are ordered lexicographically by composition, greatest
//! first. For `t <= n <= 2t` every prefix colon `(α_q, ..., α_{j+1}) : α_j`
//! is generated by the variables `x_{λ-1}` with `a_λ > 0`, `λ >= 2`.
//! For `n >= 2t+1` the colon `J : u_{n-t+1}^s` contains exactly one
//! variable, `x_{n-t}`, plus generators that are not variables.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal};
use crate::path_ideal::{composition_to_monomial, power_generators, Composition, PathIdealSpec};

/// Sorts compositions of a common sum, greatest first.
pub fn greatest_first_sort(mut comps: Vec<Composition>) -> Result<Vec<Composition>> {
    if let Some(first) = comps.first() {
        let (s, k) = (first.sum(), first.len());
        if let Some(bad) = comps.iter().find(|c| c.sum() != s || c.len() != k) {
            return Err(Error::invalid(format!(
                "composition {:?} does not match sum {s} with {k} parts",
                bad.parts()
            )));
        }
    }
    comps.sort_by(|a, b| b.cmp(a));
    Ok(comps)
}

/// `{λ - 1 : a_λ > 0, λ >= 2}`; the index 0 that `λ = 1` would give is dropped.
pub fn closed_form_colon(c: &Composition) -> BTreeSet<usize> {
    c.positive_indices()
        .filter(|&l| l >= 2)
        .map(|l| l - 1)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonStep {
    /// 1-based position in the greatest-first order (always `>= 2`).
    pub position: usize,
    pub composition: Composition,
    /// Variables generating the prefix colon.
    pub variables: BTreeSet<usize>,
}

impl ColonStep {
    pub fn r(&self) -> usize {
        self.variables.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientCertificate {
    pub order: Vec<Composition>,
    pub steps: Vec<ColonStep>,
    /// Whether every step was also compared with [`closed_form_colon`].
    pub closed_form_checked: bool,
}

impl QuotientCertificate {
    /// `|{j : r_j = k}|`.
    pub fn census(&self, k: usize) -> usize {
        self.steps.iter().filter(|s| s.r() == k).count()
    }

    /// `Σ_j binom(r_j, i)` for `i >= 1`, and the generator count for `i = 0`.
    pub fn betti_from_quotients(&self, i: usize) -> u64 {
        if i == 0 {
            return self.order.len() as u64;
        }
        self.steps
            .iter()
            .map(|s| {
                crate::path_ideal::binomial(s.r() as u64, i as u64)
                    .try_into()
                    .unwrap_or(u64::MAX)
            })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuotientFailure {
    /// The prefix colon at `position` has a generator that is not a variable.
    NotVariables {
        position: usize,
        composition: Composition,
        colon: Vec<Monomial>,
        offending: Monomial,
    },
    /// The colon is generated by variables but not by the expected ones.
    ClosedFormMismatch {
        position: usize,
        composition: Composition,
        brute_force: BTreeSet<usize>,
        closed_form: BTreeSet<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum QuotientOutcome {
    Certificate(QuotientCertificate),
    Failure(QuotientFailure),
}

/// Checks that `order` (greatest first) gives linear quotients of `I^s`.
/// When `n <= 2t` each colon is also compared with the closed form.
pub fn linear_quotients_check(
    spec: &PathIdealSpec,
    s: u32,
    order: &[Composition],
    max_generators: usize,
) -> Result<QuotientOutcome> {
    let expected = power_generators(spec, s, max_generators)?;
    let mut given: Vec<&Composition> = order.iter().collect();
    given.sort();
    let mut want: Vec<&Composition> = expected.iter().map(|(c, _)| c).collect();
    want.sort();
    if given != want {
        return Err(Error::invalid(
            "order is not a permutation of the compositions of s",
        ));
    }
    let check_closed = spec.n <= 2 * spec.t;
    let monomials = order
        .iter()
        .map(|c| composition_to_monomial(spec, c))
        .collect::<Result<Vec<_>>>()?;

    let mut steps = Vec::with_capacity(order.len().saturating_sub(1));
    for (j, (c, alpha)) in order.iter().zip(&monomials).enumerate().skip(1) {
        let colon = minimalize(
            monomials[..j]
                .iter()
                .map(|m| m.quotient_unchecked(alpha))
                .collect(),
        );
        if let Some(bad) = colon.iter().find(|g| g.degree() != 1) {
            return Ok(QuotientOutcome::Failure(QuotientFailure::NotVariables {
                position: j + 1,
                composition: c.clone(),
                offending: bad.clone(),
                colon,
            }));
        }
        let variables: BTreeSet<usize> = colon.iter().filter_map(Monomial::as_variable).collect();
        if check_closed {
            let closed = closed_form_colon(c);
            if closed != variables {
                return Ok(QuotientOutcome::Failure(
                    QuotientFailure::ClosedFormMismatch {
                        position: j + 1,
                        composition: c.clone(),
                        brute_force: variables,
                        closed_form: closed,
                    },
                ));
            }
        }
        steps.push(ColonStep {
            position: j + 1,
            composition: c.clone(),
            variables,
        });
    }
    Ok(QuotientOutcome::Certificate(QuotientCertificate {
        order: order.to_vec(),
        steps,
        closed_form_checked: check_closed,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum QuasiLinear {
    Holds,
    Fails {
        generator: Monomial,
        colon: Vec<Monomial>,
        offending: Monomial,
    },
}

impl QuasiLinear {
    pub fn holds(&self) -> bool {
        matches!(self, QuasiLinear::Holds)
    }
}

/// For every `u ∈ G(I)`, tests whether `(G(I) \ {u}) : u` is generated by
/// variables. Generators are visited in the ideal's canonical order.
pub fn quasi_linear_check(ideal: &MonomialIdeal) -> Result<QuasiLinear> {
    if ideal.len() < 2 {
        return Ok(QuasiLinear::Holds);
    }
    if ideal.generator_degree().is_none() {
        return Err(Error::invalid(
            "quasi-linearity is defined for ideals generated in a single degree",
        ));
    }
    let gens = ideal.generators();
    for (idx, u) in gens.iter().enumerate() {
        let colon = minimalize(
            gens.iter()
                .enumerate()
                .filter(|&(k, _)| k != idx)
                .map(|(_, g)| g.quotient_unchecked(u))
                .collect(),
        );
        if let Some(bad) = colon.iter().find(|g| g.degree() != 1) {
            return Ok(QuasiLinear::Fails {
                generator: u.clone(),
                offending: bad.clone(),
                colon,
            });
        }
    }
    Ok(QuasiLinear::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiLinearWitness {
    /// `u_{n-t+1}^s`.
    pub alpha: Monomial,
    /// Minimal generators of `J : α`.
    pub colon: Vec<Monomial>,
    /// Degree-1 generators of `J : α`.
    pub variables: BTreeSet<usize>,
    /// `x_{n-t}` is the only variable in `J : α`.
    pub unique_variable_is_expected: bool,
    /// `x_{n-t}` does not divide `u_1^s`.
    pub variable_misses_u1_power: bool,
    /// Some generator of `J : α` that is not a variable.
    pub non_variable: Option<Monomial>,
}

impl QuasiLinearWitness {
    pub fn confirmed(&self) -> bool {
        self.unique_variable_is_expected
            && self.variable_misses_u1_power
            && self.non_variable.is_some()
    }
}

/// The failure of quasi-linearity of `I^s` at `α = u_{n-t+1}^s` for `n >= 2t+1`.
pub fn quasi_linear_witness(
    spec: &PathIdealSpec,
    s: u32,
    max_generators: usize,
) -> Result<QuasiLinearWitness> {
    let (n, t) = (spec.n, spec.t);
    if n < 2 * t + 1 {
        return Err(Error::invalid(format!(
            "the quasi-linearity witness needs n >= 2t+1, got n={n}, t={t}"
        )));
    }
    let q = spec.num_generators();
    let alpha = spec.generator(q)?.pow(s)?;
    let others: Vec<Monomial> = power_generators(spec, s, max_generators)?
        .into_iter()
        .map(|(_, m)| m)
        .filter(|m| *m != alpha)
        .collect();
    let colon = minimalize(
        others
            .iter()
            .map(|m| m.quotient_unchecked(&alpha))
            .collect(),
    );
    let variables: BTreeSet<usize> = colon.iter().filter_map(Monomial::as_variable).collect();
    let expected = n - t;
    let u1s = spec.generator(1)?.pow(s)?;
    let non_variable = colon.iter().find(|g| g.degree() != 1).cloned();
    Ok(QuasiLinearWitness {
        unique_variable_is_expected: variables.len() == 1 && variables.contains(&expected),
        variable_misses_u1_power: u1s.deg_k(expected) == 0,
        alpha,
        colon,
        variables,
        non_variable,
    })
}

/// Greatest-first order of the generators of `I^s`.
pub fn greatest_first_order(
    spec: &PathIdealSpec,
    s: u32,
    max_generators: usize,
) -> Result<Vec<Composition>> {
    greatest_first_sort(
        power_generators(spec, s, max_generators)?
            .into_iter()
            .map(|(c, _)| c)
            .collect(),
    )
}
