//! Brute-force multigraded Betti numbers of monomial ideals.
//!
//! `β_{i,b}(I) = dim H̃_{i-1}(K^b(I))` where `K^b(I)` is the upper Koszul
//! complex. Only multidegrees in the lcm lattice of `G(I)` can carry nonzero
//! Betti numbers, so those are the only ones visited.

mod complex;
mod rank;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use complex::{reduced_homology_dims, upper_koszul_complex, SimplicialComplexFaces};
pub use rank::SignedMatrix;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d));
        if !prime || p >= 1 << 31 {
            return Err(Error::invalid(format!(
                "characteristic {p} is not a prime below 2^31"
            )));
        }
        Ok(FieldSpec { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: 2 }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub multidegree: Vec<u32>,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedEntry {
    pub i: usize,
    pub j: u64,
    pub rank: u64,
}

/// Nonzero multigraded Betti numbers of an ideal `I` (not of `R/I`),
/// sorted by `(i, multidegree)`, with the graded roll-up sorted by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub ambient: usize,
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub entries: Vec<BettiEntry>,
    pub graded: Vec<GradedEntry>,
}

impl BettiTable {
    fn from_entries(ambient: usize, characteristic: u32, mut entries: Vec<BettiEntry>) -> Self {
        entries.sort_by(|a, b| (a.i, &a.multidegree).cmp(&(b.i, &b.multidegree)));
        let mut graded: BTreeMap<(usize, u64), u64> = BTreeMap::new();
        for e in &entries {
            let j = e.multidegree.iter().map(|&x| x as u64).sum();
            *graded.entry((e.i, j)).or_default() += e.rank;
        }
        BettiTable {
            ambient,
            characteristic,
            entries,
            graded: graded
                .into_iter()
                .map(|((i, j), rank)| GradedEntry { i, j, rank })
                .collect(),
        }
    }

    /// `β_i(I)`.
    pub fn total(&self, i: usize) -> u64 {
        self.graded
            .iter()
            .filter(|g| g.i == i)
            .map(|g| g.rank)
            .sum()
    }

    /// `β_{i,j}(I)`.
    pub fn graded(&self, i: usize, j: u64) -> u64 {
        self.graded
            .iter()
            .find(|g| g.i == i && g.j == j)
            .map_or(0, |g| g.rank)
    }

    pub fn multigraded(&self, i: usize, b: &[u32]) -> u64 {
        self.entries
            .iter()
            .find(|e| e.i == i && e.multidegree == b)
            .map_or(0, |e| e.rank)
    }

    /// Largest `i` with `β_i(I) != 0`, i.e. `pd I`.
    pub fn max_index(&self) -> Option<usize> {
        self.graded.iter().map(|g| g.i).max()
    }

    /// `reg I = max { j - i : β_{i,j} != 0 }`.
    pub fn ideal_regularity(&self) -> Option<i64> {
        self.graded.iter().map(|g| g.j as i64 - g.i as i64).max()
    }

    /// `Σ (-1)^i β_i(I)`.
    pub fn alternating_sum(&self) -> i64 {
        self.graded
            .iter()
            .map(|g| {
                if g.i % 2 == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                }
            })
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// All lcms of nonempty subsets of `G(I)`, via the pairwise-lcm fixpoint,
/// sorted. Fails once more than `cap` distinct multidegrees appear.
pub fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<Monomial>> {
    let gens = ideal.generators();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    let over = |count: usize| Error::CapExceeded {
        what: "lcm lattice",
        count: count as u128,
        cap: cap as u128,
    };
    if seen.len() > cap {
        return Err(over(seen.len()));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let l = f.lcm_unchecked(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    next.push(l);
                    if seen.len() > cap {
                        return Err(over(seen.len()));
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A vertex lying in every facet makes `K^b` a cone, hence acyclic.
fn is_cone(ideal: &MonomialIdeal, b: &Monomial) -> bool {
    let be = b.exponents();
    let mut apex: u64 = be
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |m, (k, _)| m | 1 << k);
    let mut any = false;
    for g in ideal.generators().iter().filter(|g| g.divides_unchecked(b)) {
        any = true;
        for (k, (ge, bk)) in g.exponents().iter().zip(be).enumerate() {
            if ge == bk && *bk > 0 {
                apex &= !(1 << k);
            }
        }
        if apex == 0 {
            return false;
        }
    }
    any && apex != 0
}

fn betti_at(ideal: &MonomialIdeal, b: &Monomial, field: FieldSpec) -> Result<Vec<BettiEntry>> {
    if ideal.ambient() <= 64 && is_cone(ideal, b) {
        return Ok(Vec::new());
    }
    let cx = upper_koszul_complex(ideal, b)?;
    Ok(reduced_homology_dims(&cx, field)
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d > 0)
        .map(|(k, rank)| BettiEntry {
            // entry k is H̃_{k-1}, which gives β_k
            i: k,
            multidegree: b.exponents().to_vec(),
            rank,
        })
        .collect())
}

/// Multigraded Betti table of `I`. Multidegrees are processed in parallel;
/// the result is independent of scheduling.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldSpec, limits: &Limits) -> Result<BettiTable> {
    let lattice = lcm_lattice(ideal, limits.max_lattice)?;
    let per_degree: Vec<Vec<BettiEntry>> = lattice
        .par_iter()
        .map(|b| betti_at(ideal, b, field))
        .collect::<Result<_>>()?;
    let table = BettiTable::from_entries(
        ideal.ambient(),
        field.characteristic(),
        per_degree.into_iter().flatten().collect(),
    );
    debug_assert_eq!(table.total(0), ideal.len() as u64);
    Ok(table)
}

fn reject_unit(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

/// `reg R/I` from a Betti table of `I`. `R/0 = R` has regularity 0.
pub fn quotient_regularity(ideal: &MonomialIdeal, table: &BettiTable) -> Result<i64> {
    reject_unit(ideal)?;
    Ok(table.ideal_regularity().map_or(0, |r| r - 1))
}

/// `pd R/I` from a Betti table of `I`. `pd R = 0`.
pub fn quotient_projective_dimension(ideal: &MonomialIdeal, table: &BettiTable) -> Result<usize> {
    reject_unit(ideal)?;
    Ok(table.max_index().map_or(0, |i| i + 1))
}

pub fn regularity_of_quotient(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &Limits,
) -> Result<i64> {
    reject_unit(ideal)?;
    quotient_regularity(ideal, &betti_table(ideal, field, limits)?)
}

pub fn projective_dimension_of_quotient(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &Limits,
) -> Result<usize> {
    reject_unit(ideal)?;
    quotient_projective_dimension(ideal, &betti_table(ideal, field, limits)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LinearStatus {
    Linear {
        degree: u64,
    },
    /// First nonzero `β_{i,j}` off the linear strand.
    NotLinear {
        degree: u64,
        i: usize,
        j: u64,
    },
    /// Generators of different degrees; "linear resolution" does not apply.
    MixedDegrees {
        degrees: Vec<u64>,
    },
}

impl LinearStatus {
    pub fn is_linear(&self) -> bool {
        matches!(self, LinearStatus::Linear { .. })
    }
}

pub fn linear_status(ideal: &MonomialIdeal, table: &BettiTable) -> LinearStatus {
    if ideal.is_zero() {
        return LinearStatus::Linear { degree: 0 };
    }
    let Some(d) = ideal.generator_degree() else {
        let mut degrees: Vec<u64> = ideal.generators().iter().map(Monomial::degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        return LinearStatus::MixedDegrees { degrees };
    };
    match table.graded.iter().find(|g| g.j != g.i as u64 + d) {
        Some(g) => LinearStatus::NotLinear {
            degree: d,
            i: g.i,
            j: g.j,
        },
        None => LinearStatus::Linear { degree: d },
    }
}

pub fn has_linear_resolution(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &Limits,
) -> Result<bool> {
    let table = betti_table(ideal, field, limits)?;
    let status = linear_status(ideal, &table);
    if let LinearStatus::MixedDegrees { degrees } = &status {
        log::warn!("{ideal} is generated in degrees {degrees:?}; reporting no linear resolution");
    }
    Ok(status.is_linear())
}
