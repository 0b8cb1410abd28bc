//! Monomials and monomial ideals over a fixed polynomial ring `K[x1, ..., xn]`.
//!
//! A [`Monomial`] is a dense exponent vector; the ambient variable count is its
//! length. A [`MonomialIdeal`] stores its minimal generating set sorted
//! lexicographically by exponent vector, so two equal ideals always compare
//! and serialize identically.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent (and total degree) any arithmetic result may reach.
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

fn check_same(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.0.len() != b.0.len() {
        return Err(Error::AmbientMismatch {
            left: a.0.len(),
            right: b.0.len(),
        });
    }
    Ok(())
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        let m = Monomial(exponents);
        m.check_cap(DEFAULT_EXPONENT_CAP)?;
        Ok(m)
    }

    /// The unit monomial `1` in `ambient` variables.
    pub fn one(ambient: usize) -> Self {
        Monomial(vec![0; ambient])
    }

    /// The variable `x_k`, 1-based.
    pub fn var(ambient: usize, k: usize) -> Result<Self> {
        if k == 0 || k > ambient {
            return Err(Error::invalid(format!(
                "variable x{k} outside x1..x{ambient}"
            )));
        }
        let mut e = vec![0; ambient];
        e[k - 1] = 1;
        Ok(Monomial(e))
    }

    /// Squarefree monomial on the 1-based variable indices in `vars`.
    pub fn squarefree(ambient: usize, vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut m = Monomial::one(ambient);
        for k in vars {
            if k == 0 || k > ambient {
                return Err(Error::invalid(format!(
                    "variable x{k} outside x1..x{ambient}"
                )));
            }
            m.0[k - 1] = 1;
        }
        Ok(m)
    }

    fn check_cap(&self, cap: u32) -> Result<()> {
        if let Some(&e) = self.0.iter().find(|&&e| e > cap) {
            return Err(Error::ExponentOverflow {
                value: e as u64,
                cap,
            });
        }
        let d = self.degree();
        if d > cap as u64 {
            return Err(Error::ExponentOverflow { value: d, cap });
        }
        Ok(())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Exponent of `x_k` (1-based).
    pub fn deg_k(&self, k: usize) -> u32 {
        self.0[k - 1]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// If this monomial is a single variable `x_k`, returns `k`.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.0.iter().position(|&e| e == 1).map(|p| p + 1)
    }

    pub fn support(&self) -> Support {
        Support(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, _)| k + 1)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_same(self, other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        check_same(self, other)?;
        Ok(Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        check_same(self, other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.mul_capped(other, DEFAULT_EXPONENT_CAP)
    }

    pub fn mul_capped(&self, other: &Monomial, cap: u32) -> Result<Monomial> {
        check_same(self, other)?;
        let m = Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_add(*b))
                .collect(),
        );
        m.check_cap(cap)?;
        Ok(m)
    }

    /// `self / gcd(self, other)`: componentwise saturating difference.
    pub fn quotient(&self, other: &Monomial) -> Result<Monomial> {
        check_same(self, other)?;
        Ok(self.quotient_unchecked(other))
    }

    pub(crate) fn quotient_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn pow(&self, s: u32) -> Result<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for &e in &self.0 {
            let v = e as u64 * s as u64;
            if v > DEFAULT_EXPONENT_CAP as u64 {
                return Err(Error::ExponentOverflow {
                    value: v,
                    cap: DEFAULT_EXPONENT_CAP,
                });
            }
            out.push(v as u32);
        }
        let m = Monomial(out);
        m.check_cap(DEFAULT_EXPONENT_CAP)?;
        Ok(m)
    }

    /// Parses the text form `x1^2*x3` (or `1`) in `ambient` variables.
    pub fn parse(input: &str, ambient: usize) -> Result<Monomial> {
        let fail = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s = input.trim();
        let mut exps = vec![0u64; ambient];
        if s == "1" {
            return Monomial::new(vec![0; ambient]);
        }
        if s.is_empty() {
            return Err(fail("empty"));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('x')
                .ok_or_else(|| fail("factor must start with 'x'"))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u64>().map_err(|_| fail("bad exponent"))?),
                None => (rest, 1),
            };
            let k: usize = idx.parse().map_err(|_| fail("bad variable index"))?;
            if k == 0 || k > ambient {
                return Err(fail("variable index outside the ambient ring"));
            }
            exps[k - 1] += exp;
        }
        let mut out = Vec::with_capacity(ambient);
        for e in exps {
            if e > DEFAULT_EXPONENT_CAP as u64 {
                return Err(Error::ExponentOverflow {
                    value: e,
                    cap: DEFAULT_EXPONENT_CAP,
                });
            }
            out.push(e as u32);
        }
        Monomial::new(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A set of 1-based variable indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Support(pub BTreeSet<usize>);

impl Support {
    pub fn is_disjoint(&self, other: &Support) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Removes duplicates and every monomial strictly divisible by another one.
/// The result is sorted lexicographically by exponent vector.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // candidates come in nondecreasing degree, so only kept ones can divide g
        if !kept.iter().any(|k| k.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

/// A monomial ideal given by its minimal generators. No generators means the
/// zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    ambient: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(ambient: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.ambient() != ambient) {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: g.ambient(),
            });
        }
        Ok(MonomialIdeal {
            ambient,
            generators: minimalize(gens),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        MonomialIdeal {
            ambient,
            generators: Vec::new(),
        }
    }

    pub fn unit(ambient: usize) -> Self {
        MonomialIdeal {
            ambient,
            generators: vec![Monomial::one(ambient)],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of minimal generators.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    /// No generators, i.e. the zero ideal.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    /// Membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.ambient() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: m.ambient(),
            });
        }
        Ok(self.generators.iter().any(|g| g.divides_unchecked(m)))
    }

    /// `I : m`, generated by `u / gcd(u, m)` for `u` in `G(I)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        if m.ambient() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: m.ambient(),
            });
        }
        let q = self
            .generators
            .iter()
            .map(|u| u.quotient_unchecked(m))
            .collect();
        Ok(MonomialIdeal {
            ambient: self.ambient,
            generators: minimalize(q),
        })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let mut all = self.generators.clone();
        all.extend(other.generators.iter().cloned());
        Ok(MonomialIdeal {
            ambient: self.ambient,
            generators: minimalize(all),
        })
    }

    /// Ideal product `I * J`.
    pub fn product(&self, other: &MonomialIdeal, max_generators: usize) -> Result<MonomialIdeal> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let count = self.generators.len() as u128 * other.generators.len() as u128;
        if count > max_generators as u128 {
            return Err(Error::CapExceeded {
                what: "generator products",
                count,
                cap: max_generators as u128,
            });
        }
        let mut prods = Vec::with_capacity(count as usize);
        for a in &self.generators {
            for b in &other.generators {
                prods.push(a.mul(b)?);
            }
        }
        Ok(MonomialIdeal {
            ambient: self.ambient,
            generators: minimalize(prods),
        })
    }

    /// `I^s` for `s >= 1`. The number of candidate products at every step is
    /// checked against `max_generators`.
    pub fn power(&self, s: u32, max_generators: usize) -> Result<MonomialIdeal> {
        if s == 0 {
            return Err(Error::invalid("power exponent must be at least 1"));
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.product(self, max_generators)?;
        }
        Ok(acc)
    }

    pub fn generated_by_variables(&self) -> bool {
        self.generators.iter().all(|g| g.degree() == 1)
    }

    /// The common degree of all generators, if there is one.
    pub fn generator_degree(&self) -> Option<u64> {
        let d = self.generators.first()?.degree();
        self.generators.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn min_generator_degree(&self) -> Option<u64> {
        self.generators.iter().map(Monomial::degree).min()
    }

    pub fn support(&self) -> Support {
        let mut s = BTreeSet::new();
        for g in &self.generators {
            s.extend(g.support().0);
        }
        Support(s)
    }

    /// lcm of all generators; `1` for the zero ideal.
    pub fn lcm_of_generators(&self) -> Monomial {
        self.generators
            .iter()
            .fold(Monomial::one(self.ambient), |acc, g| acc.lcm_unchecked(g))
    }

    /// Degree-1 generators, as 1-based variable indices.
    pub fn variable_generators(&self) -> BTreeSet<usize> {
        self.generators
            .iter()
            .filter_map(Monomial::as_variable)
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
