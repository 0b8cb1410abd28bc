//! t-path ideals of the line graph `L_n` and the generators of their powers.
//!
//! `I_t(L_n)` is generated by `u_i = x_i x_{i+1} ... x_{i+t-1}` for
//! `1 <= i <= n-t+1`. Every minimal generator of `I_t(L_n)^s` is a distinct
//! product `u_1^{a_1} ... u_{n-t+1}^{a_{n-t+1}}` with `a_1 + ... = s`, so a
//! [`Composition`] of `s` names it uniquely.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathIdealSpec {
    pub n: usize,
    pub t: usize,
}

impl PathIdealSpec {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::invalid(format!(
                "path ideal needs n >= 1 and t >= 1, got n={n}, t={t}"
            )));
        }
        Ok(PathIdealSpec { n, t })
    }

    /// Number of generators `n - t + 1`, or 0 when `n < t`.
    pub fn num_generators(&self) -> usize {
        (self.n + 1).saturating_sub(self.t)
    }

    /// `u_i`, 1-based.
    pub fn generator(&self, i: usize) -> Result<Monomial> {
        if i == 0 || i > self.num_generators() {
            return Err(Error::invalid(format!(
                "u_{i} does not exist for n={}, t={}",
                self.n, self.t
            )));
        }
        Monomial::squarefree(self.n, i..i + self.t)
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.n, line_graph_generators(self))
            .expect("path generators share the ambient ring")
    }

    /// `I_t(L_n)^s` built from compositions, without generic minimalization.
    pub fn power_ideal(&self, s: u32, max_generators: usize) -> Result<MonomialIdeal> {
        let gens = power_generators(self, s, max_generators)?
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// `(I^s, u_{n-t+1}, u_{n-t}, ..., u_j)`.
    pub fn power_plus_tail(
        &self,
        s: u32,
        j: usize,
        max_generators: usize,
    ) -> Result<MonomialIdeal> {
        let q = self.num_generators();
        if j == 0 || j > q {
            return Err(Error::invalid(format!("tail index j={j} outside 1..={q}")));
        }
        let mut gens = self.power_ideal(s, max_generators)?.generators().to_vec();
        for i in j..=q {
            gens.push(self.generator(i)?);
        }
        MonomialIdeal::new(self.n, gens)
    }
}

/// `u_1, ..., u_{n-t+1}` in index order; empty when `n < t`.
pub fn line_graph_generators(spec: &PathIdealSpec) -> Vec<Monomial> {
    (1..=spec.num_generators())
        .map(|i| spec.generator(i).expect("index in range"))
        .collect()
}

/// Exponents `(a_1, ..., a_k)` of a product of path generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a composition needs at least one part"));
        }
        parts
            .iter()
            .try_fold(0u32, |acc, &p| acc.checked_add(p))
            .ok_or(Error::Overflow("composition sum"))?;
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// 1-based indices `λ` with `a_λ > 0`.
    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i + 1)
    }
}

/// All compositions of `s` into `k` non-negative parts, lexicographically
/// decreasing: `(s,0,...,0)` first, `(0,...,0,s)` last.
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(s: u32, k: usize) -> Self {
        let next = (k > 0).then(|| {
            let mut v = vec![0; k];
            v[0] = s;
            v
        });
        Compositions { next }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.next.take()?;
        let k = cur.len();
        if let Some(i) = (0..k - 1).rev().find(|&i| cur[i] > 0) {
            let mut nxt = cur.clone();
            let tail: u32 = nxt[i + 1..].iter().sum();
            nxt[i] -= 1;
            nxt[i + 1] = tail + 1;
            for x in &mut nxt[i + 2..] {
                *x = 0;
            }
            self.next = Some(nxt);
        }
        Some(Composition(cur))
    }
}

/// `Π u_i^{a_i}`.
pub fn composition_to_monomial(spec: &PathIdealSpec, c: &Composition) -> Result<Monomial> {
    let q = spec.num_generators();
    if c.len() != q {
        return Err(Error::invalid(format!(
            "composition has {} parts, expected n-t+1 = {q}",
            c.len()
        )));
    }
    // u_i covers x_i..x_{i+t-1}, so deg_k = sum of a_i over max(1,k-t+1) <= i <= min(k,q)
    let mut exps = vec![0u64; spec.n];
    for (i, &a) in c.parts().iter().enumerate() {
        for e in &mut exps[i..i + spec.t] {
            *e += a as u64;
        }
    }
    let exps = exps
        .into_iter()
        .map(|e| u32::try_from(e).map_err(|_| Error::Overflow("composition monomial")))
        .collect::<Result<Vec<_>>>()?;
    Monomial::new(exps)
}

/// Minimal generators of `I_t(L_n)^s`, paired with their compositions, in
/// lexicographically decreasing composition order.
pub fn power_generators(
    spec: &PathIdealSpec,
    s: u32,
    max_generators: usize,
) -> Result<Vec<(Composition, Monomial)>> {
    if spec.n < spec.t {
        return Err(Error::invalid(format!(
            "I_{}(L_{}) is the zero ideal; it has no power generators",
            spec.t, spec.n
        )));
    }
    if s == 0 {
        return Err(Error::invalid("power exponent must be at least 1"));
    }
    let k = spec.num_generators();
    let count = composition_count(s as u64, k as u64)?;
    let cap = BigUint::from(max_generators);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "power generators",
            count: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: max_generators as u128,
        });
    }
    Compositions::new(s, k)
        .map(|c| {
            let m = composition_to_monomial(spec, &c)?;
            Ok((c, m))
        })
        .collect()
}

/// Number of `(a_1, ..., a_k)` in `Z_{>=0}^k` summing to `s`: `binom(s+k-1, k-1)`.
pub fn composition_count(s: u64, k: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::invalid("composition_count needs k >= 1"));
    }
    Ok(binomial(s + k - 1, k - 1))
}

/// Exact `binom(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc = binom(n-k+i+1, i+1) after the division
        acc *= n - k + i + 1;
        acc /= i + 1;
    }
    acc
}
