//! Closed-form invariants of `I_t(L_n)^s`.
//!
//! All evaluators use exact integer arithmetic and report overflow as an
//! error.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::path_ideal::binomial;

/// `n = p(t+1) + d` with `0 <= d <= t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaDecomposition {
    pub n: u64,
    pub t: u64,
    pub p: u64,
    pub d: u64,
}

impl GammaDecomposition {
    pub fn new(n: u64, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("Γ(n, t) needs t >= 1"));
        }
        let block = t.checked_add(1).ok_or(Error::Overflow("Γ"))?;
        Ok(GammaDecomposition {
            n,
            t,
            p: n / block,
            d: n % block,
        })
    }

    pub fn value(&self) -> Result<u64> {
        let blocks = if self.d < self.t { self.p } else { self.p + 1 };
        blocks.checked_mul(self.t - 1).ok_or(Error::Overflow("Γ"))
    }
}

/// `Γ(n, t)`: `p(t-1)` when `d < t`, `(p+1)(t-1)` when `d = t`.
pub fn gamma(n: u64, t: u64) -> Result<u64> {
    GammaDecomposition::new(n, t)?.value()
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}

fn big_to_u64(v: num_bigint::BigUint, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// `reg R/I_t(L_n)^s = Γ(n,t) + t(s-1)`.
pub fn reg_power(n: u64, t: u64, s: u64) -> Result<u64> {
    require(n >= t && t >= 2 && s >= 1, || {
        format!("reg_power needs n >= t >= 2 and s >= 1, got n={n}, t={t}, s={s}")
    })?;
    t.checked_mul(s - 1)
        .and_then(|x| x.checked_add(gamma(n, t).ok()?))
        .ok_or(Error::Overflow("reg_power"))
}

/// `ts - 1` on `t <= n <= 2t`.
pub fn reg_linear_case(n: u64, t: u64, s: u64) -> Result<u64> {
    require(t >= 1 && t <= n && n <= 2 * t && s >= 1, || {
        format!("reg_linear_case needs t <= n <= 2t and s >= 1, got n={n}, t={t}, s={s}")
    })?;
    let v = t.checked_mul(s).ok_or(Error::Overflow("reg_linear_case"))? - 1;
    if t >= 2 {
        debug_assert_eq!(Some(v), reg_power(n, t, s).ok());
    }
    Ok(v)
}

fn require_linear_range(n: u64, t: u64, what: &str) -> Result<()> {
    require(t >= 1 && t <= n && n <= 2 * t, || {
        format!("{what} is only stated for t <= n <= 2t, got n={n}, t={t}")
    })
}

/// `β_i(I^s) = Σ_{k=i}^{n-t} binom(n-t,k) binom(s,k) binom(k,i)`.
pub fn betti_closed_form(n: u64, t: u64, s: u64, i: u64) -> Result<u64> {
    require_linear_range(n, t, "betti_closed_form")?;
    require(s >= 1, || "betti_closed_form needs s >= 1".into())?;
    let m = n - t;
    let total = (i..=m)
        .map(|k| binomial(m, k) * binomial(s, k) * binomial(k, i))
        .sum();
    big_to_u64(total, "betti_closed_form")
}

/// `pd R/I^s = min(n-t+1, s+1)`.
pub fn pd_closed_form(n: u64, t: u64, s: u64) -> Result<u64> {
    require_linear_range(n, t, "pd_closed_form")?;
    require(s >= 1, || "pd_closed_form needs s >= 1".into())?;
    Ok((n - t + 1).min(s.saturating_add(1)))
}

/// `S_k = binom(n-t, k) binom(s, k)`.
pub fn s_k_closed_form(n: u64, t: u64, s: u64, k: u64) -> Result<u64> {
    require(n >= t && k >= 1 && k <= n - t, || {
        format!("s_k_closed_form needs 1 <= k <= n-t, got n={n}, t={t}, k={k}")
    })?;
    big_to_u64(binomial(n - t, k) * binomial(s, k), "s_k_closed_form")
}

/// Whether `I_t(L_n)^s` has a linear resolution: `t <= n <= 2t`.
pub fn linear_resolution_predicate(n: u64, t: u64) -> Result<bool> {
    require(n >= t && t >= 2, || {
        format!("linear_resolution_predicate needs n >= t >= 2, got n={n}, t={t}")
    })?;
    Ok(n <= 2 * t)
}

/// `Γ(n-t-1, t) = Γ(n, t) - (t-1)`.
pub fn gamma_shift_identity(n: u64, t: u64) -> Result<bool> {
    require(t >= 1 && n > t, || {
        format!("gamma_shift_identity needs n >= t+1, got n={n}, t={t}")
    })?;
    let lhs = gamma(n - t - 1, t)?;
    let rhs = gamma(n, t)?.checked_sub(t - 1);
    Ok(rhs == Some(lhs))
}

/// `Γ(a, t) + Γ(b, t) <= Γ(a+b+1, t)`.
pub fn gamma_superadditive(a: u64, b: u64, t: u64) -> Result<bool> {
    require(a >= 1 && b >= 1, || {
        format!("gamma_superadditive needs a, b >= 1, got a={a}, b={b}")
    })?;
    let sum = a
        .checked_add(b)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("gamma_superadditive"))?;
    let lhs = gamma(a, t)?
        .checked_add(gamma(b, t)?)
        .ok_or(Error::Overflow("gamma_superadditive"))?;
    Ok(lhs <= gamma(sum, t)?)
}

/// `reg R/(I^s, u_{n-t+1}, ..., u_j) = Γ(n,t) + t(s-1)` for `n >= 2t+1`.
pub fn tail_extension_reg(n: u64, t: u64, s: u64, j: u64) -> Result<u64> {
    require(
        t >= 1 && n > 2 * t && s >= 1 && j >= 2 && j <= n - t + 1,
        || {
            format!(
            "tail_extension_reg needs n >= 2t+1, s >= 1 and 2 <= j <= n-t+1, got n={n}, t={t}, s={s}, j={j}"
        )
        },
    )?;
    reg_power(n, t, s)
}
