//! Closed-form bounds on minimum sumset and signed-sumset sizes.
//!
//! Everything here is exact integer arithmetic: the divisor bound `f_d`,
//! its minimization `u(n,m,h)` over all divisors (which equals the minimum
//! sumset size `rho`), the constrained divisor set `D(G,m)` with the two
//! equivalent formulations of the signed upper bound `u±`, the odd-divisor
//! threshold `d_m`, and the conjectured value of the signed minimum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{divisors, GroupSpec};

/// `f_d(m,h) = (h * ceil(m/d) - h + 1) * d`.
pub fn f_d(m: u64, h: u64, d: u64) -> Result<u64> {
    if m < 1 || h < 1 || d < 1 {
        return Err(Error::OutOfRange(format!(
            "f_d needs m, h, d >= 1 (got m = {m}, h = {h}, d = {d})"
        )));
    }
    let ceil = m.div_ceil(d);
    Ok((h * ceil - h + 1) * d)
}

/// A minimized bound value together with its smallest attaining divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorMin {
    pub value: u64,
    pub divisor: u64,
}

fn minimize_f_over(divs: &[u64], m: u64, h: u64) -> Result<DivisorMin> {
    let mut best: Option<DivisorMin> = None;
    for &d in divs {
        let value = f_d(m, h, d)?;
        if best.is_none_or(|b| value < b.value) {
            best = Some(DivisorMin { value, divisor: d });
        }
    }
    best.ok_or_else(|| Error::OutOfRange("empty divisor list".into()))
}

/// `u(n,m,h) = min { f_d(m,h) : d | n }`, with the smallest attaining
/// divisor. Equals the minimum h-fold sumset size over m-subsets of any
/// abelian group of order n.
pub fn u_min(n: u64, m: u64, h: u64) -> Result<DivisorMin> {
    if m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "u needs 1 <= m <= n (got m = {m}, n = {n})"
        )));
    }
    minimize_f_over(&divisors(n)?, m, h)
}

/// The value of `u(n,m,h)` alone.
pub fn u(n: u64, m: u64, h: u64) -> Result<u64> {
    Ok(u_min(n, m, h)?.value)
}

/// Minimum h-fold sumset size over m-subsets of `G`: `u(|G|, m, h)`.
pub fn rho_formula(g: &GroupSpec, m: u64, h: u64) -> Result<u64> {
    u(g.order(), m, h)
}

/// The constrained divisor set `D(G,m)`: divisors `d` of `|G|` admitting a
/// factorization `d = d_1 ... d_r` with `d_i | n_i` and
/// `d * n_r >= d_r * m`. For cyclic groups this is all of `D(n)`.
pub fn constrained_divisors(g: &GroupSpec, m: u64) -> Result<Vec<u64>> {
    let n = g.order();
    if m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "constrained divisors need 1 <= m <= |G| (got m = {m}, |G| = {n})"
        )));
    }
    let per_factor: Vec<Vec<u64>> = g
        .invariant_factors()
        .iter()
        .map(|&f| divisors(f))
        .collect::<Result<_>>()?;
    let exponent = g.exponent();
    let mut found = std::collections::BTreeSet::new();
    // depth-first product over the per-factor divisor lists
    fn rec(
        depth: usize,
        product: u64,
        per_factor: &[Vec<u64>],
        exponent: u64,
        m: u64,
        found: &mut std::collections::BTreeSet<u64>,
    ) {
        if depth == per_factor.len() - 1 {
            for &dr in &per_factor[depth] {
                let d = product * dr;
                if (d as u128) * (exponent as u128) >= (dr as u128) * (m as u128) {
                    found.insert(d);
                }
            }
            return;
        }
        for &di in &per_factor[depth] {
            rec(depth + 1, product * di, per_factor, exponent, m, found);
        }
    }
    rec(0, 1, &per_factor, exponent, m, &mut found);
    Ok(found.into_iter().collect())
}

/// `u±(G,m,h)` as the minimum of `f_d` over the constrained divisors,
/// with the smallest attaining divisor.
pub fn u_pm_via_divisors(g: &GroupSpec, m: u64, h: u64) -> Result<DivisorMin> {
    minimize_f_over(&constrained_divisors(g, m)?, m, h)
}

/// A minimized product bound together with one attaining size vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationMin {
    pub value: u64,
    pub sizes: Vec<u64>,
}

/// `u±(G,m,h)` as the exact minimum of `prod u(n_i, m_i, h)` over all
/// integer vectors with `1 <= m_i <= n_i` and `prod m_i >= m`.
///
/// The search prunes each coordinate from below by
/// `m_i >= ceil(m / prod_{j != i} n_j)` (applied dynamically) and cuts
/// branches whose partial product already meets the current best.
pub fn u_pm_via_factorization(g: &GroupSpec, m: u64, h: u64) -> Result<FactorizationMin> {
    let n = g.order();
    if m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "u± needs 1 <= m <= |G| (got m = {m}, |G| = {n})"
        )));
    }
    if h < 1 {
        return Err(Error::OutOfRange("u± needs h >= 1".into()));
    }
    let factors = g.invariant_factors();
    let r = factors.len();
    // u(n_i, ., h) per factor, indexed by m_i
    let tables: Vec<Vec<u64>> = factors
        .iter()
        .map(|&f| (1..=f).map(|mi| u(f, mi, h)).collect::<Result<Vec<u64>>>())
        .collect::<Result<_>>()?;
    // suffix[i] = product of factors from position i on
    let mut suffix = vec![1u64; r + 1];
    for i in (0..r).rev() {
        suffix[i] = suffix[i + 1] * factors[i];
    }

    struct Dfs<'a> {
        factors: &'a [u64],
        suffix: &'a [u64],
        tables: &'a [Vec<u64>],
        m: u64,
        best: u128,
        best_sizes: Vec<u64>,
        current: Vec<u64>,
    }
    impl Dfs<'_> {
        fn go(&mut self, depth: usize, chosen_product: u128, bound_product: u128) {
            if depth == self.factors.len() {
                if chosen_product >= self.m as u128 && bound_product < self.best {
                    self.best = bound_product;
                    self.best_sizes = self.current.clone();
                }
                return;
            }
            let rest_capacity = self.suffix[depth + 1] as u128;
            // smallest m_i that can still reach the target size
            let need = (self.m as u128).div_ceil(chosen_product * rest_capacity);
            let lo = need.max(1) as u64;
            if lo > self.factors[depth] {
                return;
            }
            for mi in lo..=self.factors[depth] {
                let b = bound_product * self.tables[depth][(mi - 1) as usize] as u128;
                if b >= self.best {
                    // u is nondecreasing in m, so larger m_i cannot help
                    break;
                }
                self.current.push(mi);
                self.go(depth + 1, chosen_product * mi as u128, b);
                self.current.pop();
            }
        }
    }

    let mut dfs = Dfs {
        factors,
        suffix: &suffix,
        tables: &tables,
        m,
        best: u128::MAX,
        best_sizes: Vec::new(),
        current: Vec::with_capacity(r),
    };
    dfs.go(0, 1, 1);
    debug_assert!(dfs.best < u128::MAX, "m_i = n_i is always feasible");
    Ok(FactorizationMin {
        value: dfs.best as u64,
        sizes: dfs.best_sizes,
    })
}

/// `d_m`: the smallest odd divisor of `|G|` that is at least `2m + 1`, or
/// `None` when every odd divisor is smaller.
pub fn d_m(g: &GroupSpec, m: u64) -> Result<Option<u64>> {
    let n = g.order();
    if m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "d_m needs 1 <= m <= |G| (got m = {m}, |G| = {n})"
        )));
    }
    Ok(divisors(n)?.into_iter().find(|&d| d % 2 == 1 && d > 2 * m))
}

/// The conjectured value of the minimum signed sumset size: `u±(G,m,h)`
/// for `h >= 3`, and `min { u±(G,m,2), d_m - 1 }` for `h = 2` (with an
/// absent `d_m` contributing nothing).
pub fn conjecture_value(g: &GroupSpec, m: u64, h: u64) -> Result<u64> {
    if h < 2 {
        return Err(Error::OutOfRange(format!(
            "the conjectured value is defined for h >= 2 (got h = {h})"
        )));
    }
    let upm = u_pm_via_divisors(g, m, h)?.value;
    if h >= 3 {
        return Ok(upm);
    }
    Ok(match d_m(g, m)? {
        Some(d) => upm.min(d - 1),
        None => upm,
    })
}

/// Every closed-form quantity for one `(G, m, h)` instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub group: GroupSpec,
    pub m: u64,
    pub h: u64,
    pub u_value: u64,
    pub u_pm_value: u64,
    /// `None` encodes an absent threshold (no odd divisor large enough).
    pub d_m: Option<u64>,
    /// `None` when `h < 2` (the conjecture has no claim there).
    pub conjecture_value: Option<u64>,
    pub argmin_d: u64,
    pub argmin_d_constrained: u64,
}

pub fn bound_report(g: &GroupSpec, m: u64, h: u64) -> Result<BoundReport> {
    let u = u_min(g.order(), m, h)?;
    let upm = u_pm_via_divisors(g, m, h)?;
    Ok(BoundReport {
        group: g.clone(),
        m,
        h,
        u_value: u.value,
        u_pm_value: upm.value,
        d_m: d_m(g, m)?,
        conjecture_value: if h >= 2 {
            Some(conjecture_value(g, m, h)?)
        } else {
            None
        },
        argmin_d: u.divisor,
        argmin_d_constrained: upm.divisor,
    })
}
