//! Named verification suites over configurable order ranges.
//!
//! Each check sweeps a family of instances and compares an enumerated
//! quantity against a formula or bound, reporting every counterexample.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, f_d};
use crate::construct::cyclic_symmetric_witness;
use crate::error::{Error, Result};
use crate::group::{abelian_groups_up_to, divisors, GroupSpec};
use crate::search::{rho_pm_oracle, rho_pm_restricted, SearchOptions};
use crate::sumset::set_sum;

/// The named checks exposed by the `verify` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Full-subset oracle agrees with the class-restricted search.
    Symmetry,
    /// Cyclic groups: searched signed minimum equals `u(n,m,h)`.
    Cyclic,
    /// The two formulations of `u±` coincide.
    UpmEquality,
    /// Searched signed minimum equals the conjectured closed form.
    Conjecture,
    /// Groups without an odd `Z_p x Z_p` subgroup: signed minimum equals
    /// the plain one.
    NoP2Subgroup,
    /// Cyclic witness family meets its size and `f_d` guarantees.
    Constructions,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Symmetry,
        CheckKind::Cyclic,
        CheckKind::UpmEquality,
        CheckKind::Conjecture,
        CheckKind::NoP2Subgroup,
        CheckKind::Constructions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Symmetry => "symmetry",
            CheckKind::Cyclic => "cyclic",
            CheckKind::UpmEquality => "upm-equality",
            CheckKind::Conjecture => "conjecture",
            CheckKind::NoP2Subgroup => "no-p2-subgroup",
            CheckKind::Constructions => "constructions",
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Sweep configuration; `None` fields use per-check defaults.
#[derive(Debug, Clone, Default)]
pub struct CheckConfig {
    pub max_order: Option<u64>,
    pub h_values: Option<Vec<u64>>,
    pub m_max: Option<u64>,
    pub options: SearchOptions,
}

impl CheckConfig {
    fn order(&self, default: u64) -> u64 {
        self.max_order.unwrap_or(default)
    }

    fn hs(&self, default: &[u64]) -> Vec<u64> {
        self.h_values.clone().unwrap_or_else(|| default.to_vec())
    }

    fn m_cap(&self, n: u64, default: u64) -> u64 {
        n.min(self.m_max.unwrap_or(default))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckFailure {
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub instances: u64,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_check(kind: CheckKind, cfg: &CheckConfig) -> Result<CheckReport> {
    match kind {
        CheckKind::Symmetry => check_symmetry(cfg),
        CheckKind::Cyclic => check_cyclic(cfg),
        CheckKind::UpmEquality => check_upm_equality(cfg),
        CheckKind::Conjecture => check_conjecture(cfg),
        CheckKind::NoP2Subgroup => check_no_p2(cfg),
        CheckKind::Constructions => check_constructions(cfg),
    }
}

/// Runs instances in parallel, keeping failures; real errors abort.
fn sweep<I, F>(check: &'static str, instances: Vec<I>, f: F) -> Result<CheckReport>
where
    I: Send + Sync,
    F: Fn(&I) -> Result<Option<CheckFailure>> + Send + Sync,
{
    let total = instances.len() as u64;
    let failures: Vec<CheckFailure> = instances
        .par_iter()
        .map(f)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckReport {
        check,
        instances: total,
        failures,
    })
}

fn check_symmetry(cfg: &CheckConfig) -> Result<CheckReport> {
    let mut instances = Vec::new();
    for g in abelian_groups_up_to(cfg.order(10)) {
        for m in 1..=cfg.m_cap(g.order(), 5) {
            for &h in &cfg.hs(&[2, 3]) {
                instances.push((g.clone(), m, h));
            }
        }
    }
    let options = cfg.options;
    sweep("symmetry", instances, move |(g, m, h)| {
        let restricted = rho_pm_restricted(g, *m, *h, &options)?;
        let oracle = rho_pm_oracle(g, *m, *h, &options)?;
        if restricted.value != oracle.value {
            return Ok(Some(CheckFailure {
                instance: format!("group {g}, m = {m}, h = {h}"),
                detail: format!(
                    "restricted search found {}, full oracle found {}",
                    restricted.value, oracle.value
                ),
            }));
        }
        Ok(None)
    })
}

fn check_cyclic(cfg: &CheckConfig) -> Result<CheckReport> {
    let mut instances = Vec::new();
    for n in 2..=cfg.order(21) {
        for m in 1..=cfg.m_cap(n, u64::MAX) {
            for &h in &cfg.hs(&[2, 3]) {
                instances.push((n, m, h));
            }
        }
    }
    let options = cfg.options;
    sweep("cyclic", instances, move |&(n, m, h)| {
        let g = GroupSpec::new(&[n])?;
        let searched = rho_pm_restricted(&g, m, h, &options)?.value;
        let formula = bounds::u(n, m, h)?;
        if searched != formula {
            return Ok(Some(CheckFailure {
                instance: format!("group {n}, m = {m}, h = {h}"),
                detail: format!("signed search found {searched}, u = {formula}"),
            }));
        }
        Ok(None)
    })
}

fn check_upm_equality(cfg: &CheckConfig) -> Result<CheckReport> {
    let mut instances = Vec::new();
    for g in abelian_groups_up_to(cfg.order(100)) {
        instances.push(g);
    }
    let hs = cfg.hs(&[2, 3, 4, 5]);
    let m_max = cfg.m_max;
    sweep("upm-equality", instances, move |g| {
        let cap = m_max.unwrap_or(u64::MAX).min(g.order());
        for m in 1..=cap {
            for &h in &hs {
                let via_d = bounds::u_pm_via_divisors(g, m, h)?.value;
                let via_f = bounds::u_pm_via_factorization(g, m, h)?.value;
                if via_d != via_f {
                    return Ok(Some(CheckFailure {
                        instance: format!("group {g}, m = {m}, h = {h}"),
                        detail: format!(
                            "divisor route gives {via_d}, factorization route gives {via_f}"
                        ),
                    }));
                }
            }
        }
        Ok(None)
    })
}

fn check_conjecture(cfg: &CheckConfig) -> Result<CheckReport> {
    let mut instances = Vec::new();
    for g in abelian_groups_up_to(cfg.order(24)) {
        for m in 1..=cfg.m_cap(g.order(), u64::MAX) {
            for &h in &cfg.hs(&[2, 3]) {
                instances.push((g.clone(), m, h));
            }
        }
    }
    let options = cfg.options;
    sweep("conjecture", instances, move |(g, m, h)| {
        let searched = rho_pm_restricted(g, *m, *h, &options)?.value;
        let predicted = bounds::conjecture_value(g, *m, *h)?;
        if searched != predicted {
            return Ok(Some(CheckFailure {
                instance: format!("group {g}, m = {m}, h = {h}"),
                detail: format!("signed search found {searched}, conjectured value is {predicted}"),
            }));
        }
        Ok(None)
    })
}

fn check_no_p2(cfg: &CheckConfig) -> Result<CheckReport> {
    let mut instances = Vec::new();
    for g in abelian_groups_up_to(cfg.order(16)) {
        if g.has_odd_square_subgroup() {
            continue;
        }
        for m in 1..=cfg.m_cap(g.order(), u64::MAX) {
            for &h in &cfg.hs(&[2, 3]) {
                instances.push((g.clone(), m, h));
            }
        }
    }
    let options = cfg.options;
    sweep("no-p2-subgroup", instances, move |(g, m, h)| {
        let signed = rho_pm_restricted(g, *m, *h, &options)?.value;
        let plain = bounds::rho_formula(g, *m, *h)?;
        if signed != plain {
            return Ok(Some(CheckFailure {
                instance: format!("group {g}, m = {m}, h = {h}"),
                detail: format!("signed minimum {signed} differs from plain minimum {plain}"),
            }));
        }
        Ok(None)
    })
}

fn check_constructions(cfg: &CheckConfig) -> Result<CheckReport> {
    let ns: Vec<u64> = (2..=cfg.order(200)).collect();
    let hs = cfg.hs(&[1, 2, 3, 4, 5, 6]);
    let h_max = hs.iter().copied().max().unwrap_or(1);
    let m_max = cfg.m_max;
    sweep("constructions", ns, move |&n| {
        for d in divisors(n)? {
            for m in 1..=m_max.unwrap_or(u64::MAX).min(n) {
                let w = cyclic_symmetric_witness(n, m, d)?;
                let r = &w.set;
                if *r != r.negated() {
                    return Ok(Some(CheckFailure {
                        instance: format!("n = {n}, d = {d}, m = {m}"),
                        detail: "witness is not symmetric".into(),
                    }));
                }
                let expected_size = d * m.div_ceil(d);
                if r.len() != expected_size || r.len() < m {
                    return Ok(Some(CheckFailure {
                        instance: format!("n = {n}, d = {d}, m = {m}"),
                        detail: format!(
                            "witness has {} members, expected {expected_size} >= {m}",
                            r.len()
                        ),
                    }));
                }
                let mut acc = r.clone();
                for h in 1..=h_max {
                    if h > 1 {
                        acc = set_sum(&acc, r);
                    }
                    if !hs.contains(&h) {
                        continue;
                    }
                    let bound = f_d(m, h, d)?;
                    if acc.len() > bound {
                        return Ok(Some(CheckFailure {
                            instance: format!("n = {n}, d = {d}, m = {m}, h = {h}"),
                            detail: format!("|hR| = {} exceeds f_d = {bound}", acc.len()),
                        }));
                    }
                }
            }
        }
        Ok(None)
    })
}
