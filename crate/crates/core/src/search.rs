//! Exact minima of |hA| and |h±A| over m-subsets, by exhaustive search.
//!
//! The signed minimum only needs symmetric, near-symmetric, and asymmetric
//! sets, so the restricted search enumerates exactly those three classes
//! through their pair structure. A full-subset oracle validates the
//! restriction on small instances, and a plain-sumset oracle cross-checks
//! the closed formula. Results are deterministic for any worker count.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::set::{ElementSet, MAX_ENUMERABLE_ORDER};
use crate::sumset::{classify_symmetry, SymmetryClass, MAX_FOLD_WEIGHT};

mod engine;
mod kernel;

use engine::{class_counts, pair_structure, scan_class, ClassConstraint, ScanResult};
use kernel::{Kernel, VecKernel, WordKernel};

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Minimum over symmetric, near-symmetric, and asymmetric sets.
    Restricted,
    /// Minimum over all m-subsets.
    FullOracle,
    /// Closed formula, no enumeration.
    Formula,
}

/// Search tuning knobs.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Upper bound on the number of set evaluations an instance may need;
    /// instances estimated above it are refused outright.
    pub budget: u64,
    /// Stop scanning a region once the proven lower bound is attained.
    pub prune_at_lower_bound: bool,
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            prune_at_lower_bound: true,
        }
    }
}

/// A minimum with one witness and enumeration statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub group: GroupSpec,
    pub m: u64,
    pub h: u64,
    pub value: u64,
    pub witness: ElementSet,
    pub witness_class: SymmetryClass,
    pub mode: SearchMode,
    /// Subsets whose fold was evaluated.
    pub explored: u64,
    /// Classes that contributed at least one evaluated candidate.
    pub classes_searched: Vec<SymmetryClass>,
}

fn validate(g: &GroupSpec, m: u64, h: u64) -> Result<()> {
    if g.order() > MAX_ENUMERABLE_ORDER {
        return Err(Error::OrderTooLarge {
            order: g.order(),
            limit: MAX_ENUMERABLE_ORDER,
        });
    }
    if m < 1 || m > g.order() {
        return Err(Error::OutOfRange(format!(
            "search needs 1 <= m <= |G| (got m = {m}, |G| = {})",
            g.order()
        )));
    }
    if h > MAX_FOLD_WEIGHT {
        return Err(Error::FoldTooLarge {
            h,
            limit: MAX_FOLD_WEIGHT,
        });
    }
    Ok(())
}

/// The proven floor used for early termination: |hA| >= u(n,m,h) for every
/// m-subset, and signed sumsets contain plain ones.
fn lower_bound(g: &GroupSpec, m: u64, h: u64, options: &SearchOptions) -> Result<u64> {
    if !options.prune_at_lower_bound {
        return Ok(0);
    }
    if h == 0 {
        return Ok(1);
    }
    bounds::u(g.order(), m, h)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ScanClass {
    Symmetric,
    NearSymmetric,
    Asymmetric,
    All,
}

impl ScanClass {
    fn constraint(self, m: u64) -> ClassConstraint {
        match self {
            ScanClass::Symmetric => ClassConstraint::symmetric(),
            ScanClass::NearSymmetric => ClassConstraint::near_symmetric(),
            ScanClass::Asymmetric => ClassConstraint::asymmetric(m),
            ScanClass::All => ClassConstraint::unconstrained(m),
        }
    }

    fn label(self) -> SymmetryClass {
        match self {
            ScanClass::Symmetric => SymmetryClass::Symmetric,
            ScanClass::NearSymmetric => SymmetryClass::NearSymmetric,
            ScanClass::Asymmetric => SymmetryClass::Asymmetric,
            ScanClass::All => SymmetryClass::Other,
        }
    }
}

/// Estimated number of candidates, for the upfront budget check.
fn estimate<K: Kernel>(kernel: &K, m: u64, classes: &[ScanClass]) -> u64 {
    let (q, p) = pair_structure(kernel);
    let counts = class_counts(q, p, m);
    let mut total = 0u64;
    for c in classes {
        total = total.saturating_add(match c {
            ScanClass::Symmetric => counts.sym,
            ScanClass::NearSymmetric => counts.nsym,
            ScanClass::Asymmetric => counts.asym,
            ScanClass::All => engine::binomial(kernel.order(), m),
        });
    }
    total
}

fn run_search(
    g: &GroupSpec,
    m: u64,
    h: u64,
    signed: bool,
    classes: &[ScanClass],
    mode: SearchMode,
    options: &SearchOptions,
) -> Result<Option<SearchOutcome>> {
    validate(g, m, h)?;
    // a near-symmetric set has one unpaired member and at least one paired
    // one, so the class is empty below m = 2 (singletons are asymmetric)
    let classes: Vec<ScanClass> = classes
        .iter()
        .copied()
        .filter(|c| !(matches!(c, ScanClass::NearSymmetric) && m < 2))
        .collect();
    let floor = lower_bound(g, m, h, options)?;
    if g.order() <= 64 {
        let kernel = WordKernel::new(g);
        run_with_kernel(&kernel, g, m, h, signed, &classes, mode, options, floor)
    } else {
        let kernel = VecKernel::new(g);
        run_with_kernel(&kernel, g, m, h, signed, &classes, mode, options, floor)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_with_kernel<K: Kernel>(
    kernel: &K,
    g: &GroupSpec,
    m: u64,
    h: u64,
    signed: bool,
    classes: &[ScanClass],
    mode: SearchMode,
    options: &SearchOptions,
    floor: u64,
) -> Result<Option<SearchOutcome>> {
    let needed = estimate(kernel, m, classes);
    if needed > options.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: options.budget,
        });
    }
    let results: Vec<(ScanClass, ScanResult)> = classes
        .par_iter()
        .map(|&c| (c, scan_class(kernel, m, h, signed, c.constraint(m), floor)))
        .collect();
    let mut explored = 0;
    let mut searched = Vec::new();
    let mut best: Option<(u64, Vec<u64>)> = None;
    for (c, r) in &results {
        explored += r.evaluated;
        if r.evaluated > 0 {
            searched.push(c.label());
        }
        if let Some((v, w)) = &r.best {
            let better = match &best {
                None => true,
                Some((bv, bw)) => (v, w) < (bv, bw),
            };
            if better {
                best = Some((*v, w.clone()));
            }
        }
    }
    Ok(best.map(|(value, indices)| {
        let witness = ElementSet::from_indices(g, &indices).expect("witness indices in range");
        let witness_class = classify_symmetry(&witness);
        SearchOutcome {
            group: g.clone(),
            m,
            h,
            value,
            witness,
            witness_class,
            mode,
            explored,
            classes_searched: searched,
        }
    }))
}

/// Minimum |h±A| over the symmetric, near-symmetric, and asymmetric
/// m-subsets (which realizes the overall minimum). The witness is the
/// lexicographically first set attaining the minimum within the scanned
/// region.
pub fn rho_pm_restricted(
    g: &GroupSpec,
    m: u64,
    h: u64,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    run_search(
        g,
        m,
        h,
        true,
        &[
            ScanClass::Symmetric,
            ScanClass::NearSymmetric,
            ScanClass::Asymmetric,
        ],
        SearchMode::Restricted,
        options,
    )?
    .ok_or_else(|| {
        Error::Precondition(
            "no admissible subsets in any of the symmetric, near-symmetric, \
             and asymmetric classes"
                .into(),
        )
    })
}

/// Minimum |h±A| over one symmetry class only; `None` when the class has
/// no m-subsets.
pub fn min_signed_over_class(
    g: &GroupSpec,
    m: u64,
    h: u64,
    class: SymmetryClass,
    options: &SearchOptions,
) -> Result<Option<SearchOutcome>> {
    let scan = match class {
        SymmetryClass::Symmetric => ScanClass::Symmetric,
        SymmetryClass::NearSymmetric => ScanClass::NearSymmetric,
        SymmetryClass::Asymmetric => ScanClass::Asymmetric,
        SymmetryClass::Other => {
            return Err(Error::Precondition(
                "per-class minimization covers the symmetric, near-symmetric, \
                 and asymmetric classes"
                    .into(),
            ))
        }
    };
    run_search(g, m, h, true, &[scan], SearchMode::Restricted, options)
}

/// Minimum |h±A| over all m-subsets, for validating the restricted search
/// on small instances.
pub fn rho_pm_oracle(
    g: &GroupSpec,
    m: u64,
    h: u64,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    run_search(
        g,
        m,
        h,
        true,
        &[ScanClass::All],
        SearchMode::FullOracle,
        options,
    )?
    .ok_or_else(|| Error::Precondition("no m-subsets exist".into()))
}

/// Minimum |hA| over all m-subsets; must agree with the closed formula.
pub fn rho_oracle(g: &GroupSpec, m: u64, h: u64, options: &SearchOptions) -> Result<SearchOutcome> {
    run_search(
        g,
        m,
        h,
        false,
        &[ScanClass::All],
        SearchMode::FullOracle,
        options,
    )?
    .ok_or_else(|| Error::Precondition("no m-subsets exist".into()))
}

/// One survey record comparing the searched signed minimum against the
/// closed-form quantities.
#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub group: GroupSpec,
    pub m: u64,
    pub h: u64,
    pub rho: u64,
    /// `None` when the instance was refused for exceeding the budget.
    pub rho_pm: Option<u64>,
    pub u_pm: u64,
    pub d_m: Option<u64>,
    pub conjecture: u64,
    pub match_rho: Option<bool>,
    pub match_conjecture: Option<bool>,
    pub status: SurveyStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurveyStatus {
    Ok,
    BudgetExceeded,
}

impl SurveyRow {
    pub fn csv_header() -> &'static str {
        "group;m;h;rho;rho_pm;u_pm;d_m;conjecture;match_rho;match_conjecture"
    }

    pub fn to_csv(&self) -> String {
        let rho_pm = match self.rho_pm {
            Some(v) => v.to_string(),
            None => "!budget".into(),
        };
        let d_m = match self.d_m {
            Some(v) => v.to_string(),
            None => "inf".into(),
        };
        let flag = |f: Option<bool>| f.map(|b| b.to_string()).unwrap_or_default();
        format!(
            "{};{};{};{};{};{};{};{};{};{}",
            self.group,
            self.m,
            self.h,
            self.rho,
            rho_pm,
            self.u_pm,
            d_m,
            self.conjecture,
            flag(self.match_rho),
            flag(self.match_conjecture),
        )
    }
}

/// Runs the restricted search against the formulas for every requested
/// instance. Budget refusals mark their row instead of aborting the sweep;
/// `h` values below 2 are rejected because the conjectured value is not
/// defined there.
pub fn survey(
    groups: &[GroupSpec],
    m_range: impl Iterator<Item = u64> + Clone,
    h_range: impl Iterator<Item = u64> + Clone,
    options: &SearchOptions,
) -> Result<Vec<SurveyRow>> {
    let mut instances = Vec::new();
    for g in groups {
        for m in m_range.clone() {
            if m < 1 || m > g.order() {
                continue;
            }
            for h in h_range.clone() {
                if h < 2 {
                    return Err(Error::OutOfRange(format!(
                        "survey needs h >= 2 (got h = {h})"
                    )));
                }
                instances.push((g.clone(), m, h));
            }
        }
    }
    instances
        .par_iter()
        .map(|(g, m, h)| survey_row(g, *m, *h, options))
        .collect()
}

fn survey_row(g: &GroupSpec, m: u64, h: u64, options: &SearchOptions) -> Result<SurveyRow> {
    let rho = bounds::rho_formula(g, m, h)?;
    let u_pm = bounds::u_pm_via_divisors(g, m, h)?.value;
    let d_m = bounds::d_m(g, m)?;
    let conjecture = bounds::conjecture_value(g, m, h)?;
    match rho_pm_restricted(g, m, h, options) {
        Ok(outcome) => Ok(SurveyRow {
            group: g.clone(),
            m,
            h,
            rho,
            rho_pm: Some(outcome.value),
            u_pm,
            d_m,
            conjecture,
            match_rho: Some(outcome.value == rho),
            match_conjecture: Some(outcome.value == conjecture),
            status: SurveyStatus::Ok,
        }),
        Err(Error::BudgetExceeded { .. }) => Ok(SurveyRow {
            group: g.clone(),
            m,
            h,
            rho,
            rho_pm: None,
            u_pm,
            d_m,
            conjecture,
            match_rho: None,
            match_conjecture: None,
            status: SurveyStatus::BudgetExceeded,
        }),
        Err(e) => Err(e),
    }
}
