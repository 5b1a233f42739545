//! Sumsets and signed sumsets in finite abelian groups.
//!
//! The crate computes h-fold sumsets `hA` and h-fold signed sumsets `h±A`
//! (each member takes one signed coefficient, total weight h), evaluates
//! the closed-form divisor bounds that govern their minimum sizes over all
//! m-subsets, builds explicit witness sets meeting those bounds, and finds
//! the exact minima `rho(G,m,h)` and `rho±(G,m,h)` by exhaustive search.
//! The signed search enumerates only symmetric, near-symmetric, and
//! asymmetric sets, which is enough to realize the minimum.
//!
//! ```
//! use sigma_sumset_core::{rho_formula, rho_pm_restricted, GroupSpec, SearchOptions};
//!
//! let g: GroupSpec = "3,3".parse()?;
//! assert_eq!(rho_formula(&g, 4, 2)?, 7);
//! let out = rho_pm_restricted(&g, 4, 2, &SearchOptions::default())?;
//! assert_eq!(out.value, 8); // the signed minimum exceeds the plain one here
//! # Ok::<(), sigma_sumset_core::Error>(())
//! ```

pub mod bounds;
pub mod checks;
pub mod construct;
mod error;
pub mod group;
pub mod search;
mod set;
pub mod sumset;

pub use bounds::{
    bound_report, conjecture_value, constrained_divisors, d_m, f_d, rho_formula, u, u_min,
    u_pm_via_divisors, u_pm_via_factorization, BoundReport, DivisorMin, FactorizationMin,
};
pub use construct::{
    asymmetric_half_witness, cyclic_symmetric_witness, product_witness, trim_to_size,
    CyclicWitness, CyclicWitnessParams,
};
pub use error::{Error, Result};
pub use group::{abelian_groups_of_order, abelian_groups_up_to, divisors, GroupElement, GroupSpec};
pub use search::{
    min_signed_over_class, rho_oracle, rho_pm_oracle, rho_pm_restricted, survey, SearchMode,
    SearchOptions, SearchOutcome, SurveyRow,
};
pub use set::{ElementSet, MAX_ENUMERABLE_ORDER};
pub use sumset::{
    classify_symmetry, fold_signed_sumset, fold_sumset, sdeg, symmetrize_step,
    SignedCoefficientVector, SymmetryClass, MAX_FOLD_WEIGHT,
};
