//! h-fold sumsets and h-fold signed sumsets.
//!
//! For an m-subset `A = {a_1, ..., a_m}`, the h-fold sumset `hA` collects
//! all sums of h members with repetition, while the signed sumset `h±A`
//! collects all combinations `sum(lambda_i * a_i)` with
//! `sum(|lambda_i|) = h`. Each member carries a single signed coefficient,
//! so `h±A` is in general strictly smaller than `h(A ∪ -A)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::set::{or_translated, ElementSet};

/// Largest supported fold weight.
pub const MAX_FOLD_WEIGHT: u64 = 64;

fn check_fold(a: &ElementSet, h: u64) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if h > MAX_FOLD_WEIGHT {
        return Err(Error::FoldTooLarge {
            h,
            limit: MAX_FOLD_WEIGHT,
        });
    }
    Ok(())
}

/// The h-fold sumset `hA`, computed as the h-fold repeated set-sum.
///
/// `0A = {0}` and `1A = A`.
pub fn fold_sumset(a: &ElementSet, h: u64) -> Result<ElementSet> {
    check_fold(a, h)?;
    let g = a.group();
    if h == 0 {
        return ElementSet::from_indices(g, &[0]);
    }
    let mut acc = a.clone();
    for _ in 1..h {
        acc = set_sum(&acc, a);
    }
    Ok(acc)
}

/// `X + Y` for two sets over the same group.
pub(crate) fn set_sum(x: &ElementSet, y: &ElementSet) -> ElementSet {
    let g = x.group();
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut words = vec![0u64; large.words().len()];
    for i in small.indices() {
        or_translated(g, &mut words, large.words(), i);
    }
    ElementSet::from_raw(g, words)
}

/// The h-fold signed sumset `h±A`.
///
/// Dynamic programming over the member list in canonical index order:
/// layer `w` holds the sums achievable with total coefficient weight
/// exactly `w`; each next member extends every layer by `+t*a` and `-t*a`
/// for all magnitudes `t`. The result does not depend on the member order.
pub fn fold_signed_sumset(a: &ElementSet, h: u64) -> Result<ElementSet> {
    check_fold(a, h)?;
    let indices: Vec<u64> = a.indices().collect();
    signed_sumset_of_indices(a.group(), &indices, h)
}

pub(crate) fn signed_sumset_of_indices(
    g: &GroupSpec,
    indices: &[u64],
    h: u64,
) -> Result<ElementSet> {
    let words = ElementSet::empty(g)?.words().len();
    let h = h as usize;
    let mut layers: Vec<Vec<u64>> = vec![vec![0u64; words]; h + 1];
    layers[0][0] = 1; // the empty combination sums to the identity
    for &a in indices {
        let shifts: Vec<(u64, u64)> = (1..=h as u64)
            .map(|t| {
                let s = g.scale_index(t, a);
                (s, g.negate_index(s))
            })
            .collect();
        let mut next = layers.clone();
        for w in 1..=h {
            for t in 1..=w {
                let (plus, minus) = shifts[t - 1];
                or_translated(g, &mut next[w], &layers[w - t], plus);
                or_translated(g, &mut next[w], &layers[w - t], minus);
            }
        }
        layers = next;
    }
    Ok(ElementSet::from_raw(g, layers.swap_remove(h)))
}

/// The degree of symmetry `|A ∩ (-A)|`.
pub fn sdeg(a: &ElementSet) -> u64 {
    a.intersection_len(&a.negated())
}

/// Symmetry classification of a set by its degree of symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClass {
    /// `A = -A` (sdeg = m).
    Symmetric,
    /// Exactly one member lacks its inverse (sdeg = m-1, m >= 2).
    NearSymmetric,
    /// `A ∩ -A` is empty (sdeg = 0, m >= 1).
    Asymmetric,
    /// Anything in between.
    Other,
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SymmetryClass::Symmetric => "symmetric",
            SymmetryClass::NearSymmetric => "near-symmetric",
            SymmetryClass::Asymmetric => "asymmetric",
            SymmetryClass::Other => "other",
        };
        f.write_str(s)
    }
}

/// Classifies a set as symmetric, near-symmetric, asymmetric, or other.
///
/// The classification is purely by sdeg, so a singleton `{x}` is symmetric
/// when `x = -x` and asymmetric otherwise.
pub fn classify_symmetry(a: &ElementSet) -> SymmetryClass {
    let m = a.len();
    let s = sdeg(a);
    if s == m {
        SymmetryClass::Symmetric
    } else if s == 0 {
        SymmetryClass::Asymmetric
    } else if s + 1 == m {
        SymmetryClass::NearSymmetric
    } else {
        SymmetryClass::Other
    }
}

/// One symmetrization step: replaces the smallest unpaired member `b1` by
/// the negation of the next unpaired member `b2`.
///
/// Requires `m >= 3` and `1 <= sdeg(B) <= m-2`. The result has the same
/// size, degree of symmetry larger by two, and (for every fold weight) a
/// signed sumset contained in that of the input.
pub fn symmetrize_step(b: &ElementSet) -> Result<ElementSet> {
    let g = b.group();
    let m = b.len();
    let s = sdeg(b);
    if m < 3 || s < 1 || s + 2 > m {
        return Err(Error::Precondition(format!(
            "symmetrize step needs m >= 3 and 1 <= sdeg <= m-2 (got m = {m}, sdeg = {s})"
        )));
    }
    let mut unpaired = b
        .indices()
        .filter(|&i| !b.contains_index(g.negate_index(i)));
    let b1 = unpaired.next().expect("sdeg <= m-2 leaves two unpaired");
    let b2 = unpaired.next().expect("sdeg <= m-2 leaves two unpaired");
    let mut out = b.clone();
    out.remove_index(b1);
    out.insert_index(g.negate_index(b2))?;
    debug_assert_eq!(out.len(), m);
    debug_assert_eq!(sdeg(&out), s + 2);
    Ok(out)
}

/// A signed coefficient vector `(lambda_1, ..., lambda_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SignedCoefficientVector {
    lambdas: Vec<i64>,
}

impl SignedCoefficientVector {
    pub fn new(lambdas: Vec<i64>) -> Self {
        SignedCoefficientVector { lambdas }
    }

    pub fn lambdas(&self) -> &[i64] {
        &self.lambdas
    }

    /// `sum(|lambda_i|)`.
    pub fn weight(&self) -> u64 {
        self.lambdas.iter().map(|l| l.unsigned_abs()).sum()
    }

    /// All vectors of the given length and weight.
    pub fn enumerate(m: usize, h: u64) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(m);
        fn rec(
            m: usize,
            rest: u64,
            current: &mut Vec<i64>,
            out: &mut Vec<SignedCoefficientVector>,
        ) {
            if current.len() == m {
                if rest == 0 {
                    out.push(SignedCoefficientVector::new(current.clone()));
                }
                return;
            }
            for t in 0..=rest {
                current.push(t as i64);
                rec(m, rest - t, current, out);
                current.pop();
                if t > 0 {
                    current.push(-(t as i64));
                    rec(m, rest - t, current, out);
                    current.pop();
                }
            }
        }
        rec(m, h, &mut current, &mut out);
        out
    }

    /// `sum(lambda_i * a_i)` over the given members.
    pub fn apply(&self, g: &GroupSpec, members: &[GroupElement]) -> Result<GroupElement> {
        if members.len() != self.lambdas.len() {
            return Err(Error::OutOfRange(format!(
                "coefficient vector length {} does not match member count {}",
                self.lambdas.len(),
                members.len()
            )));
        }
        let mut acc = 0u64;
        for (lambda, e) in self.lambdas.iter().zip(members) {
            let idx = g.index_of(e)?;
            let mut term = g.scale_index(lambda.unsigned_abs(), idx);
            if *lambda < 0 {
                term = g.negate_index(term);
            }
            acc = g.add_index(acc, term);
        }
        g.element_at(acc)
    }
}
