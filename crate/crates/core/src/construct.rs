//! Explicit witness sets with controlled sumset growth.
//!
//! Three families: symmetric unions of cosets in cyclic groups (one family
//! per divisor `d`, meeting the `f_d` bound), products of cyclic witnesses
//! for groups of higher rank, and asymmetric half-subgroup sets whose
//! 2-fold signed sumset avoids zero.

use serde::Serialize;

use crate::bounds::u_min;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::set::ElementSet;
use crate::sumset::{fold_sumset, sdeg};

/// The 2-adic split parameters behind a cyclic witness.
///
/// `n = 2^a * n0`, `d = 2^b * d0`, `ceil(m/d) = 2^c * m0` with `n0`, `d0`,
/// `m0` odd. Case 1 applies when `b + c <= a` and uses a subgroup of order
/// `2^c * d`; case 2 uses order `2^a * d0` and the odd index `e = n0 / d0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicWitnessParams {
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub n0: u64,
    pub d0: u64,
    pub m0: u64,
    /// Set in case 2 only.
    pub e: Option<u64>,
    pub h_order: u64,
    pub case: u8,
}

/// A cyclic witness set with its construction parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicWitness {
    pub set: ElementSet,
    pub params: CyclicWitnessParams,
}

fn split_2adic(x: u64) -> (u32, u64) {
    let v = x.trailing_zeros();
    (v, x >> v)
}

/// Builds the symmetric witness `R ⊆ Z_n` for a divisor `d` of `n`:
/// `R = -R`, `|R| = d * ceil(m/d) >= m`, and `|hR| <= f_d(m,h)` for every
/// `h >= 1`.
pub fn cyclic_symmetric_witness(n: u64, m: u64, d: u64) -> Result<CyclicWitness> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor {
            value: d,
            modulus: n,
        });
    }
    if m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "witness needs 1 <= m <= n (got m = {m}, n = {n})"
        )));
    }
    let group = GroupSpec::new(&[n])?;
    let (a, n0) = split_2adic(n);
    let (b, d0) = split_2adic(d);
    let (c, m0) = split_2adic(m.div_ceil(d));

    let (case, h_order, e) = if b + c <= a {
        (1u8, (1u64 << c) * d, None)
    } else {
        (2u8, (1u64 << a) * d0, Some(n0 / d0))
    };
    let step = n / h_order;
    let mut set = ElementSet::empty(&group)?;
    let signed_n = n as i64;
    let mut add_coset = |offset: i64| {
        let base = offset.rem_euclid(signed_n) as u64;
        for k in 0..h_order {
            set.insert_index((base + k * step) % n)
                .expect("coset member in range");
        }
    };
    match case {
        1 => {
            let half = (m0 / 2) as i64;
            for i in -half..=half {
                add_coset(i);
            }
        }
        _ => {
            let e = e.unwrap();
            debug_assert_eq!(e % 2, 1);
            let k = (1i64 << (b + c - a - 1)) * m0 as i64;
            let center = (e / 2) as i64;
            for i in (1 - k)..=k {
                add_coset(center + i);
            }
        }
    }
    // the derivation promises symmetry and exact size; verify rather than trust
    assert_eq!(set.len(), d * m.div_ceil(d), "witness size d*ceil(m/d)");
    assert_eq!(set, set.negated(), "witness must be symmetric");
    Ok(CyclicWitness {
        set,
        params: CyclicWitnessParams {
            n,
            d,
            m,
            a,
            b,
            c,
            n0,
            d0,
            m0,
            e,
            h_order,
            case,
        },
    })
}

/// Product of per-factor cyclic witnesses: for sizes `(m_1, ..., m_r)` the
/// result is a symmetric subset of `G` of size at least `prod m_i` whose
/// h-fold signed sumset has at most `prod u(n_i, m_i, h)` elements.
pub fn product_witness(g: &GroupSpec, sizes: &[u64], h: u64) -> Result<ElementSet> {
    let factors = g.invariant_factors();
    if sizes.len() != factors.len() {
        return Err(Error::RankMismatch {
            expected: factors.len(),
            got: sizes.len(),
        });
    }
    let mut per_factor: Vec<Vec<u64>> = Vec::with_capacity(factors.len());
    for (&ni, &mi) in factors.iter().zip(sizes) {
        if mi < 1 || mi > ni {
            return Err(Error::OutOfRange(format!(
                "product witness needs 1 <= m_i <= n_i (got m_i = {mi}, n_i = {ni})"
            )));
        }
        let best = u_min(ni, mi, h)?;
        let witness = cyclic_symmetric_witness(ni, mi, best.divisor)?;
        let reached = fold_sumset(&witness.set, h)?.len();
        debug_assert_eq!(reached, best.value, "cyclic witness attains u exactly");
        per_factor.push(witness.set.indices().collect());
    }
    let strides = g.strides().to_vec();
    let mut indices = vec![0u64];
    for (i, coords) in per_factor.iter().enumerate() {
        let mut next = Vec::with_capacity(indices.len() * coords.len());
        for &c in coords {
            next.extend(indices.iter().map(|&b| b + c * strides[i]));
        }
        indices = next;
    }
    ElementSet::from_indices(g, &indices)
}

/// Picks `m` elements of a subgroup of odd order `d >= 2m + 1`, one from
/// each inverse pair (lower canonical index first), giving an asymmetric
/// set whose 2-fold signed sumset stays inside the subgroup and misses 0.
pub fn asymmetric_half_witness(g: &GroupSpec, m: u64, d: u64) -> Result<ElementSet> {
    if d.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "asymmetric half witness needs odd d (got d = {d})"
        )));
    }
    if !g.order().is_multiple_of(d) {
        return Err(Error::NotADivisor {
            value: d,
            modulus: g.order(),
        });
    }
    if m < 1 || d < 2 * m + 1 {
        return Err(Error::Precondition(format!(
            "asymmetric half witness needs d >= 2m + 1 (got d = {d}, m = {m})"
        )));
    }
    let subgroup = g.subgroup_of_order(d)?;
    let mut taken = ElementSet::empty(g)?;
    let mut excluded = ElementSet::empty(g)?;
    for i in subgroup.indices() {
        if taken.len() == m {
            break;
        }
        if i == 0 || excluded.contains_index(i) {
            continue;
        }
        taken.insert_index(i)?;
        excluded.insert_index(g.negate_index(i))?;
    }
    debug_assert_eq!(taken.len(), m, "an odd subgroup has (d-1)/2 >= m pairs");
    debug_assert_eq!(sdeg(&taken), 0);
    Ok(taken)
}

/// Trims a witness down to exactly `target` members: repeatedly drop the
/// largest index, taking its inverse along whenever a whole pair can go.
///
/// Trimming can only shrink sumsets, so the bounds carried by the full
/// witness still hold.
pub fn trim_to_size(set: &ElementSet, target: u64) -> Result<ElementSet> {
    if set.len() < target {
        return Err(Error::OutOfRange(format!(
            "cannot trim a set of {} members up to {target}",
            set.len()
        )));
    }
    let g = set.group().clone();
    let mut out = set.clone();
    while out.len() > target {
        let largest = out.indices().last().expect("set still nonempty");
        let partner = g.negate_index(largest);
        out.remove_index(largest);
        if out.len() > target && partner != largest && out.contains_index(partner) {
            out.remove_index(partner);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{f_d, u};
    use crate::sumset::{classify_symmetry, fold_signed_sumset, SymmetryClass};

    #[test]
    fn cyclic_witness_examples() {
        // case 1
        let w = cyclic_symmetric_witness(12, 5, 6).unwrap();
        assert_eq!(w.set.indices().collect::<Vec<_>>(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!((w.params.case, w.params.h_order), (1, 6));
        assert_eq!(fold_sumset(&w.set, 2).unwrap().len(), 6);

        // case 2
        let w = cyclic_symmetric_witness(6, 3, 2).unwrap();
        assert_eq!(w.set.indices().collect::<Vec<_>>(), vec![1, 2, 4, 5]);
        assert_eq!((w.params.case, w.params.h_order), (2, 2));
        assert_eq!(w.params.e, Some(3));
        assert_eq!(fold_sumset(&w.set, 2).unwrap().len(), 6);
        assert_eq!(f_d(3, 2, 2).unwrap(), 6);

        // d = 1 on a prime gives a centered interval
        let w = cyclic_symmetric_witness(13, 5, 1).unwrap();
        assert_eq!(w.set.indices().collect::<Vec<_>>(), vec![0, 1, 2, 11, 12]);
        for h in 1..=2 {
            assert_eq!(fold_sumset(&w.set, h).unwrap().len(), (h * (5 - 1) + 1));
        }

        assert!(cyclic_symmetric_witness(12, 5, 5).is_err());
        assert!(cyclic_symmetric_witness(12, 13, 6).is_err());
    }

    #[test]
    fn cyclic_witness_sweep() {
        for n in 2..=48u64 {
            for d in crate::group::divisors(n).unwrap() {
                for m in 1..=n {
                    let w = cyclic_symmetric_witness(n, m, d).unwrap();
                    assert_eq!(w.set.len(), d * m.div_ceil(d));
                    assert!(w.set.len() >= m);
                    for h in 1..=4 {
                        let reached = fold_sumset(&w.set, h).unwrap().len();
                        assert!(
                            reached <= f_d(m, h, d).unwrap(),
                            "n={n} d={d} m={m} h={h}: {reached}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn best_cyclic_witness_attains_u() {
        for n in 2..=36u64 {
            for m in 1..=n {
                for h in 1..=3 {
                    let best = crate::group::divisors(n)
                        .unwrap()
                        .into_iter()
                        .map(|d| {
                            let w = cyclic_symmetric_witness(n, m, d).unwrap();
                            fold_sumset(&w.set, h).unwrap().len()
                        })
                        .min()
                        .unwrap();
                    assert_eq!(best, u(n, m, h).unwrap(), "n={n} m={m} h={h}");
                }
            }
        }
    }

    #[test]
    fn product_witness_examples() {
        let g33 = GroupSpec::new(&[3, 3]).unwrap();
        let p = product_witness(&g33, &[2, 2], 2).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(classify_symmetry(&p), SymmetryClass::Symmetric);
        assert!(fold_signed_sumset(&p, 2).unwrap().len() <= 9);

        let g55 = GroupSpec::new(&[5, 5]).unwrap();
        let p = product_witness(&g55, &[2, 5], 2).unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(classify_symmetry(&p), SymmetryClass::Symmetric);
        assert_eq!(fold_signed_sumset(&p, 2).unwrap().len(), 15);

        // rank 1 degenerates to the cyclic witness at the argmin divisor
        let z12 = GroupSpec::new(&[12]).unwrap();
        let p = product_witness(&z12, &[5], 2).unwrap();
        let direct = cyclic_symmetric_witness(12, 5, u_min(12, 5, 2).unwrap().divisor).unwrap();
        assert_eq!(
            p.indices().collect::<Vec<_>>(),
            direct.set.indices().collect::<Vec<_>>()
        );

        assert!(product_witness(&g33, &[2], 2).is_err());
        assert!(product_witness(&g33, &[2, 4], 2).is_err());
    }

    #[test]
    fn product_witness_signed_equals_plain() {
        let g = GroupSpec::new(&[4, 8]).unwrap();
        let p = product_witness(&g, &[3, 5], 2).unwrap();
        assert_eq!(classify_symmetry(&p), SymmetryClass::Symmetric);
        assert_eq!(
            fold_signed_sumset(&p, 2).unwrap(),
            fold_sumset(&p, 2).unwrap()
        );
    }

    #[test]
    fn asymmetric_half_examples() {
        let g33 = GroupSpec::new(&[3, 3]).unwrap();
        let a = asymmetric_half_witness(&g33, 4, 9).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(sdeg(&a), 0);
        let s = fold_signed_sumset(&a, 2).unwrap();
        assert_eq!(s.len(), 8);
        assert!(!s.contains_index(0));

        let z15 = GroupSpec::new(&[15]).unwrap();
        let a = asymmetric_half_witness(&z15, 7, 15).unwrap();
        let s = fold_signed_sumset(&a, 2).unwrap();
        assert!(s.len() <= 14);
        assert!(!s.contains_index(0));

        let z8 = GroupSpec::new(&[8]).unwrap();
        assert!(asymmetric_half_witness(&z8, 3, 1).is_err()); // 1 < 2m+1
        assert!(asymmetric_half_witness(&z8, 3, 2).is_err()); // even
        assert!(asymmetric_half_witness(&z8, 3, 7).is_err()); // not a divisor
    }

    #[test]
    fn trim_examples() {
        let g = GroupSpec::new(&[12]).unwrap();
        let r = ElementSet::from_indices(&g, &[0, 2, 4, 6, 8, 10]).unwrap();
        let t4 = trim_to_size(&r, 4).unwrap();
        // drops the pair {10, 2}, keeping the rest symmetric
        assert_eq!(t4.indices().collect::<Vec<_>>(), vec![0, 4, 6, 8]);
        assert_eq!(t4, t4.negated());
        let t5 = trim_to_size(&r, 5).unwrap();
        assert_eq!(t5.indices().collect::<Vec<_>>(), vec![0, 2, 4, 6, 8]);
        assert!(trim_to_size(&r, 7).is_err());
    }
}
