//! Finite abelian groups presented by invariant factors.
//!
//! A group is given by its chain `(n_1, ..., n_r)` with `n_1 >= 2` and
//! `n_i | n_{i+1}`; elements are coordinate vectors reduced modulo the
//! factors. Every element also has a canonical mixed-radix index in
//! `[0, n)`, which is what the bitset-based set machinery works with.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A finite abelian group of type `(n_1, ..., n_r)`.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    factors: Vec<u64>,
    /// `strides[i]` is the product of the factors after position `i`, so
    /// `index = sum(coords[i] * strides[i])`.
    strides: Vec<u64>,
    order: u64,
}

impl GroupSpec {
    /// Validates an invariant-factor chain and builds the group.
    pub fn new(invariant_factors: &[u64]) -> Result<Self> {
        if invariant_factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let mut order: u64 = 1;
        for (i, &f) in invariant_factors.iter().enumerate() {
            if f < 2 {
                return Err(Error::FactorTooSmall(f));
            }
            if i + 1 < invariant_factors.len() && !invariant_factors[i + 1].is_multiple_of(f) {
                return Err(Error::ChainBroken(f, invariant_factors[i + 1]));
            }
            order = order.checked_mul(f).ok_or(Error::OrderOverflow)?;
        }
        let r = invariant_factors.len();
        let mut strides = vec![1u64; r];
        for i in (0..r.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * invariant_factors[i + 1];
        }
        Ok(GroupSpec {
            factors: invariant_factors.to_vec(),
            strides,
            order,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The exponent (largest invariant factor).
    pub fn exponent(&self) -> u64 {
        *self.factors.last().expect("factors nonempty")
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// Whether some odd prime `p` has `Z_p x Z_p` as a subgroup; by the
    /// invariant-factor chain this happens exactly when a factor below the
    /// exponent has an odd prime divisor.
    pub fn has_odd_square_subgroup(&self) -> bool {
        let r = self.rank();
        if r < 2 {
            return false;
        }
        let mut k = self.factors[r - 2];
        while k.is_multiple_of(2) {
            k /= 2;
        }
        k > 1
    }

    pub(crate) fn strides(&self) -> &[u64] {
        &self.strides
    }

    /// Builds an element from coordinates, reducing each modulo its factor.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &f)| c % f)
                .collect(),
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Coordinate-wise sum modulo the invariant factors.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &f)| (x + y) % f)
                .collect(),
        })
    }

    /// Coordinate-wise negation modulo the invariant factors.
    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_rank(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &f)| if x == 0 { 0 } else { f - x })
                .collect(),
        })
    }

    fn check_rank(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: a.coords.len(),
            });
        }
        Ok(())
    }

    /// Canonical mixed-radix index of an element.
    pub fn index_of(&self, a: &GroupElement) -> Result<u64> {
        self.check_rank(a)?;
        Ok(a.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c * s)
            .sum())
    }

    /// Element at a canonical index.
    pub fn element_at(&self, index: u64) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::OutOfRange(format!(
                "index {index} not below group order {}",
                self.order
            )));
        }
        let mut coords = Vec::with_capacity(self.rank());
        let mut rest = index;
        for &s in &self.strides {
            coords.push(rest / s);
            rest %= s;
        }
        Ok(GroupElement { coords })
    }

    pub(crate) fn add_index(&self, i: u64, j: u64) -> u64 {
        let mut out = 0;
        let mut ri = i;
        let mut rj = j;
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let ci = ri / s;
            let cj = rj / s;
            ri %= s;
            rj %= s;
            out += ((ci + cj) % f) * s;
        }
        out
    }

    pub(crate) fn negate_index(&self, i: u64) -> u64 {
        let mut out = 0;
        let mut rest = i;
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let c = rest / s;
            rest %= s;
            if c != 0 {
                out += (f - c) * s;
            }
        }
        out
    }

    /// Index of `t * a` for a canonical index `a`.
    pub(crate) fn scale_index(&self, t: u64, a: u64) -> u64 {
        let mut out = 0;
        let mut rest = a;
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let c = rest / s;
            rest %= s;
            out += (c * (t % f)) % f * s;
        }
        out
    }

    /// Iterates all elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i).expect("index in range"))
    }

    /// The elements of one subgroup of order `d`, chosen deterministically.
    ///
    /// `d` is split across the invariant factors by greedy gcd assignment
    /// from the largest factor down; the subgroup is the product of the
    /// cyclic pieces so obtained.
    pub fn subgroup_of_order(&self, d: u64) -> Result<ElementSet> {
        if d == 0 || !self.order.is_multiple_of(d) {
            return Err(Error::NotADivisor {
                value: d,
                modulus: self.order,
            });
        }
        let r = self.rank();
        let mut parts = vec![1u64; r];
        let mut rest = d;
        for i in (0..r).rev() {
            let g = gcd(rest, self.factors[i]);
            parts[i] = g;
            rest /= g;
        }
        debug_assert_eq!(rest, 1, "greedy split of a divisor always succeeds");
        // Product of the cyclic subgroups of order parts[i] (multiples of
        // factors[i] / parts[i] in each coordinate).
        let mut indices = vec![0u64];
        for (i, &part) in parts.iter().enumerate() {
            let step = self.factors[i] / part;
            let mut next = Vec::with_capacity(indices.len() * part as usize);
            for k in 0..part {
                let offset = k * step * self.strides[i];
                next.extend(indices.iter().map(|&b| b + offset));
            }
            indices = next;
        }
        ElementSet::from_indices(self, &indices)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses comma-separated invariant factors, e.g. `"3,3"` or `"12"`.
    fn from_str(s: &str) -> Result<Self> {
        let factors: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::ParseGroup(s.to_string()))?;
        GroupSpec::new(&factors)
    }
}

/// An element as a coordinate vector; `coords[i]` lies in `[0, n_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("divisors of {n}: need n >= 1")));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All abelian groups of the given order, as invariant-factor chains in
/// lexicographic order. Order 1 has no representation here (factors must
/// be at least 2), so the result is empty for `n = 1`.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    let mut chains = Vec::new();
    let mut prefix = Vec::new();
    collect_chains(n, 1, &mut prefix, &mut chains);
    chains
        .into_iter()
        .map(|c| GroupSpec::new(&c).expect("generated chain is valid"))
        .collect()
}

fn collect_chains(rest: u64, prev: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 1 {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        return;
    }
    for d in divisors(rest).expect("rest >= 1") {
        if d >= 2 && d >= prev && d % prev == 0 {
            prefix.push(d);
            collect_chains(rest / d, d, prefix, out);
            prefix.pop();
        }
    }
}

/// All abelian groups of order 2 through `max_order`, ordered by
/// (order, chain).
pub fn abelian_groups_up_to(max_order: u64) -> Vec<GroupSpec> {
    (2..=max_order).flat_map(abelian_groups_of_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_examples() {
        let g = GroupSpec::new(&[3, 3]).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.exponent(), 3);

        let c = GroupSpec::new(&[12]).unwrap();
        assert_eq!(c.order(), 12);
        assert!(c.is_cyclic());

        assert_eq!(GroupSpec::new(&[3, 4]), Err(Error::ChainBroken(3, 4)));
        assert_eq!(GroupSpec::new(&[]), Err(Error::EmptyFactors));
        assert_eq!(GroupSpec::new(&[1, 2]), Err(Error::FactorTooSmall(1)));
        assert_eq!(
            GroupSpec::new(&[u64::MAX, u64::MAX]),
            Err(Error::OrderOverflow)
        );
    }

    #[test]
    fn add_and_negate() {
        let g = GroupSpec::new(&[3, 3]).unwrap();
        let a = g.element(&[1, 2]).unwrap();
        let b = g.element(&[2, 2]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap(), g.element(&[0, 1]).unwrap());
        assert_eq!(g.negate(&a).unwrap(), g.element(&[2, 1]).unwrap());

        let z12 = GroupSpec::new(&[12]).unwrap();
        let s = z12
            .add(&z12.element(&[7]).unwrap(), &z12.element(&[8]).unwrap())
            .unwrap();
        assert_eq!(s, z12.element(&[3]).unwrap());

        let z9 = GroupSpec::new(&[9]).unwrap();
        assert_eq!(
            z9.negate(&z9.element(&[1]).unwrap()).unwrap(),
            z9.element(&[8]).unwrap()
        );
        assert_eq!(z9.negate(&z9.zero()).unwrap(), z9.zero());

        // a + 0 = a and a + (-a) = 0 for every element
        for a in g.elements() {
            assert_eq!(g.add(&a, &g.zero()).unwrap(), a);
            let n = g.negate(&a).unwrap();
            assert_eq!(g.add(&a, &n).unwrap(), g.zero());
        }

        let wrong = GroupElement { coords: vec![1] };
        assert!(matches!(
            g.add(&wrong, &g.zero()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn index_roundtrip() {
        let g = GroupSpec::new(&[2, 4, 8]).unwrap();
        assert_eq!(g.order(), 64);
        let mut seen = std::collections::HashSet::new();
        for (i, e) in g.elements().enumerate() {
            assert_eq!(g.index_of(&e).unwrap(), i as u64);
            seen.insert(e);
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9).unwrap(), vec![1, 3, 9]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert!(divisors(0).is_err());
        // membership by direct division
        for d in divisors(360).unwrap() {
            assert_eq!(360 % d, 0);
        }
    }

    #[test]
    fn subgroup_examples() {
        let z12 = GroupSpec::new(&[12]).unwrap();
        let h = z12.subgroup_of_order(6).unwrap();
        assert_eq!(h.indices().collect::<Vec<_>>(), vec![0, 2, 4, 6, 8, 10]);

        let g = GroupSpec::new(&[3, 3]).unwrap();
        let h3 = g.subgroup_of_order(3).unwrap();
        assert_eq!(h3.indices().collect::<Vec<_>>(), vec![0, 1, 2]);

        assert!(matches!(
            z12.subgroup_of_order(5),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn subgroup_closure() {
        for g in [
            GroupSpec::new(&[12]).unwrap(),
            GroupSpec::new(&[2, 4]).unwrap(),
            GroupSpec::new(&[6, 6]).unwrap(),
        ] {
            for d in divisors(g.order()).unwrap() {
                let h = g.subgroup_of_order(d).unwrap();
                assert_eq!(h.len(), d);
                let idx: std::collections::HashSet<u64> = h.indices().collect();
                for &a in &idx {
                    assert!(idx.contains(&g.negate_index(a)));
                    for &b in &idx {
                        assert!(idx.contains(&g.add_index(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn group_enumeration() {
        let of8: Vec<String> = abelian_groups_of_order(8)
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(of8, vec!["2,2,2", "2,4", "8"]);
        assert_eq!(abelian_groups_of_order(1).len(), 0);
        assert_eq!(abelian_groups_of_order(7).len(), 1);
        // counts by order for 2..=16: number of partitions of prime exponents
        let counts: Vec<usize> = (2..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
    }

    #[test]
    fn parse_group_strings() {
        assert_eq!("3,3".parse::<GroupSpec>().unwrap().order(), 9);
        assert_eq!("12".parse::<GroupSpec>().unwrap().order(), 12);
        assert!("3,4".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("a,b".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn odd_square_subgroup_detection() {
        for (factors, expect) in [
            (vec![9], false),
            (vec![2, 2], false),
            (vec![2, 4], false),
            (vec![4, 4], false),
            (vec![2, 6], false),
            (vec![3, 3], true),
            (vec![3, 9], true),
            (vec![6, 6], true),
            (vec![2, 2, 12], false),
            (vec![2, 6, 12], true),
        ] {
            assert_eq!(
                GroupSpec::new(&factors).unwrap().has_odd_square_subgroup(),
                expect,
                "{factors:?}"
            );
        }
    }
}
