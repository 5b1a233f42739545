//! Subsets of a group as fixed-width bit arrays over canonical indices.

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Largest group order for which element sets (and hence folds and
/// searches) are supported.
pub const MAX_ENUMERABLE_ORDER: u64 = 1 << 20;

/// A subset of a group with bitset membership semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    group: GroupSpec,
    words: Vec<u64>,
    len: u64,
}

fn word_count(order: u64) -> usize {
    order.div_ceil(64) as usize
}

impl ElementSet {
    pub fn empty(group: &GroupSpec) -> Result<Self> {
        if group.order() > MAX_ENUMERABLE_ORDER {
            return Err(Error::OrderTooLarge {
                order: group.order(),
                limit: MAX_ENUMERABLE_ORDER,
            });
        }
        Ok(ElementSet {
            group: group.clone(),
            words: vec![0; word_count(group.order())],
            len: 0,
        })
    }

    /// The whole group as a set.
    pub fn full(group: &GroupSpec) -> Result<Self> {
        let mut s = Self::empty(group)?;
        for i in 0..group.order() {
            s.insert_index(i)?;
        }
        Ok(s)
    }

    pub fn from_indices(group: &GroupSpec, indices: &[u64]) -> Result<Self> {
        let mut s = Self::empty(group)?;
        for &i in indices {
            s.insert_index(i)?;
        }
        Ok(s)
    }

    pub fn from_elements(group: &GroupSpec, elements: &[GroupElement]) -> Result<Self> {
        let mut s = Self::empty(group)?;
        for e in elements {
            s.insert_index(group.index_of(e)?)?;
        }
        Ok(s)
    }

    /// Builds a set from coordinate vectors (each reduced modulo the factors).
    pub fn from_coords(group: &GroupSpec, coords: &[&[u64]]) -> Result<Self> {
        let mut s = Self::empty(group)?;
        for c in coords {
            let e = group.element(c)?;
            s.insert_index(group.index_of(&e)?)?;
        }
        Ok(s)
    }

    pub(crate) fn from_raw(group: &GroupSpec, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(group.order()));
        let len = words.iter().map(|w| w.count_ones() as u64).sum();
        ElementSet {
            group: group.clone(),
            words,
            len,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains_index(&self, i: u64) -> bool {
        i < self.group.order() && self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, e: &GroupElement) -> Result<bool> {
        Ok(self.contains_index(self.group.index_of(e)?))
    }

    pub fn insert_index(&mut self, i: u64) -> Result<()> {
        if i >= self.group.order() {
            return Err(Error::OutOfRange(format!(
                "element index {i} not below group order {}",
                self.group.order()
            )));
        }
        let w = &mut self.words[(i / 64) as usize];
        let bit = 1u64 << (i % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
        }
        Ok(())
    }

    pub fn remove_index(&mut self, i: u64) {
        if i >= self.group.order() {
            return;
        }
        let w = &mut self.words[(i / 64) as usize];
        let bit = 1u64 << (i % 64);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
        }
    }

    /// Ascending canonical indices of the members.
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| (wi as u64) * 64 + b))
    }

    /// Members as coordinate vectors, in canonical (sorted) order.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.indices()
            .map(|i| self.group.element_at(i).expect("member index in range"))
            .collect()
    }

    /// `{-x : x in A}`.
    pub fn negated(&self) -> Self {
        let mut out = Self::empty(&self.group).expect("same group fits");
        for i in self.indices() {
            out.insert_index(self.group.negate_index(i))
                .expect("negation stays in range");
        }
        out
    }

    /// `{x + g : x in A}`.
    pub fn translated(&self, g: &GroupElement) -> Result<Self> {
        let gi = self.group.index_of(g)?;
        let mut words = vec![0u64; self.words.len()];
        or_translated(&self.group, &mut words, &self.words, gi);
        Ok(Self::from_raw(&self.group, words))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Precondition(
                "set union requires a common group".into(),
            ));
        }
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(Self::from_raw(&self.group, words))
    }

    /// Size of the intersection with another set over the same group.
    pub(crate) fn intersection_len(&self, other: &Self) -> u64 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.group == other.group
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as u64;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Sets serialize as sorted lists of coordinate tuples.
impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len as usize))?;
        for e in self.elements() {
            seq.serialize_element(e.coords())?;
        }
        seq.end()
    }
}

/// `dst |= (src + g)` over raw bit words, where `g` is a canonical index.
///
/// Cyclic groups use a word rotation; for the general case both the source
/// position and its translate are walked as mixed-radix odometers, which
/// keeps the cost at O(n) regardless of rank.
pub(crate) fn or_translated(group: &GroupSpec, dst: &mut [u64], src: &[u64], g: u64) {
    let n = group.order();
    if g == 0 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s;
        }
        return;
    }
    if group.is_cyclic() {
        or_rotated(dst, src, n as usize, g as usize);
        return;
    }
    let r = group.rank();
    let factors = group.invariant_factors();
    let strides = group.strides();
    let mut src_coords = vec![0u64; r];
    let mut dst_coords = Vec::with_capacity(r);
    {
        let mut rest = g;
        for &s in strides {
            dst_coords.push(rest / s);
            rest %= s;
        }
    }
    let mut target = g;
    let mut i = 0u64;
    loop {
        if src[(i / 64) as usize] >> (i % 64) & 1 == 1 {
            dst[(target / 64) as usize] |= 1 << (target % 64);
        }
        i += 1;
        if i == n {
            break;
        }
        // advance both odometers by one in the last coordinate, with carries
        let mut j = r - 1;
        loop {
            src_coords[j] += 1;
            dst_coords[j] += 1;
            target += strides[j];
            if dst_coords[j] == factors[j] {
                dst_coords[j] = 0;
                target -= factors[j] * strides[j];
            }
            if src_coords[j] == factors[j] {
                src_coords[j] = 0;
                j -= 1;
            } else {
                break;
            }
        }
    }
}

/// `dst |= rotate(src, s)` within an `n`-bit window.
///
/// Bit `i` of the source lands at `(i + s) mod n`: the unwrapped part is a
/// left shift by `s`, the wrapped part a right shift by `n - s`.
fn or_rotated(dst: &mut [u64], src: &[u64], n: usize, s: usize) {
    debug_assert!(s > 0 && s < n);
    if n <= 64 {
        let mask = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
        let w = src[0];
        dst[0] |= ((w << s) | (w >> (n - s))) & mask;
        return;
    }
    or_shifted_left(dst, src, s, n);
    or_shifted_right(dst, src, n - s);
}

/// `dst |= (src << s)`, discarding bit positions at or past `n`.
fn or_shifted_left(dst: &mut [u64], src: &[u64], s: usize, n: usize) {
    let (ws, bs) = (s / 64, s % 64);
    let words = dst.len();
    let top_mask = if n.is_multiple_of(64) {
        !0u64
    } else {
        (1u64 << (n % 64)) - 1
    };
    for oi in (ws..words).rev() {
        let mut v = src[oi - ws] << bs;
        if bs > 0 && oi > ws {
            v |= src[oi - ws - 1] >> (64 - bs);
        }
        if oi == words - 1 {
            v &= top_mask;
        }
        dst[oi] |= v;
    }
}

/// `dst |= (src >> s)`.
fn or_shifted_right(dst: &mut [u64], src: &[u64], s: usize) {
    let (ws, bs) = (s / 64, s % 64);
    let words = dst.len();
    for oi in 0..words.saturating_sub(ws) {
        let mut v = src[oi + ws] >> bs;
        if bs > 0 && oi + ws + 1 < words {
            v |= src[oi + ws + 1] << (64 - bs);
        }
        dst[oi] |= v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = GroupSpec::new(&[3, 3]).unwrap();
        let a = ElementSet::from_coords(&g, &[&[0, 1], &[1, 0], &[1, 1], &[1, 2]]).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a.contains(&g.element(&[1, 2]).unwrap()).unwrap());
        assert!(!a.contains(&g.element(&[2, 2]).unwrap()).unwrap());
        assert_eq!(a.indices().collect::<Vec<_>>(), vec![1, 3, 4, 5]);

        // negations of (0,1),(1,0),(1,1),(1,2) are (0,2),(2,0),(2,2),(2,1)
        let neg = a.negated();
        assert_eq!(neg.indices().collect::<Vec<_>>(), vec![2, 6, 7, 8]);
        assert_eq!(a.intersection_len(&neg), 0);
    }

    #[test]
    fn translate_matches_elementwise() {
        for factors in [
            vec![12u64],
            vec![3, 3],
            vec![2, 4],
            vec![2, 2, 4],
            vec![64],
            vec![128],
            vec![2, 64],
        ] {
            let g = GroupSpec::new(&factors).unwrap();
            let a = ElementSet::from_indices(
                &g,
                &(0..g.order()).filter(|i| i % 3 != 1).collect::<Vec<_>>(),
            )
            .unwrap();
            for gi in 0..g.order() {
                let ge = g.element_at(gi).unwrap();
                let t = a.translated(&ge).unwrap();
                let expect: std::collections::BTreeSet<u64> =
                    a.indices().map(|i| g.add_index(i, gi)).collect();
                assert_eq!(
                    t.indices().collect::<std::collections::BTreeSet<_>>(),
                    expect
                );
            }
        }
    }

    #[test]
    fn rotation_across_words() {
        let g = GroupSpec::new(&[150]).unwrap();
        let a = ElementSet::from_indices(&g, &[0, 1, 63, 64, 100, 149]).unwrap();
        for s in [1u64, 50, 63, 64, 65, 86, 149] {
            let t = a.translated(&g.element_at(s).unwrap()).unwrap();
            let expect: std::collections::BTreeSet<u64> =
                a.indices().map(|i| (i + s) % 150).collect();
            assert_eq!(
                t.indices().collect::<std::collections::BTreeSet<_>>(),
                expect,
                "shift {s}"
            );
        }
    }

    #[test]
    fn serializes_as_coordinate_tuples() {
        let g = GroupSpec::new(&[3, 3]).unwrap();
        let a = ElementSet::from_coords(&g, &[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[0,1],[1,2]]");
    }

    #[test]
    fn refuses_oversized_groups() {
        let g = GroupSpec::new(&[2, 2097152]).unwrap();
        assert!(matches!(
            ElementSet::empty(&g),
            Err(Error::OrderTooLarge { .. })
        ));
    }
}
