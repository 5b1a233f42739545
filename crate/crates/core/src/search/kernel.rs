//! Bit-level group arithmetic behind the search and fold machinery.
//!
//! Groups of order at most 64 keep every set in a single machine word and
//! translate by an element with a few masked shifts per coordinate; larger
//! groups fall back to multi-word bitsets with odometer translation.

use crate::group::GroupSpec;
use crate::set::or_translated;

pub(crate) trait Kernel: Sync {
    type Bits: Clone + Send + Sync;

    fn order(&self) -> u64;
    fn empty_bits(&self) -> Self::Bits;
    fn zero_singleton(&self) -> Self::Bits;
    fn count(&self, b: &Self::Bits) -> u64;
    /// `dst |= (src + g)` where `g` is a canonical element index.
    fn or_translate(&self, dst: &mut Self::Bits, src: &Self::Bits, g: u64);
    fn neg(&self, i: u64) -> u64;
    fn scale(&self, t: u64, i: u64) -> u64;
}

/// One block rotation: bits with coordinate value below the threshold move
/// up, the rest wrap down.
#[derive(Clone, Copy)]
struct CoordRot {
    lo_mask: u64,
    hi_mask: u64,
    up: u32,
    down: u32,
}

/// Single-word kernel for groups of order at most 64.
pub(crate) struct WordKernel {
    group: GroupSpec,
    n: u64,
    neg_table: Vec<u64>,
    /// `rot[j][c]` rotates coordinate `j` by `c`.
    rot: Vec<Vec<CoordRot>>,
    strides: Vec<u64>,
}

impl WordKernel {
    pub(crate) fn new(group: &GroupSpec) -> Self {
        let n = group.order();
        assert!(n <= 64);
        let factors = group.invariant_factors().to_vec();
        let strides = group.strides().to_vec();
        let neg_table = (0..n).map(|i| group.negate_index(i)).collect();
        let mut rot = Vec::with_capacity(factors.len());
        for (j, &f) in factors.iter().enumerate() {
            let stride = strides[j];
            let coord_of = |p: u64| (p / stride) % f;
            let mut per_shift = Vec::with_capacity(f as usize);
            for c in 0..f {
                let mut lo_mask = 0u64;
                let mut hi_mask = 0u64;
                for p in 0..n {
                    if coord_of(p) < f - c {
                        lo_mask |= 1 << p;
                    } else {
                        hi_mask |= 1 << p;
                    }
                }
                per_shift.push(CoordRot {
                    lo_mask,
                    hi_mask,
                    up: (c * stride) as u32,
                    down: ((f - c) * stride) as u32,
                });
            }
            rot.push(per_shift);
        }
        WordKernel {
            group: group.clone(),
            n,
            neg_table,
            rot,
            strides,
        }
    }

    #[inline]
    fn translate_word(&self, mut x: u64, g: u64) -> u64 {
        let mut rest = g;
        for (j, &stride) in self.strides.iter().enumerate() {
            let c = (rest / stride) as usize;
            rest %= stride;
            if c != 0 {
                let r = self.rot[j][c];
                x = ((x & r.lo_mask) << r.up) | ((x & r.hi_mask) >> r.down);
            }
        }
        x
    }
}

impl Kernel for WordKernel {
    type Bits = u64;

    fn order(&self) -> u64 {
        self.n
    }

    fn empty_bits(&self) -> u64 {
        0
    }

    fn zero_singleton(&self) -> u64 {
        1
    }

    fn count(&self, b: &u64) -> u64 {
        b.count_ones() as u64
    }

    #[inline]
    fn or_translate(&self, dst: &mut u64, src: &u64, g: u64) {
        *dst |= self.translate_word(*src, g);
    }

    fn neg(&self, i: u64) -> u64 {
        self.neg_table[i as usize]
    }

    fn scale(&self, t: u64, i: u64) -> u64 {
        self.group.scale_index(t, i)
    }
}

/// Multi-word fallback for groups of any enumerable order.
pub(crate) struct VecKernel {
    group: GroupSpec,
    words: usize,
}

impl VecKernel {
    pub(crate) fn new(group: &GroupSpec) -> Self {
        let words = group.order().div_ceil(64) as usize;
        VecKernel {
            group: group.clone(),
            words,
        }
    }
}

impl Kernel for VecKernel {
    type Bits = Vec<u64>;

    fn order(&self) -> u64 {
        self.group.order()
    }

    fn empty_bits(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn zero_singleton(&self) -> Vec<u64> {
        let mut b = vec![0; self.words];
        b[0] = 1;
        b
    }

    fn count(&self, b: &Vec<u64>) -> u64 {
        b.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn or_translate(&self, dst: &mut Vec<u64>, src: &Vec<u64>, g: u64) {
        or_translated(&self.group, dst, src, g);
    }

    fn neg(&self, i: u64) -> u64 {
        self.group.negate_index(i)
    }

    fn scale(&self, t: u64, i: u64) -> u64 {
        self.group.scale_index(t, i)
    }
}

/// Incremental fold layers along a search path: layer `w` holds the sums
/// of weight exactly `w` over the members pushed so far.
pub(crate) struct FoldStack<'k, K: Kernel> {
    kernel: &'k K,
    h: usize,
    signed: bool,
    stack: Vec<Vec<K::Bits>>,
}

impl<'k, K: Kernel> FoldStack<'k, K> {
    pub(crate) fn new(kernel: &'k K, h: u64, signed: bool) -> Self {
        let h = h as usize;
        let mut base = vec![kernel.empty_bits(); h + 1];
        base[0] = kernel.zero_singleton();
        FoldStack {
            kernel,
            h,
            signed,
            stack: vec![base],
        }
    }

    pub(crate) fn push(&mut self, a: u64) {
        let top = self.stack.last().expect("base layer always present");
        let mut next = top.clone();
        for t in 1..=self.h {
            let plus = self.kernel.scale(t as u64, a);
            let minus = self.kernel.neg(plus);
            for w in t..=self.h {
                self.kernel.or_translate(&mut next[w], &top[w - t], plus);
                if self.signed {
                    self.kernel.or_translate(&mut next[w], &top[w - t], minus);
                }
            }
        }
        self.stack.push(next);
    }

    pub(crate) fn pop(&mut self) {
        self.stack.pop();
        debug_assert!(!self.stack.is_empty());
    }

    pub(crate) fn top_count(&self) -> u64 {
        let top = self.stack.last().expect("base layer always present");
        self.kernel.count(&top[self.h])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::set::ElementSet;
    use crate::sumset::{fold_signed_sumset, fold_sumset};

    #[test]
    fn word_kernel_translate_matches_group() {
        for factors in [
            vec![24u64],
            vec![3, 3],
            vec![2, 4],
            vec![2, 2, 12],
            vec![5, 5],
        ] {
            let g = GroupSpec::new(&factors).unwrap();
            let k = WordKernel::new(&g);
            let n = g.order();
            let src: u64 = 0x5a5a_5a5a_5a5a_5a5a & ((1u64 << n) - 1) | 1;
            for gi in 0..n {
                let mut dst = 0;
                k.or_translate(&mut dst, &src, gi);
                let mut expect = 0u64;
                for i in 0..n {
                    if src >> i & 1 == 1 {
                        expect |= 1 << g.add_index(i, gi);
                    }
                }
                assert_eq!(dst, expect, "{factors:?} shift {gi}");
            }
        }
    }

    #[test]
    fn fold_stack_matches_public_folds() {
        let g = GroupSpec::new(&[2, 12]).unwrap();
        let indices = [1u64, 5, 9, 16, 22];
        let set = ElementSet::from_indices(&g, &indices).unwrap();
        for h in 0..=3u64 {
            for signed in [false, true] {
                let k = WordKernel::new(&g);
                let mut fs = FoldStack::new(&k, h, signed);
                for &i in &indices {
                    fs.push(i);
                }
                let expect = if signed {
                    fold_signed_sumset(&set, h).unwrap().len()
                } else {
                    fold_sumset(&set, h).unwrap().len()
                };
                assert_eq!(fs.top_count(), expect, "h {h} signed {signed}");

                let vk = VecKernel::new(&g);
                let mut fs = FoldStack::new(&vk, h, signed);
                for &i in &indices {
                    fs.push(i);
                }
                assert_eq!(fs.top_count(), expect, "vec kernel h {h} signed {signed}");
            }
        }
    }
}
