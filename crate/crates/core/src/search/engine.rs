//! Exhaustive minimization of |hA| or |h±A| over constrained m-subsets.
//!
//! Subsets are enumerated as sorted index vectors in lexicographic order
//! by a DFS that decides one element index at a time. Class membership
//! (symmetric / near-symmetric / asymmetric) is tracked through pairing
//! counters, and the fold layers grow incrementally along the DFS path so
//! a leaf only pays for a popcount.
//!
//! The space splits into chunks by the smallest chosen index. Chunks are
//! lexicographically contiguous and scanned independently, so results
//! merge deterministically for any worker count: a chunk stops at its
//! first candidate attaining the proven lower bound (nothing later in the
//! chunk can beat it), and chunks beyond the first attaining chunk are
//! dropped from both the minimum and the explored count.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::kernel::{FoldStack, Kernel};

/// Pairing constraints defining which subsets a scan may emit.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ClassConstraint {
    /// Bounds on the number of members whose inverse is absent.
    pub min_unpaired: u64,
    pub max_unpaired: u64,
    /// Whether self-inverse members are allowed.
    pub allow_self: bool,
}

impl ClassConstraint {
    pub(crate) fn symmetric() -> Self {
        ClassConstraint {
            min_unpaired: 0,
            max_unpaired: 0,
            allow_self: true,
        }
    }

    pub(crate) fn near_symmetric() -> Self {
        ClassConstraint {
            min_unpaired: 1,
            max_unpaired: 1,
            allow_self: true,
        }
    }

    pub(crate) fn asymmetric(m: u64) -> Self {
        ClassConstraint {
            min_unpaired: m,
            max_unpaired: m,
            allow_self: false,
        }
    }

    pub(crate) fn unconstrained(m: u64) -> Self {
        ClassConstraint {
            min_unpaired: 0,
            max_unpaired: m,
            allow_self: true,
        }
    }
}

/// Deterministic result of scanning one class of subsets.
#[derive(Clone, Debug, Default)]
pub(crate) struct ScanResult {
    pub evaluated: u64,
    pub best: Option<(u64, Vec<u64>)>,
}

#[derive(Clone, Default)]
struct ChunkResult {
    evaluated: u64,
    attained: bool,
    best: Option<(u64, Vec<u64>)>,
}

/// Scans all m-subsets satisfying the constraint, returning the minimum
/// fold size with its lexicographically first witness among candidates of
/// that value, and the number of evaluated subsets.
///
/// `lower_bound` must be a proven lower bound for the fold size (pass 0 to
/// disable early termination).
pub(crate) fn scan_class<K: Kernel>(
    kernel: &K,
    m: u64,
    h: u64,
    signed: bool,
    constraint: ClassConstraint,
    lower_bound: u64,
) -> ScanResult {
    let n = kernel.order();
    if m == 0 || m > n {
        return ScanResult::default();
    }
    // chunk v holds the subsets whose smallest element is v
    let first_elements: Vec<u64> = (0..=(n - m)).collect();
    let stop_at = AtomicU64::new(u64::MAX);
    let chunks: Vec<ChunkResult> = first_elements
        .par_iter()
        .map(|&v| {
            if stop_at.load(Ordering::Relaxed) < v {
                // an earlier chunk already attained the bound; this one
                // cannot contribute (candidates are lexicographically larger)
                return ChunkResult::default();
            }
            let r = scan_chunk(kernel, m, h, signed, constraint, lower_bound, v);
            if r.attained {
                stop_at.fetch_min(v, Ordering::Relaxed);
            }
            r
        })
        .collect();

    // Deterministic reduction: everything past the first attaining chunk is
    // discarded, whether or not a racing worker happened to scan it.
    let cutoff = chunks
        .iter()
        .position(|c| c.attained)
        .unwrap_or(chunks.len().saturating_sub(1));
    let mut out = ScanResult::default();
    for c in &chunks[..=cutoff.min(chunks.len().saturating_sub(1))] {
        out.evaluated += c.evaluated;
        if let Some((v, w)) = &c.best {
            let better = match &out.best {
                None => true,
                Some((bv, bw)) => (v, w) < (bv, bw),
            };
            if better {
                out.best = Some((*v, w.clone()));
            }
        }
    }
    out
}

fn scan_chunk<K: Kernel>(
    kernel: &K,
    m: u64,
    h: u64,
    signed: bool,
    constraint: ClassConstraint,
    lower_bound: u64,
    first: u64,
) -> ChunkResult {
    let mut scan = ChunkScan {
        kernel,
        n: kernel.order(),
        m,
        constraint,
        lower_bound,
        dp: FoldStack::new(kernel, h, signed),
        chosen: Vec::with_capacity(m as usize),
        chosen_words: vec![0u64; kernel.order().div_ceil(64) as usize],
        unpaired: 0,
        pending: 0,
        result: ChunkResult::default(),
    };
    if scan.try_include(first) {
        scan.dp.push(first);
        scan.dfs(first + 1);
        scan.dp.pop();
        scan.undo_include(first);
    }
    scan.result
}

struct ChunkScan<'k, K: Kernel> {
    kernel: &'k K,
    n: u64,
    m: u64,
    constraint: ClassConstraint,
    lower_bound: u64,
    dp: FoldStack<'k, K>,
    chosen: Vec<u64>,
    chosen_words: Vec<u64>,
    /// Members whose inverse is already decided absent.
    unpaired: u64,
    /// Members whose inverse is a later, still undecided index.
    pending: u64,
    result: ChunkResult,
}

impl<K: Kernel> ChunkScan<'_, K> {
    fn contains(&self, i: u64) -> bool {
        self.chosen_words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    fn set_chosen(&mut self, i: u64, on: bool) {
        let w = &mut self.chosen_words[(i / 64) as usize];
        if on {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    /// Applies the bookkeeping for including `i`; rejects (and undoes)
    /// choices that can no longer satisfy the constraint.
    fn try_include(&mut self, i: u64) -> bool {
        let np = self.kernel.neg(i);
        if np == i && !self.constraint.allow_self {
            return false;
        }
        if np < i {
            if self.contains(np) {
                self.pending -= 1;
            } else {
                self.unpaired += 1;
            }
        } else if np > i {
            self.pending += 1;
        }
        self.chosen.push(i);
        self.set_chosen(i, true);
        let paired = self.chosen.len() as u64 - self.unpaired - self.pending;
        if self.unpaired > self.constraint.max_unpaired
            || paired > self.m - self.constraint.min_unpaired
        {
            self.undo_include(i);
            return false;
        }
        true
    }

    fn undo_include(&mut self, i: u64) {
        self.set_chosen(i, false);
        self.chosen.pop();
        let np = self.kernel.neg(i);
        if np < i {
            if self.contains(np) {
                self.pending += 1;
            } else {
                self.unpaired -= 1;
            }
        } else if np > i {
            self.pending -= 1;
        }
    }

    fn finalize(&mut self) {
        let total = self.unpaired + self.pending;
        if total < self.constraint.min_unpaired || total > self.constraint.max_unpaired {
            return;
        }
        self.result.evaluated += 1;
        let value = self.dp.top_count();
        let better = match &self.result.best {
            None => true,
            Some((bv, _)) => value < *bv,
        };
        if better {
            self.result.best = Some((value, self.chosen.clone()));
        }
        if value <= self.lower_bound {
            self.result.attained = true;
        }
    }

    fn dfs(&mut self, mut pos: u64) {
        if self.result.attained {
            return;
        }
        if self.chosen.len() as u64 == self.m {
            self.finalize();
            return;
        }
        // positions excluded in this frame whose pending partner resolved
        let mut resolved_here: u32 = 0;
        loop {
            let slots = self.m - self.chosen.len() as u64;
            if pos >= self.n || self.n - pos < slots {
                break;
            }
            // unpaired floor: pendings that cannot all complete
            if self.unpaired + self.pending.saturating_sub(slots) > self.constraint.max_unpaired {
                break;
            }
            // unpaired ceiling: even making every remaining choice unpaired
            // cannot reach the minimum
            if self.unpaired + self.pending + slots < self.constraint.min_unpaired {
                break;
            }
            if self.try_include(pos) {
                self.dp.push(pos);
                self.dfs(pos + 1);
                self.dp.pop();
                self.undo_include(pos);
                if self.result.attained {
                    break;
                }
            }
            // exclude pos: a chosen partner waiting on it becomes unpaired
            let np = self.kernel.neg(pos);
            if np < pos && self.contains(np) {
                self.pending -= 1;
                self.unpaired += 1;
                resolved_here += 1;
                if self.unpaired > self.constraint.max_unpaired {
                    break;
                }
            }
            pos += 1;
        }
        for _ in 0..resolved_here {
            self.pending += 1;
            self.unpaired -= 1;
        }
    }
}

/// Exact class sizes from the pair structure, saturating at `u64::MAX`.
///
/// With `q` self-inverse elements and `p` inverse pairs: symmetric m-sets
/// pick `s` self-inverses and `k` whole pairs with `s + 2k = m`;
/// near-symmetric sets add one oriented element from an untouched pair;
/// asymmetric sets orient `m` distinct pairs.
pub(crate) fn class_counts(q: u64, p: u64, m: u64) -> ClassCounts {
    let sym = count_symmetric(q, p, m);
    let nsym = if m >= 2 && p >= 1 {
        mul_sat(2 * p, count_symmetric(q, p - 1, m - 1))
    } else {
        0
    };
    let asym = if m <= p {
        mul_sat(binomial(p, m), pow2_sat(m))
    } else {
        0
    };
    ClassCounts { sym, nsym, asym }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ClassCounts {
    pub sym: u64,
    pub nsym: u64,
    pub asym: u64,
}

fn count_symmetric(q: u64, p: u64, m: u64) -> u64 {
    let mut total = 0u64;
    let mut k = 0;
    while 2 * k <= m {
        let s = m - 2 * k;
        if s <= q && k <= p {
            total = total.saturating_add(mul_sat(binomial(q, s), binomial(p, k)));
        }
        k += 1;
    }
    total
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn pow2_sat(m: u64) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        1u64 << m
    }
}

fn mul_sat(a: u64, b: u64) -> u64 {
    a.saturating_mul(b)
}

/// Pair structure of a group: self-inverse element count and pair count.
pub(crate) fn pair_structure(kernel: &impl Kernel) -> (u64, u64) {
    let n = kernel.order();
    let q = (0..n).filter(|&i| kernel.neg(i) == i).count() as u64;
    (q, (n - q) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(200, 100), u64::MAX); // saturates
    }

    #[test]
    fn class_counts_match_enumeration() {
        use crate::group::GroupSpec;
        use crate::sumset::{classify_symmetry, SymmetryClass};
        for factors in [vec![9u64], vec![3, 3], vec![2, 4], vec![12]] {
            let g = GroupSpec::new(&factors).unwrap();
            let k = super::super::kernel::WordKernel::new(&g);
            let (q, p) = pair_structure(&k);
            let n = g.order();
            for m in 1..=n.min(6) {
                let counts = class_counts(q, p, m);
                let mut seen = ClassCounts {
                    sym: 0,
                    nsym: 0,
                    asym: 0,
                };
                // brute force over all m-subsets
                for mask in 0u64..(1 << n) {
                    if mask.count_ones() as u64 != m {
                        continue;
                    }
                    let idx: Vec<u64> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    let set = crate::set::ElementSet::from_indices(&g, &idx).unwrap();
                    match classify_symmetry(&set) {
                        SymmetryClass::Symmetric => seen.sym += 1,
                        SymmetryClass::NearSymmetric => seen.nsym += 1,
                        SymmetryClass::Asymmetric => seen.asym += 1,
                        SymmetryClass::Other => {}
                    }
                }
                assert_eq!(
                    (counts.sym, counts.nsym, counts.asym),
                    (seen.sym, seen.nsym, seen.asym),
                    "{factors:?} m={m}"
                );
            }
        }
    }
}
