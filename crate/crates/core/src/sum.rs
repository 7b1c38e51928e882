//! Deterministic pairwise (tree) reductions.
//!
//! Every quadrature sum in this crate reduces in one fixed binary-tree order:
//! a range splits at its midpoint until blocks of at most [`TREE_BLOCK`]
//! elements remain, and each block accumulates left to right. The tree shape
//! depends only on the range length, never on how work is scheduled, so the
//! parallel and sequential evaluations below are bitwise identical.

use rayon::join;

use crate::quaternion::Quaternion;

/// Leaf size of the summation tree.
pub const TREE_BLOCK: usize = 32;

/// Below this many elements the parallel driver stops spawning. Affects
/// scheduling only; the reduction tree itself is unchanged.
const PAR_CUTOFF: usize = 4096;

/// Element that can be tree-summed.
pub trait TreeTerm: Copy + Send + Sync {
    const ZERO: Self;
    fn add(self, other: Self) -> Self;
}

impl TreeTerm for f64 {
    const ZERO: Self = 0.0;
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
}

impl TreeTerm for Quaternion {
    const ZERO: Self = Quaternion::ZERO;
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
}

/// Fixed-order pairwise sum of a slice.
pub fn tree_sum<T: TreeTerm>(terms: &[T]) -> T {
    if terms.len() <= TREE_BLOCK {
        let mut acc = T::ZERO;
        for &t in terms {
            acc = acc.add(t);
        }
        acc
    } else {
        let mid = terms.len() / 2;
        tree_sum(&terms[..mid]).add(tree_sum(&terms[mid..]))
    }
}

/// Same tree as [`tree_sum`], with the two halves of large ranges evaluated
/// on separate workers. Bitwise equal to the sequential result.
pub fn par_tree_sum<T: TreeTerm>(terms: &[T]) -> T {
    if terms.len() <= PAR_CUTOFF {
        return tree_sum(terms);
    }
    let mid = terms.len() / 2;
    let (a, b) = join(|| par_tree_sum(&terms[..mid]), || par_tree_sum(&terms[mid..]));
    a.add(b)
}

/// Fixed-order pairwise sum of `f(start), …, f(end − 1)` without materializing
/// the terms.
pub fn tree_sum_fn<T, F>(start: usize, end: usize, f: &F) -> T
where
    T: TreeTerm,
    F: Fn(usize) -> T,
{
    debug_assert!(start <= end);
    if end - start <= TREE_BLOCK {
        let mut acc = T::ZERO;
        for idx in start..end {
            acc = acc.add(f(idx));
        }
        acc
    } else {
        let mid = start + (end - start) / 2;
        tree_sum_fn(start, mid, f).add(tree_sum_fn(mid, end, f))
    }
}
