//! Ordered index lists and permutation signatures.
//!
//! An [`IndexList`] is a strictly increasing list of dimension indices. It
//! labels the basis blade `e_I` and the rows/columns of the matrix basis
//! `w_{I,J}`. Internally a list is a bitmask over at most [`MAX_DIM`]
//! dimensions, so subset tests, complements and differences are single
//! machine operations. Ordering follows the index sequences lexicographically.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use crate::error::{Error, Result};

/// Largest supported space-time dimension `k + n`.
pub const MAX_DIM: usize = 16;

/// Signature of a permutation: `-1`, `0` (repeated indices) or `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    /// `(-1)^exponent`.
    pub fn parity(exponent: usize) -> Sign {
        if exponent.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Strictly increasing list of dimension indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexList(u16);

impl IndexList {
    /// The empty list, labelling the scalar blade `e_∅ = 1`.
    pub const EMPTY: IndexList = IndexList(0);

    /// Builds a list from indices that must already be strictly increasing.
    pub fn new(indices: &[usize]) -> Result<IndexList> {
        let mut mask = 0u16;
        let mut previous: Option<usize> = None;
        for &i in indices {
            if i >= MAX_DIM {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: MAX_DIM,
                });
            }
            if previous.is_some_and(|p| p >= i) {
                return Err(Error::NotCanonical(indices.to_vec()));
            }
            previous = Some(i);
            mask |= 1 << i;
        }
        Ok(IndexList(mask))
    }

    pub fn from_mask(mask: u16) -> IndexList {
        IndexList(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// The one-element list `(i)`.
    pub fn single(i: usize) -> IndexList {
        assert!(i < MAX_DIM, "index {i} exceeds MAX_DIM");
        IndexList(1 << i)
    }

    /// `(0, 1, ..., dim-1)`.
    pub fn full(dim: usize) -> IndexList {
        assert!(dim <= MAX_DIM);
        IndexList(((1u32 << dim) - 1) as u16)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_DIM).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset_of(self, other: IndexList) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: IndexList) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest index plus one, or zero for the empty list.
    pub fn bound(self) -> usize {
        MAX_DIM - self.0.leading_zeros() as usize
    }

    /// `I^c`: the indices below `dim` not present in `self`.
    pub fn complement(self, dim: usize) -> IndexList {
        IndexList(IndexList::full(dim).0 & !self.0)
    }

    /// `self \ other` when `other ⊆ self`; `None` otherwise.
    pub fn subtract(self, other: IndexList) -> Option<IndexList> {
        other
            .is_subset_of(self)
            .then_some(IndexList(self.0 & !other.0))
    }

    /// `self + {i}` without sign bookkeeping; `None` if `i` is present.
    pub fn insert(self, i: usize) -> Option<IndexList> {
        (!self.contains(i)).then(|| IndexList(self.0 | (1 << i)))
    }

    /// `self \ {i}`; `None` if `i` is absent.
    pub fn remove(self, i: usize) -> Option<IndexList> {
        self.contains(i).then(|| IndexList(self.0 & !(1 << i)))
    }

    /// Number of elements of `self` strictly greater than `i`.
    fn count_above(self, i: usize) -> usize {
        if i + 1 >= MAX_DIM {
            0
        } else {
            (self.0 >> (i + 1)).count_ones() as usize
        }
    }
}

impl Ord for IndexList {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IndexList {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

impl fmt::Display for IndexList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Sorts `raw`, returning the signature of the sorting permutation and the
/// sorted list. Repeated indices give `(Zero, ∅)`.
///
/// Inversions are counted with a merge sort.
pub fn sort_signature(raw: &[usize], dim: usize) -> Result<(Sign, IndexList)> {
    check_dim(dim)?;
    if let Some(&index) = raw.iter().find(|&&i| i >= dim) {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    let mut work = raw.to_vec();
    let mut scratch = vec![0; work.len()];
    let inversions = merge_count(&mut work, &mut scratch);
    if work.windows(2).any(|w| w[0] == w[1]) {
        return Ok((Sign::Zero, IndexList::EMPTY));
    }
    let mask = work.iter().fold(0u16, |m, &i| m | (1 << i));
    Ok((Sign::parity(inversions), IndexList(mask)))
}

fn merge_count(values: &mut [usize], scratch: &mut [usize]) -> usize {
    let len = values.len();
    if len < 2 {
        return 0;
    }
    let mid = len / 2;
    let mut inversions = {
        let (left, right) = values.split_at_mut(mid);
        let (s_left, s_right) = scratch.split_at_mut(mid);
        merge_count(left, s_left) + merge_count(right, s_right)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < len {
        if values[i] <= values[j] {
            scratch[k] = values[i];
            i += 1;
        } else {
            scratch[k] = values[j];
            inversions += mid - i;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&values[i..mid]);
    k += mid - i;
    scratch[k..k + len - j].copy_from_slice(&values[j..len]);
    values.copy_from_slice(&scratch[..len]);
    inversions
}

/// `σ(I,J)` and the merged list `I + J`; `(Zero, ∅)` when the lists overlap.
pub fn concat_signature(first: IndexList, second: IndexList) -> (Sign, IndexList) {
    if !first.is_disjoint(second) {
        return (Sign::Zero, IndexList::EMPTY);
    }
    let inversions: usize = second.iter().map(|j| first.count_above(j)).sum();
    (Sign::parity(inversions), IndexList(first.0 | second.0))
}

/// `σ(I,J)` alone.
pub fn signature(first: IndexList, second: IndexList) -> Sign {
    concat_signature(first, second).0
}

/// `I^c` relative to `dim`.
pub fn complement(list: IndexList, dim: usize) -> IndexList {
    list.complement(dim)
}

/// `J \ I` if `I ⊆ J`.
pub fn subtract(from: IndexList, remove: IndexList) -> Option<IndexList> {
    from.subtract(remove)
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::DimensionOutOfRange(dim))
    } else {
        Ok(())
    }
}

/// All lists of length `len` over `0..dim`, in lexicographic order.
pub fn lists_of_len(dim: usize, len: usize) -> Vec<IndexList> {
    let mut out = Vec::new();
    if len > dim {
        return out;
    }
    let mut current = Vec::with_capacity(len);
    fn go(start: usize, dim: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<IndexList>) {
        if current.len() == len {
            out.push(IndexList(current.iter().fold(0, |m, &i| m | (1 << i))));
            return;
        }
        for i in start..dim {
            current.push(i);
            go(i + 1, dim, len, current, out);
            current.pop();
        }
    }
    go(0, dim, len, &mut current, &mut out);
    out
}

/// Every list over `0..dim`, grouped by increasing length.
pub fn all_lists(dim: usize) -> Vec<IndexList> {
    (0..=dim).flat_map(|m| lists_of_len(dim, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(v: &[usize]) -> IndexList {
        IndexList::new(v).unwrap()
    }

    #[test]
    fn sort_signature_examples() {
        assert_eq!(sort_signature(&[1, 2], 4).unwrap(), (Sign::Plus, list(&[1, 2])));
        assert_eq!(sort_signature(&[2, 1], 4).unwrap(), (Sign::Minus, list(&[1, 2])));
        assert_eq!(sort_signature(&[1, 1], 4).unwrap(), (Sign::Zero, IndexList::EMPTY));
        // 3 > 0 and 3 > 2: two inversions.
        assert_eq!(sort_signature(&[3, 0, 2], 4).unwrap(), (Sign::Plus, list(&[0, 2, 3])));
        assert_eq!(sort_signature(&[], 4).unwrap(), (Sign::Plus, IndexList::EMPTY));
    }

    #[test]
    fn sort_signature_rejects_out_of_range() {
        assert_eq!(
            sort_signature(&[0, 4], 4),
            Err(Error::IndexOutOfRange { index: 4, dim: 4 })
        );
        assert!(sort_signature(&[0], 17).is_err());
        assert!(sort_signature(&[0], 0).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat_signature(list(&[1]), list(&[2])), (Sign::Plus, list(&[1, 2])));
        assert_eq!(concat_signature(list(&[2]), list(&[1])), (Sign::Minus, list(&[1, 2])));
        assert_eq!(
            concat_signature(list(&[0, 3]), list(&[1, 2])),
            (Sign::Plus, list(&[0, 1, 2, 3]))
        );
        assert_eq!(concat_signature(list(&[1]), list(&[1, 2])).0, Sign::Zero);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(list(&[0]), 4), list(&[1, 2, 3]));
        assert_eq!(complement(IndexList::EMPTY, 3), list(&[0, 1, 2]));
        assert_eq!(complement(list(&[1, 3]), 4), list(&[0, 2]));
    }

    #[test]
    fn subtract_examples() {
        assert_eq!(subtract(list(&[1, 2]), list(&[1])), Some(list(&[2])));
        assert_eq!(subtract(list(&[1, 2]), list(&[3])), None);
        assert_eq!(subtract(list(&[0, 1, 2]), list(&[0, 2])), Some(list(&[1])));
    }

    #[test]
    fn new_rejects_unsorted_and_repeats() {
        assert!(matches!(IndexList::new(&[2, 1]), Err(Error::NotCanonical(_))));
        assert!(matches!(IndexList::new(&[1, 1]), Err(Error::NotCanonical(_))));
        assert!(IndexList::new(&[16]).is_err());
    }

    #[test]
    fn ordering_is_lexicographic_on_sequences() {
        let mut lists = lists_of_len(4, 2);
        lists.reverse();
        lists.sort();
        let seqs: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        assert_eq!(
            seqs,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(list(&[0, 3]) < list(&[1, 2]));
    }

    #[test]
    fn empty_list_signatures_are_plus() {
        for k in all_lists(6) {
            assert_eq!(signature(IndexList::EMPTY, k), Sign::Plus);
            assert_eq!(signature(k, IndexList::EMPTY), Sign::Plus);
        }
    }

    #[test]
    fn merged_signs_associate() {
        for dim in 1..=5 {
            let lists = all_lists(dim);
            for &i in &lists {
                for &j in lists.iter().filter(|j| j.is_disjoint(i)) {
                    for &k in lists.iter().filter(|k| k.is_disjoint(i) && k.is_disjoint(j)) {
                        let (s_ij, ij) = concat_signature(i, j);
                        let (s_jk, jk) = concat_signature(j, k);
                        assert_eq!(s_ij * signature(ij, k), s_jk * signature(i, jk));
                    }
                }
            }
        }
    }

    #[test]
    fn complement_swap_sign() {
        for dim in 1..=6 {
            for i in all_lists(dim) {
                let c = i.complement(dim);
                let expected = Sign::parity(i.len() * (dim - i.len()));
                assert_eq!(signature(i, c) * signature(c, i), expected);
            }
        }
    }

    #[test]
    fn lists_of_len_counts_binomials() {
        assert_eq!(lists_of_len(4, 2).len(), 6);
        assert_eq!(lists_of_len(5, 0), vec![IndexList::EMPTY]);
        assert!(lists_of_len(3, 4).is_empty());
        assert_eq!(all_lists(4).len(), 16);
    }
}
