//! Strictly increasing multi-indices, unshuffles and permutation signs.
//!
//! Basis indices are 1-based throughout, matching the `e_1 .. e_n` labels of
//! the algebras in the catalog.

use std::fmt;

use itertools::Itertools;

/// A strictly increasing list of 1-based basis indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Returns `None` unless `entries` is strictly increasing and starts at 1 or above.
    pub fn new(entries: Vec<usize>) -> Option<Self> {
        let ok = entries.first().map_or(true, |&e| e >= 1)
            && entries.windows(2).all(|w| w[0] < w[1]);
        ok.then_some(MultiIndex(entries))
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_entry(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// The index with position `pos` (0-based) removed.
    pub fn without_position(&self, pos: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        MultiIndex(v)
    }

    /// Position of this index in the lexicographic enumeration of all
    /// length-`len()` multi-indices over `1..=n`.
    pub fn rank_in(&self, n: usize) -> usize {
        let p = self.0.len();
        let mut rank = 0;
        let mut prev = 0;
        for (k, &e) in self.0.iter().enumerate() {
            for skipped in prev + 1..e {
                rank += binomial(n - skipped, p - k - 1);
            }
            prev = e;
        }
        rank
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing length-`p` multi-indices over `1..=n`, in
/// lexicographic order. Empty when `p > n`.
pub fn enumerate_multiindices(n: usize, p: usize) -> Vec<MultiIndex> {
    if p > n {
        return Vec::new();
    }
    (1..=n).combinations(p).map(MultiIndex).collect()
}

/// An unshuffle of type `(k, l)`: a permutation of `1..=k+l` increasing on
/// its first `k` and its last `l` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unshuffle {
    pub perm: Vec<usize>,
    pub split: usize,
}

impl Unshuffle {
    pub fn first(&self) -> &[usize] {
        &self.perm[..self.split]
    }

    pub fn rest(&self) -> &[usize] {
        &self.perm[self.split..]
    }
}

/// All `(k, l)` unshuffles with their signs, ordered by the first block.
pub fn unshuffles(k: usize, l: usize) -> Vec<(Unshuffle, i32)> {
    let n = k + l;
    (1..=n)
        .combinations(k)
        .map(|first| {
            let rest: Vec<usize> = (1..=n).filter(|i| !first.contains(i)).collect();
            // Inversions: each rest element smaller than a first-block element.
            let inversions: usize = first.iter().enumerate().map(|(pos, &f)| f - 1 - pos).sum();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let mut perm = first;
            perm.extend(rest);
            (Unshuffle { perm, split: k }, sign)
        })
        .collect()
}

/// Sorts `indices`, returning the sorted multi-index and the sign of the
/// sorting permutation, or `None` when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(MultiIndex, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // Insertion sort; inputs are at most a handful of entries.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((MultiIndex(v), sign))
}

/// Sign of an arbitrary permutation of `0..n` (or `1..=n`), by inversion count.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let inv = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_multiindices(3, 2), vec![mi(&[1, 2]), mi(&[1, 3]), mi(&[2, 3])]);
        assert_eq!(enumerate_multiindices(4, 1).len(), 4);
        assert_eq!(enumerate_multiindices(6, 4).len(), 15);
        assert!(enumerate_multiindices(2, 3).is_empty());
        assert_eq!(enumerate_multiindices(3, 0), vec![MultiIndex::empty()]);
    }

    #[test]
    fn rank_matches_enumeration() {
        for n in 0..=6 {
            for p in 0..=n {
                for (pos, idx) in enumerate_multiindices(n, p).iter().enumerate() {
                    assert_eq!(idx.rank_in(n), pos, "n={n} p={p} {idx:?}");
                }
            }
        }
    }

    #[test]
    fn unshuffle_examples() {
        let sh = unshuffles(1, 2);
        let got: Vec<(Vec<usize>, i32)> = sh.into_iter().map(|(u, s)| (u.perm, s)).collect();
        assert_eq!(got, vec![(vec![1, 2, 3], 1), (vec![2, 1, 3], -1), (vec![3, 1, 2], 1)]);
        assert_eq!(unshuffles(2, 2).len(), 6);
        assert_eq!(unshuffles(1, 1).iter().map(|(_, s)| s).sum::<i32>(), 0);
        assert_eq!(unshuffles(0, 3).len(), 1);
    }

    #[test]
    fn unshuffle_counts_and_signs() {
        for k in 0..=6 {
            for l in 0..=6 {
                let sh = unshuffles(k, l);
                assert_eq!(sh.len(), binomial(k + l, k));
                for (u, s) in sh {
                    assert!(u.first().windows(2).all(|w| w[0] < w[1]));
                    assert!(u.rest().windows(2).all(|w| w[0] < w[1]));
                    let mut sorted = u.perm.clone();
                    sorted.sort();
                    assert_eq!(sorted, (1..=k + l).collect::<Vec<_>>());
                    assert_eq!(s, permutation_sign(&u.perm));
                }
            }
        }
    }

    #[test]
    fn sort_examples() {
        assert_eq!(sort_with_sign(&[2, 1]), Some((mi(&[1, 2]), -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(sort_with_sign(&[3, 1, 2]), Some((mi(&[1, 2, 3]), 1)));
        assert!(MultiIndex::new(vec![2, 1]).is_none());
        assert!(MultiIndex::new(vec![0, 1]).is_none());
    }

    proptest! {
        #[test]
        fn sort_recovers_sign_of_permutation(
            idx in prop::sample::subsequence((1usize..=9).collect::<Vec<_>>(), 0..=6),
            seed in any::<u64>(),
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..idx.len()).collect();
            order.shuffle(&mut rng);
            let permuted: Vec<usize> = order.iter().map(|&i| idx[i]).collect();
            let (sorted, sign) = sort_with_sign(&permuted).unwrap();
            prop_assert_eq!(sorted.entries(), &idx[..]);
            prop_assert_eq!(sign, permutation_sign(&order));
        }
    }
}
