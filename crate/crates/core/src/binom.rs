//! Binomial coefficients and lexicographic subset ranking.

use crate::Int;
use num_traits::Zero;

/// `n choose k` in machine integers, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul((n - (k - i)) as u128)? / i as u128;
    }
    usize::try_from(acc).ok()
}

/// `n choose k` in exact integers.
pub fn binomial_big(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 1..=k {
        acc = acc * Int::from(n - (k - i)) / Int::from(i);
    }
    acc
}

/// Rank of a strictly increasing `k`-subset of `[0, n)` in
/// lexicographic order over all such subsets.
pub fn rank_subset(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in subset.iter().enumerate() {
        for j in prev..c {
            rank += binomial(n - j - 1, k - i - 1).expect("rank overflow");
        }
        prev = c + 1;
    }
    rank
}

/// Inverse of [`rank_subset`]: the `rank`-th `k`-subset of `[0, n)`.
pub fn unrank_subset(n: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut subset = Vec::with_capacity(k);
    let mut c = 0;
    for i in 0..k {
        loop {
            let below = binomial(n - c - 1, k - i - 1).expect("rank overflow");
            if below <= rank {
                rank -= below;
                c += 1;
            } else {
                subset.push(c);
                c += 1;
                break;
            }
        }
    }
    subset
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(6, 3), Some(20));
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(6, 4), Some(15));
        assert_eq!(binomial(4, 7), Some(0));
        assert_eq!(binomial_big(45, 9), Int::from(886_163_135u64));
    }

    #[test]
    fn lex_order_of_pairs() {
        // 2-subsets of [0,4) in lex order.
        let expected = [
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ];
        for (r, want) in expected.iter().enumerate() {
            assert_eq!(&unrank_subset(4, 2, r), want);
            assert_eq!(rank_subset(4, want), r);
        }
    }

    #[test]
    fn rank_roundtrip() {
        for (n, k) in [(7, 3), (8, 1), (6, 6), (9, 4)] {
            for r in 0..binomial(n, k).unwrap() {
                let s = unrank_subset(n, k, r);
                assert_eq!(s.len(), k);
                assert!(s.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(rank_subset(n, &s), r);
            }
        }
    }
}
