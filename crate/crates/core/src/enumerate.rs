//! Enumeration of subset pairs.
//!
//! Both streams are ordered lexicographically by `(S1 mask, S2 mask)`.

use crate::graph::{full_mask, VertexSubset};

/// Every ordered pair `(S1, S2)` of nonempty, disjoint vertex subsets.
///
/// Both `(S1, S2)` and `(S2, S1)` are produced.
pub fn enumerate_pairs(n: usize) -> PairIter {
    PairIter::new(n)
}

/// Every ordered bipartition `(S1, V \ S1)` with both parts nonempty.
pub fn enumerate_bipartitions(n: usize) -> impl Iterator<Item = (VertexSubset, VertexSubset)> {
    let full = full_mask(n);
    let last = if n < 2 { 0 } else { full };
    (1..last).map(move |s1| {
        (
            VertexSubset::from_bits_unchecked(n, s1),
            VertexSubset::from_bits_unchecked(n, full ^ s1),
        )
    })
}

/// `|T| = Σ_{p=2}^{n} C(n,p) (2^p − 2)`; `None` on overflow.
pub fn count_pairs(n: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut binom: u128 = 1; // C(n, 0)
    for p in 1..=n {
        // C(n, p) = C(n, p-1) * (n - p + 1) / p, exact at every step
        binom = binom.checked_mul((n - p + 1) as u128)? / p as u128;
        if p < 2 {
            continue;
        }
        let pow = 1u128.checked_shl(p as u32).filter(|_| p < 128)?;
        total = total.checked_add(binom.checked_mul(pow - 2)?)?;
    }
    Some(total)
}

pub struct PairIter {
    n: usize,
    full: u64,
    s1: u64,
    comp: u64,
    s2: u64,
}

impl PairIter {
    fn new(n: usize) -> Self {
        let full = full_mask(n);
        PairIter {
            n,
            full,
            s1: 0,
            comp: 0,
            s2: 0,
        }
    }
}

impl Iterator for PairIter {
    type Item = (VertexSubset, VertexSubset);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.s2 != 0 {
                // next submask of `comp` in increasing order
                let next = (self.s2 | !self.comp).wrapping_add(1) & self.comp;
                if next != 0 {
                    self.s2 = next;
                    return Some(self.emit());
                }
            }
            if self.n < 2 || self.s1 >= self.full - 1 {
                return None;
            }
            self.s1 += 1;
            self.comp = self.full & !self.s1;
            if self.comp != 0 {
                self.s2 = self.comp & self.comp.wrapping_neg();
                return Some(self.emit());
            }
            self.s2 = 0;
        }
    }
}

impl PairIter {
    fn emit(&self) -> (VertexSubset, VertexSubset) {
        (
            VertexSubset::from_bits_unchecked(self.n, self.s1),
            VertexSubset::from_bits_unchecked(self.n, self.s2),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// `3^n − 2^{n+1} + 1`: each vertex goes to S1, S2 or neither, minus the
    /// assignments with an empty side.
    fn closed_form(n: u32) -> u128 {
        3u128.pow(n) - 2u128.pow(n + 1) + 1
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_pairs(2), Some(2));
        assert_eq!(count_pairs(3), Some(12));
        assert_eq!(enumerate_pairs(2).count(), 2);
        assert_eq!(enumerate_pairs(3).count(), 12);
    }

    #[test]
    fn count_matches_stream_and_closed_form() {
        for n in 2..=10usize {
            let stream = enumerate_pairs(n).count() as u128;
            assert_eq!(count_pairs(n), Some(stream), "n = {n}");
            assert_eq!(stream, closed_form(n as u32));
        }
        for n in 11..=64u32 {
            assert_eq!(count_pairs(n as usize), Some(closed_form(n)));
        }
    }

    #[test]
    fn count_overflow_is_detected() {
        assert_eq!(count_pairs(200), None);
    }

    #[test]
    fn pairs_are_distinct_disjoint_nonempty_and_sorted() {
        let pairs: Vec<_> = enumerate_pairs(5).collect();
        let unique: HashSet<_> = pairs.iter().map(|(a, b)| (a.bits(), b.bits())).collect();
        assert_eq!(unique.len(), pairs.len());
        for (a, b) in &pairs {
            assert!(!a.is_empty() && !b.is_empty() && a.is_disjoint(b));
        }
        assert!(pairs
            .windows(2)
            .all(|w| (w[0].0.bits(), w[0].1.bits()) < (w[1].0.bits(), w[1].1.bits())));
        assert_eq!(pairs.first().map(|(a, b)| (a.bits(), b.bits())), Some((0b1, 0b10)));
    }

    #[test]
    fn bipartitions() {
        assert_eq!(enumerate_bipartitions(2).count(), 2);
        assert_eq!(enumerate_bipartitions(3).count(), 6);
        for n in 2..=7 {
            let parts: Vec<_> = enumerate_bipartitions(n).collect();
            assert_eq!(parts.len(), (1 << n) - 2);
            for (a, b) in parts {
                let sum: Vec<u8> = a.indicator().iter().zip(b.indicator()).map(|(x, y)| x + y).collect();
                assert!(sum.iter().all(|&v| v == 1));
            }
        }
    }

    #[test]
    fn degenerate_orders_yield_nothing() {
        assert_eq!(enumerate_pairs(1).count(), 0);
        assert_eq!(enumerate_bipartitions(1).count(), 0);
    }
}
