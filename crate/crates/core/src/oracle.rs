//! Exhaustive robustness algorithms used as ground truth.
//!
//! Everything here scans subset pairs directly and is exponential in `n`;
//! it is meant for graphs of about a dozen vertices.

use serde::{Deserialize, Serialize};

use crate::enumerate::enumerate_pairs;
use crate::graph::{full_mask, Digraph, GraphError, VertexSubset};

/// An `(r, s)` robustness pair.
///
/// `s = 0` stands for "not `(r, 1)`-robust", and `(0, n)` is the value
/// reported for graphs that are not even 1-robust.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RobustnessPair {
    pub r: usize,
    pub s: usize,
}

impl RobustnessPair {
    pub fn new(r: usize, s: usize) -> Self {
        RobustnessPair { r, s }
    }
}

impl std::fmt::Display for RobustnessPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

/// `⌈n/2⌉`, the largest `r` any `n`-vertex digraph can reach.
pub fn max_possible_r(n: usize) -> usize {
    n.div_ceil(2)
}

/// Checks the three-way condition for one pair: `S1` is fully
/// `r`-reachable, or `S2` is, or together they hold at least `s`
/// `r`-reachable vertices.
pub fn robust_holds(g: &Digraph, s1: &VertexSubset, s2: &VertexSubset, r: usize, s: usize) -> Result<bool, GraphError> {
    if s1.is_empty() || s2.is_empty() || !s1.is_disjoint(s2) {
        return Err(GraphError::InvalidPair);
    }
    if s1.n() != g.n() || s2.n() != g.n() {
        return Err(GraphError::SizeMismatch {
            got: s1.n().max(s2.n()),
            n: g.n(),
        });
    }
    Ok(holds(g, s1, s2, r, s))
}

#[inline]
pub(crate) fn holds(g: &Digraph, s1: &VertexSubset, s2: &VertexSubset, r: usize, s: usize) -> bool {
    let x1 = g.r_reachable_set(s1, r).len();
    if x1 == s1.len() {
        return true;
    }
    let x2 = g.r_reachable_set(s2, r).len();
    x2 == s2.len() || x1 + x2 >= s
}

/// Whether the graph is `(r, s)`-robust, by scanning every ordered pair.
pub fn is_rs_robust(g: &Digraph, r: usize, s: usize) -> bool {
    enumerate_pairs(g.n()).all(|(s1, s2)| holds(g, &s1, &s2, r, s))
}

/// Largest `s` in `1..=n` with the graph `(r, s)`-robust, `0` if none, and
/// `n` for `r = 0`.
///
/// Tests each `s` from `n` downward against the full pair set; slower than
/// the interleaved descent in [`determine_robustness`] but independent of it.
pub fn smax_exhaustive(g: &Digraph, r: usize) -> usize {
    let n = g.n();
    if r == 0 {
        return n;
    }
    (1..=n).rev().find(|&s| is_rs_robust(g, r, s)).unwrap_or(0)
}

/// Statistics from one run of the exhaustive descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentStats {
    /// Unordered pairs visited before returning.
    pub pairs_visited: usize,
    /// Whether the scan stopped early because `r` reached zero.
    pub stopped_early: bool,
}

/// Lexicographically largest `(r, s)` the graph satisfies, by the nested
/// descent over pairs grouped by the size of `S1 ∪ S2`.
///
/// `r` starts at `min(max(δ_in, 1), ⌈n/2⌉)`: starting from `δ_in` itself
/// would return `(0, n)` for rooted out-trees, which are 1-robust.
///
/// Whenever `r` is lowered the scan restarts from the first pair. A single
/// pass that only resets `s` to `n` never rechecks the pairs already passed
/// at the larger `r`, and can report an `s` above `s_max(r)`.
pub fn determine_robustness(g: &Digraph) -> RobustnessPair {
    descent(g, g.n(), Rescan::Restart).0
}

pub fn determine_robustness_with_stats(g: &Digraph) -> (RobustnessPair, DescentStats) {
    descent(g, g.n(), Rescan::Restart)
}

/// `r_max` alone: the same descent with `s` pinned to 1, since r-robustness
/// and `(r, 1)`-robustness coincide.
///
/// A single pass suffices here: a pair that holds at `(r, 1)` also holds at
/// `(r - 1, 1)`.
pub fn determine_rmax_exhaustive(g: &Digraph) -> usize {
    descent(g, 1, Rescan::SinglePass).0.r
}

pub fn determine_rmax_with_stats(g: &Digraph) -> (usize, DescentStats) {
    let (pair, stats) = descent(g, 1, Rescan::SinglePass);
    (pair.r, stats)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rescan {
    SinglePass,
    Restart,
}

/// Shared body of the descents; `s_reset` is the value `s` returns to
/// whenever `r` is lowered (`n` for the full search, `1` for r-only).
///
/// The published listing tests one flag in its loop guards and assigns a
/// differently named one inside the loop; both are read here as "the most
/// recent condition check on the current pair passed".
fn descent(g: &Digraph, s_reset: usize, rescan: Rescan) -> (RobustnessPair, DescentStats) {
    let n = g.n();
    let mut stats = DescentStats {
        pairs_visited: 0,
        stopped_early: false,
    };
    if n == 1 {
        return (RobustnessPair::new(1, 1), stats);
    }
    let mut r = g.min_in_degree().max(1).min(max_possible_r(n));
    let mut s = s_reset;

    'scan: loop {
        for k in 2..=n {
            for union in subsets_of_size(n, k) {
                for (s1, s2) in two_part_splits(n, union) {
                    stats.pairs_visited += 1;
                    let r_before = r;
                    let mut ok = holds(g, &s1, &s2, r, s);
                    if !ok && s > 0 {
                        s -= 1;
                    }
                    while !ok && r > 0 {
                        while !ok && s > 0 {
                            ok = holds(g, &s1, &s2, r, s);
                            if !ok {
                                s -= 1;
                            }
                        }
                        if !ok {
                            r -= 1;
                            s = s_reset;
                        }
                    }
                    if r == 0 {
                        stats.stopped_early = true;
                        return (RobustnessPair::new(r, s), stats);
                    }
                    if r < r_before && rescan == Rescan::Restart {
                        continue 'scan;
                    }
                }
            }
        }
        return (RobustnessPair::new(r, s), stats);
    }
}

/// All `k`-subsets of `0..n` in increasing mask order (Gosper's hack).
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = full_mask(n);
    let mut cur = if k == 0 || k > n { None } else { Some(full_mask(k)) };
    std::iter::from_fn(move || {
        let out = cur?;
        let c = out & out.wrapping_neg();
        let r = out.wrapping_add(c);
        let next = if r == 0 { 0 } else { (((r ^ out) >> 2) / c) | r };
        cur = (r != 0 && next <= limit && next != 0).then_some(next);
        Some(out)
    })
}

/// The `2^{k-1} − 1` splits of a `k`-set into two nonempty parts, each
/// unordered split reported once with the lowest member in the first part.
///
/// The three-way condition is symmetric in the two parts, so the mirrored
/// ordering carries no extra information.
fn two_part_splits(n: usize, union: u64) -> impl Iterator<Item = (VertexSubset, VertexSubset)> {
    let low = union & union.wrapping_neg();
    let rest = union ^ low;
    // submasks of `rest` in increasing order, stopping before `rest` itself
    let mut next: Option<u64> = Some(0);
    std::iter::from_fn(move || {
        let a = next?;
        if a == rest {
            return None;
        }
        next = Some((a | !rest).wrapping_add(1) & rest);
        let s1 = low | a;
        Some((
            VertexSubset::from_bits_unchecked(n, s1),
            VertexSubset::from_bits_unchecked(n, union ^ s1),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> Digraph {
        Digraph::from_edge_list(3, [(1, 2), (2, 3), (3, 1)]).unwrap()
    }

    fn subset(n: usize, labels: &[usize]) -> VertexSubset {
        VertexSubset::from_one_based(n, labels.iter().copied()).unwrap()
    }

    #[test]
    fn gosper_enumerates_binomial_counts() {
        for n in 1..=8usize {
            for k in 1..=n {
                let all: Vec<u64> = subsets_of_size(n, k).collect();
                let expected = (0..1u64 << n).filter(|m| m.count_ones() as usize == k).count();
                assert_eq!(all.len(), expected, "n={n} k={k}");
                assert!(all.iter().all(|m| m.count_ones() as usize == k));
            }
        }
    }

    #[test]
    fn splits_cover_each_unordered_pair_once() {
        for k in 2..=6usize {
            let union = full_mask(k);
            let splits: Vec<_> = two_part_splits(k, union).collect();
            assert_eq!(splits.len(), (1 << (k - 1)) - 1);
            for (a, b) in &splits {
                assert!(a.contains(0) && !a.is_empty() && !b.is_empty());
                assert_eq!(a.bits() | b.bits(), union);
            }
        }
        // union sizes 2..=n over all k-subsets give exactly |T| / 2
        let n = 6;
        let total: usize = (2..=n)
            .map(|k| {
                subsets_of_size(n, k)
                    .map(|u| two_part_splits(n, u).count())
                    .sum::<usize>()
            })
            .sum();
        assert_eq!(total as u128 * 2, crate::enumerate::count_pairs(n).unwrap());
    }

    #[test]
    fn robust_holds_examples() {
        let k3 = Digraph::complete(3).unwrap();
        let c3 = cycle3();
        let (a, b) = (subset(3, &[1]), subset(3, &[2, 3]));
        assert_eq!(robust_holds(&k3, &a, &b, 0, 0), Ok(true));
        assert_eq!(robust_holds(&k3, &a, &b, 2, 1), Ok(true));
        assert_eq!(robust_holds(&c3, &subset(3, &[1]), &subset(3, &[2]), 2, 1), Ok(false));
    }

    #[test]
    fn robust_holds_rejects_bad_pairs() {
        let g = cycle3();
        let a = subset(3, &[1, 2]);
        assert_eq!(
            robust_holds(&g, &a, &subset(3, &[2]), 1, 1),
            Err(GraphError::InvalidPair)
        );
        assert_eq!(
            robust_holds(&g, &a, &VertexSubset::empty(3), 1, 1),
            Err(GraphError::InvalidPair)
        );
    }

    #[test]
    fn descent_examples() {
        let tree = Digraph::from_edge_list(4, [(1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(determine_robustness(&tree), RobustnessPair::new(1, 1));
        assert_eq!(
            determine_robustness(&Digraph::complete(3).unwrap()),
            RobustnessPair::new(2, 3)
        );
        let split = Digraph::from_edge_list(4, [(1, 2), (2, 1), (3, 4), (4, 3)]).unwrap();
        assert_eq!(determine_robustness(&split), RobustnessPair::new(0, 4));
    }

    #[test]
    fn rmax_examples() {
        assert_eq!(determine_rmax_exhaustive(&cycle3()), 1);
        assert_eq!(determine_rmax_exhaustive(&Digraph::complete(5).unwrap()), 3);
        assert_eq!(determine_rmax_exhaustive(&Digraph::edgeless(4).unwrap()), 0);
    }

    #[test]
    fn smax_examples() {
        let k3 = Digraph::complete(3).unwrap();
        assert_eq!(smax_exhaustive(&cycle3(), 0), 3);
        assert_eq!(smax_exhaustive(&k3, 2), 3);
        assert_eq!(smax_exhaustive(&cycle3(), 2), 0);
        // every pair in a 3-cycle has a singleton side, which is 1-reachable
        assert_eq!(smax_exhaustive(&cycle3(), 1), 3);
    }

    #[test]
    fn trivial_graph_convention() {
        let g = Digraph::edgeless(1).unwrap();
        assert_eq!(determine_robustness(&g), RobustnessPair::new(1, 1));
        assert_eq!(determine_rmax_exhaustive(&g), 1);
    }

    #[test]
    fn disconnected_graph_stops_early() {
        let g = Digraph::from_edge_list(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]).unwrap();
        let (pair, stats) = determine_robustness_with_stats(&g);
        assert_eq!(pair, RobustnessPair::new(0, 6));
        assert!(stats.stopped_early);
        assert!((stats.pairs_visited as u128) < crate::enumerate::count_pairs(6).unwrap() / 2);

        // ({1}, {2}) is the very first pair and neither side has an in-neighbour
        let mut edges = vec![];
        for i in 3..=6 {
            for j in 3..=6 {
                if i != j {
                    edges.push((i, j));
                }
            }
        }
        let g = Digraph::from_edge_list(6, edges).unwrap();
        let (pair, stats) = determine_robustness_with_stats(&g);
        assert_eq!(pair, RobustnessPair::new(0, 6));
        assert_eq!(stats.pairs_visited, 1);

        let (r, stats) = determine_rmax_with_stats(&Digraph::edgeless(5).unwrap());
        assert_eq!(r, 0);
        assert!(stats.stopped_early);
        assert_eq!(stats.pairs_visited, 1);
    }

    #[test]
    fn single_pass_overstates_s_after_lowering_r() {
        // δ_in = 3 so the scan starts at r = 3; ({1,2,4}, {3,5,6}) passes at
        // (3, 2) but fails (2, 4) with X1 = {1}, X2 = {5, 6}
        let g = Digraph::from_edge_list(
            6,
            [
                (1, 2),
                (1, 4),
                (1, 5),
                (1, 6),
                (2, 1),
                (2, 3),
                (2, 4),
                (2, 6),
                (3, 1),
                (3, 5),
                (3, 6),
                (4, 1),
                (4, 2),
                (4, 5),
                (4, 6),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
                (6, 1),
                (6, 3),
                (6, 5),
            ],
        )
        .unwrap();
        let (s1, s2) = (subset(6, &[1, 2, 4]), subset(6, &[3, 5, 6]));
        assert_eq!(robust_holds(&g, &s1, &s2, 2, 4), Ok(false));
        assert_eq!(descent(&g, 6, Rescan::SinglePass).0, RobustnessPair::new(2, 6));
        assert_eq!(determine_robustness(&g), RobustnessPair::new(2, 3));
        assert_eq!(smax_exhaustive(&g, 2), 3);
    }

    #[test]
    fn connected_graph_scans_everything() {
        let k4 = Digraph::complete(4).unwrap();
        let (_, stats) = determine_robustness_with_stats(&k4);
        assert!(!stats.stopped_early);
        assert_eq!(
            stats.pairs_visited as u128 * 2,
            crate::enumerate::count_pairs(4).unwrap()
        );
    }
}
