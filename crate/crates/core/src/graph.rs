//! Simple digraphs, their Laplacians, and vertex subsets.
//!
//! Vertices are numbered `0..n` everywhere inside the crate. The only
//! one-based entry points are [`Digraph::from_edge_list`],
//! [`VertexSubset::from_one_based`] and [`VertexSubset::to_one_based`],
//! which exist for file formats and reports.

use std::fmt;

use thiserror::Error;

/// Subsets are stored as `u64` bitmasks, which caps the vertex count.
///
/// Widening [`VertexSubset`] to a multi-word bitset lifts the cap; nothing
/// outside this module touches the raw mask except through `bits()`.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a digraph needs at least one vertex")]
    Empty,
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooLarge(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("subset pair must be nonempty and disjoint")]
    InvalidPair,
    #[error("subset size {got} does not match vertex count {n}")]
    SizeMismatch { got: usize, n: usize },
    #[error("indicator entries must be 0 or 1")]
    NotBinary,
}

/// A set of vertices of an `n`-vertex graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    n: usize,
    bits: u64,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        VertexSubset { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        VertexSubset { n, bits: full_mask(n) }
    }

    /// Builds a subset from a raw mask; bits at or above `n` are rejected.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        if bits & !full_mask(n) != 0 {
            let vertex = 64 - bits.leading_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { vertex, n });
        }
        Ok(VertexSubset { n, bits })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert_eq!(bits & !full_mask(n), 0);
        VertexSubset { n, bits }
    }

    /// Builds a subset from zero-based vertex indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self, GraphError> {
        let mut bits = 0u64;
        for v in indices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v + 1, n });
            }
            bits |= 1 << v;
        }
        Self::from_bits(n, bits)
    }

    /// Builds a subset from one-based vertex labels, as they appear in files.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(n: usize, labels: I) -> Result<Self, GraphError> {
        let mut bits = 0u64;
        for v in labels {
            if v == 0 || v > n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1 << (v - 1);
        }
        Self::from_bits(n, bits)
    }

    /// Indicator vector: entry `j` is 1 iff vertex `j` is a member.
    pub fn indicator(&self) -> Vec<u8> {
        (0..self.n).map(|j| ((self.bits >> j) & 1) as u8).collect()
    }

    /// Inverse of [`VertexSubset::indicator`].
    pub fn from_indicator(b: &[u8]) -> Result<Self, GraphError> {
        let mut bits = 0u64;
        for (j, &v) in b.iter().enumerate() {
            match v {
                0 => {}
                1 => bits |= 1 << j,
                _ => return Err(GraphError::NotBinary),
            }
        }
        Self::from_bits(b.len(), bits)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.bits >> v) & 1 == 1
    }

    pub fn complement(&self) -> Self {
        VertexSubset {
            n: self.n,
            bits: !self.bits & full_mask(self.n),
        }
    }

    pub fn is_disjoint(&self, other: &VertexSubset) -> bool {
        self.bits & other.bits == 0
    }

    pub fn union(&self, other: &VertexSubset) -> Self {
        VertexSubset {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    /// Zero-based member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// One-based member labels in ascending order.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

/// An immutable simple digraph stored as in-neighbour masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    in_mask: Vec<u64>,
}

impl Digraph {
    /// Builds a digraph from one-based `(source, target)` pairs.
    ///
    /// Repeated edges collapse; self-loops and out-of-range labels are errors.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::check_order(n)?;
        let mut in_mask = vec![0u64; n];
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            in_mask[j - 1] |= 1 << (i - 1);
        }
        Ok(Digraph { n, in_mask })
    }

    /// Builds a digraph from zero-based `(source, target)` pairs.
    pub fn from_indexed_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edge_list(n, edges.into_iter().map(|(i, j)| (i + 1, j + 1)))
    }

    /// The complete digraph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::check_order(n)?;
        let full = full_mask(n);
        let in_mask = (0..n).map(|j| full & !(1u64 << j)).collect();
        Ok(Digraph { n, in_mask })
    }

    /// The graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::check_order(n)?;
        Ok(Digraph { n, in_mask: vec![0; n] })
    }

    fn check_order(n: usize) -> Result<(), GraphError> {
        match n {
            0 => Err(GraphError::Empty),
            n if n > MAX_VERTICES => Err(GraphError::TooLarge(n)),
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// In-neighbours of `j` (zero-based).
    #[inline]
    pub fn in_neighbors(&self, j: usize) -> VertexSubset {
        VertexSubset::from_bits_unchecked(self.n, self.in_mask[j])
    }

    #[inline]
    pub fn in_degree(&self, j: usize) -> usize {
        self.in_mask[j].count_ones() as usize
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.in_mask.iter().filter(|&&m| (m >> i) & 1 == 1).count()
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.in_mask[j] >> i) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.in_mask.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Zero-based edges sorted by `(source, target)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.n).map(|j| self.in_degree(j)).min().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        (0..self.n).map(|j| self.in_degree(j)).max().unwrap_or(0)
    }

    pub fn laplacian(&self) -> Laplacian {
        Laplacian::new(self)
    }

    /// Maximum over members `j` of the number of in-neighbours outside `s`;
    /// zero for the empty set.
    pub fn reachability(&self, s: &VertexSubset) -> usize {
        let outside = !s.bits;
        let direct = s
            .iter()
            .map(|j| (self.in_mask[j] & outside).count_ones() as usize)
            .max()
            .unwrap_or(0);
        debug_assert_eq!(direct as i64, self.laplacian_row_max(s).max(0));
        direct
    }

    /// `max_j L_j σ(s)` evaluated row by row over all vertices, members or not.
    fn laplacian_row_max(&self, s: &VertexSubset) -> i64 {
        (0..self.n)
            .map(|j| {
                let own = if s.contains(j) { self.in_degree(j) as i64 } else { 0 };
                own - (self.in_mask[j] & s.bits).count_ones() as i64
            })
            .max()
            .unwrap_or(0)
    }

    /// Members of `s` with at least `r` in-neighbours outside `s`.
    pub fn r_reachable_set(&self, s: &VertexSubset, r: usize) -> VertexSubset {
        let outside = !s.bits;
        let mut bits = 0u64;
        for j in s.iter() {
            if (self.in_mask[j] & outside).count_ones() as usize >= r {
                bits |= 1 << j;
            }
        }
        VertexSubset::from_bits_unchecked(self.n, bits)
    }

    /// Number of weakly connected components.
    pub fn weak_components(&self) -> usize {
        let mut seen = 0u64;
        let mut count = 0;
        for start in 0..self.n {
            if (seen >> start) & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u64 << start;
            seen |= frontier;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let mut nbrs = self.in_mask[v];
                for j in 0..self.n {
                    if self.has_edge(v, j) {
                        nbrs |= 1 << j;
                    }
                }
                let fresh = nbrs & !seen;
                seen |= fresh;
                frontier |= fresh;
            }
        }
        count
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().into_iter().map(|(i, j)| (i + 1, j + 1)).collect();
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

/// Dense integer Laplacian: row `j` holds `|N_j|` on the diagonal and `-1`
/// in every column `i` with an edge `i -> j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Laplacian {
    n: usize,
    entries: Vec<i64>,
}

impl Laplacian {
    pub fn new(g: &Digraph) -> Self {
        let n = g.n();
        let mut entries = vec![0i64; n * n];
        for j in 0..n {
            entries[j * n + j] = g.in_degree(j) as i64;
            for i in g.in_neighbors(j).iter() {
                entries[j * n + i] = -1;
            }
        }
        Laplacian { n, entries }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    #[inline]
    pub fn row(&self, j: usize) -> &[i64] {
        &self.entries[j * self.n..(j + 1) * self.n]
    }

    /// `L σ(s)`.
    pub fn apply(&self, s: &VertexSubset) -> Vec<i64> {
        (0..self.n).map(|j| s.iter().map(|k| self.get(j, k)).sum()).collect()
    }

    /// `L x` for an integer vector.
    pub fn apply_vec(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|j| self.row(j).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `max_j L_j σ(s)`, which equals the reachability of a nonempty `s`.
    pub fn max_row_product(&self, s: &VertexSubset) -> i64 {
        self.apply(s).into_iter().max().unwrap_or(0)
    }

    /// `‖L σ(s)‖∞`.
    pub fn inf_norm_product(&self, s: &VertexSubset) -> i64 {
        self.apply(s).into_iter().map(i64::abs).max().unwrap_or(0)
    }

    /// Minimum diagonal entry, i.e. the minimum in-degree.
    pub fn min_diagonal(&self) -> i64 {
        (0..self.n).map(|j| self.get(j, j)).min().unwrap_or(0)
    }
}

impl fmt::Debug for Laplacian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = (0..self.n).map(|j| self.row(j)).collect();
        f.debug_struct("Laplacian").field("rows", &rows).finish()
    }
}
