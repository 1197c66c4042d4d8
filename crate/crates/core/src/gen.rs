//! Seeded random graph families.
//!
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`) and is
//! consumed in a fixed order, so a `(spec, seed)` pair names one graph:
//!
//! * a Bernoulli(p) draw takes one `u64` and succeeds when
//!   `(u >> 11) · 2⁻⁵³ < p`;
//! * a uniform index below `m` takes `u64`s until one falls under the
//!   largest multiple of `m`, then reduces it modulo `m`;
//! * ER visits unordered pairs `i < j` lexicographically; the random
//!   digraph visits ordered pairs `(i, j)`, `i ≠ j`, row by row;
//! * k-out / k-in visit vertices in ascending order, each running a
//!   partial Fisher–Yates shuffle over the other vertices (ascending).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Each unordered pair becomes a bidirectional edge with probability `p`.
    ErdosRenyi,
    /// Each ordered pair becomes an edge with probability `p`.
    RandomDigraph,
    /// Every vertex sends edges to `k` distinct uniformly chosen vertices.
    KOut,
    /// Every vertex receives edges from `k` distinct uniformly chosen vertices.
    KIn,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::ErdosRenyi, Family::RandomDigraph, Family::KOut, Family::KIn];

    pub fn name(self) -> &'static str {
        match self {
            Family::ErdosRenyi => "er",
            Family::RandomDigraph => "digraph",
            Family::KOut => "kout",
            Family::KIn => "kin",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn uses_k(self) -> bool {
        matches!(self, Family::KOut | Family::KIn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Edge probability; ignored by the k families.
    pub p: f64,
    /// Selections per vertex; ignored by the probability families.
    pub k: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn probability(family: Family, n: usize, p: f64, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            p,
            k: 0,
            seed,
        }
    }

    pub fn degree(family: Family, n: usize, k: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            p: 0.0,
            k,
            seed,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("k must satisfy 1 ≤ k ≤ n − 1, got k = {k} with n = {n}")]
    InvalidK { k: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Stream(ChaCha8Rng);

impl Stream {
    fn new(seed: u64) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed))
    }

    fn bernoulli(&mut self, p: f64) -> bool {
        ((self.0.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }

    fn below(&mut self, m: usize) -> usize {
        let m = m as u64;
        let zone = u64::MAX - u64::MAX % m;
        loop {
            let v = self.0.next_u64();
            if v < zone {
                return (v % m) as usize;
            }
        }
    }

    /// `k` distinct entries of `pool`, by partial Fisher–Yates.
    fn choose(&mut self, mut pool: Vec<usize>, k: usize) -> Vec<usize> {
        for t in 0..k {
            let pick = t + self.below(pool.len() - t);
            pool.swap(t, pick);
        }
        pool.truncate(k);
        pool
    }
}

pub fn generate(spec: &GenSpec) -> Result<Digraph, GenError> {
    let n = spec.n;
    if n == 0 {
        return Err(GraphError::Empty.into());
    }
    let mut rng = Stream::new(spec.seed);
    let mut edges = Vec::new();
    match spec.family {
        Family::ErdosRenyi | Family::RandomDigraph => {
            if !(0.0..=1.0).contains(&spec.p) {
                return Err(GenError::InvalidProbability(spec.p));
            }
            let directed = spec.family == Family::RandomDigraph;
            for i in 0..n {
                let first = if directed { 0 } else { i + 1 };
                for j in (first..n).filter(|&j| j != i) {
                    if rng.bernoulli(spec.p) {
                        edges.push((i, j));
                        if !directed {
                            edges.push((j, i));
                        }
                    }
                }
            }
        }
        Family::KOut | Family::KIn => {
            if spec.k < 1 || spec.k + 1 > n {
                return Err(GenError::InvalidK { k: spec.k, n });
            }
            for i in 0..n {
                let others = (0..n).filter(|&j| j != i).collect();
                for j in rng.choose(others, spec.k) {
                    edges.push(if spec.family == Family::KOut { (i, j) } else { (j, i) });
                }
            }
        }
    }
    Ok(Digraph::from_indexed_edges(n, edges)?)
}

/// A random directed spanning tree rooted at a uniformly chosen vertex:
/// vertices join in a random order, each attaching below a uniformly chosen
/// earlier vertex. Edges point away from the root.
pub fn random_out_tree(n: usize, seed: u64) -> Result<Digraph, GenError> {
    if n == 0 {
        return Err(GraphError::Empty.into());
    }
    let mut rng = Stream::new(seed);
    let order = rng.choose((0..n).collect(), n);
    let edges = (1..n).map(|i| (order[rng.below(i)], order[i]));
    Ok(Digraph::from_indexed_edges(n, edges)?)
}
