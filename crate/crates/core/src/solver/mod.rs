//! Exact branch-and-bound for [`MilpProblem`].
//!
//! LP relaxations are solved by a dense rational simplex, so pruning never
//! depends on a tolerance and an `Optimal` status carries a zero gap. Before
//! each relaxation the node's integer bounds are tightened by activity-based
//! propagation over every row plus an objective cutoff row derived from the
//! incumbent.
//!
//! The search is single-threaded; `nodes_explored` is reproducible for a
//! fixed problem and configuration.

mod bnb;
mod propagate;
mod rational;
mod simplex;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::model::{MilpProblem, ModelError};
pub use rational::Rational;
use simplex::{LpStatus, Tableau};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveConfig {
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
    /// Must lie in `(0, 0.5)`. Arithmetic is exact, so integrality is
    /// always tested exactly; the value is validated and recorded only.
    pub integrality_tolerance: f64,
    pub node_limit: Option<u64>,
    pub deterministic: bool,
    /// Seed for randomised heuristics; the current heuristics are all
    /// deterministic.
    pub rng_seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            time_limit: None,
            integrality_tolerance: 1e-9,
            node_limit: None,
            deterministic: true,
            rng_seed: 0,
        }
    }
}

impl SolveConfig {
    pub fn with_time_limit(mut self, seconds: f64) -> Self {
        self.time_limit = Some(seconds);
        self
    }

    pub fn with_node_limit(mut self, nodes: u64) -> Self {
        self.node_limit = Some(nodes);
        self
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if !(self.integrality_tolerance > 0.0 && self.integrality_tolerance < 0.5) {
            return Err(SolveError::InvalidConfig(format!(
                "integrality_tolerance must lie in (0, 0.5), got {}",
                self.integrality_tolerance
            )));
        }
        if let Some(t) = self.time_limit {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(SolveError::InvalidConfig(format!(
                    "time_limit must be finite and nonnegative, got {t}"
                )));
            }
        }
        Ok(())
    }

    fn deadline(&self, start: Instant) -> Option<Instant> {
        self.time_limit.map(|t| start + std::time::Duration::from_secs_f64(t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    TimeLimit,
    NodeLimit,
    /// The relaxation is unbounded; none of the robustness models can be.
    Unbounded,
    /// The observer returned an error.
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub incumbent_value: Option<Rational>,
    pub incumbent_point: Option<Vec<Rational>>,
    /// Proven lower bound on the minimum; `None` before the root relaxation
    /// is solved and for infeasible problems.
    pub best_bound: Option<Rational>,
    pub nodes_explored: u64,
    pub lp_pivots: u64,
    pub elapsed_seconds: f64,
    pub abort_reason: Option<String>,
}

impl SolveResult {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Snapshot passed to the observer of [`solve_anytime`].
#[derive(Debug, Clone, PartialEq)]
pub struct Progress {
    pub best_bound: Option<Rational>,
    pub incumbent_value: Option<Rational>,
    pub nodes_explored: u64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("malformed problem: {0}")]
    Model(#[from] ModelError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub fn solve(p: &MilpProblem, cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    solve_anytime(p, cfg, |_| Ok(()))
}

/// Like [`solve`], reporting every bound or incumbent improvement.
///
/// Reported bounds never decrease and incumbents never increase; the last
/// report matches the returned result. An `Err` from the observer stops
/// the search with [`SolveStatus::Aborted`].
pub fn solve_anytime<F>(p: &MilpProblem, cfg: &SolveConfig, mut observer: F) -> Result<SolveResult, SolveError>
where
    F: FnMut(&Progress) -> Result<(), String>,
{
    p.validate()?;
    cfg.validate()?;
    Ok(bnb::search(p, cfg, &mut observer))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpRelaxStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpRelaxation {
    pub status: LpRelaxStatus,
    pub value: Option<Rational>,
    pub point: Option<Vec<Rational>>,
}

/// Solves the continuous relaxation exactly.
pub fn lp_relax(p: &MilpProblem) -> Result<LpRelaxation, SolveError> {
    p.validate()?;
    let lo: Vec<_> = p.vars.iter().map(|v| v.lower).collect();
    let up: Vec<_> = p.vars.iter().map(|v| v.upper).collect();
    let mut tab = Tableau::new(p, &lo, &up);
    let relax = match tab.solve(None) {
        LpStatus::Optimal => LpRelaxation {
            status: LpRelaxStatus::Optimal,
            value: Some(tab.objective()),
            point: Some(tab.point()),
        },
        LpStatus::Infeasible => LpRelaxation {
            status: LpRelaxStatus::Infeasible,
            value: None,
            point: None,
        },
        LpStatus::Unbounded => LpRelaxation {
            status: LpRelaxStatus::Unbounded,
            value: None,
            point: None,
        },
        LpStatus::Interrupted => unreachable!("no deadline was set"),
    };
    Ok(relax)
}
