//! Best-bound-first search with depth-first dives.
//!
//! One tableau is carried through the whole search: moving to another node
//! only changes column bounds, which keeps the basis dual feasible, so every
//! node is reoptimised by the dual simplex. Open nodes are ordered by
//! bound, then depth (deeper first), then creation order (newest first).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::propagate::{tighten_coefficients, Propagator};
use super::simplex::{LpStatus, Tableau};
use super::{Progress, Rational, SolveConfig, SolveResult, SolveStatus};
use crate::model::MilpProblem;

/// Bounds, parent bound and depth of the node a dive continues with.
type Dive = (Vec<Option<i64>>, Vec<Option<i64>>, Rational, usize);

struct OpenNode {
    bound: Rational,
    depth: usize,
    seq: u64,
    lo: Vec<Option<i64>>,
    up: Vec<Option<i64>>,
}

impl PartialEq for OpenNode {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OpenNode {}

impl PartialOrd for OpenNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenNode {
    /// Max-heap order: the node to expand next compares greatest.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(self.seq.cmp(&other.seq))
    }
}

enum Stop {
    Time,
    Nodes,
    Abort(String),
}

struct Search<'a, F> {
    p: &'a MilpProblem,
    cfg: &'a SolveConfig,
    observer: &'a mut F,
    start: Instant,
    deadline: Option<Instant>,
    prop: Propagator,
    integer_cols: Vec<usize>,
    tab: Tableau,
    tab_lo: Vec<Option<i64>>,
    tab_up: Vec<Option<i64>>,
    pivots_retired: u64,
    incumbent: Option<(Rational, Vec<Rational>)>,
    nodes: u64,
    seq: u64,
    reported: (Option<Rational>, Option<Rational>),
}

/// What became of one processed node.
enum Outcome {
    Pruned,
    Branch {
        bound: Rational,
        col: usize,
        value: Rational,
    },
}

pub(crate) fn search<F>(p: &MilpProblem, cfg: &SolveConfig, observer: &mut F) -> SolveResult
where
    F: FnMut(&Progress) -> Result<(), String>,
{
    let start = Instant::now();
    // same integer-feasible set, tighter relaxation
    let tightened = tighten_coefficients(p);
    let p = &tightened;
    let lo: Vec<Option<i64>> = p.vars.iter().map(|v| v.lower).collect();
    let up: Vec<Option<i64>> = p.vars.iter().map(|v| v.upper).collect();
    let mut s = Search {
        p,
        cfg,
        observer,
        start,
        deadline: cfg.deadline(start),
        prop: Propagator::new(p),
        integer_cols: (0..p.num_vars()).filter(|&j| p.vars[j].kind.is_integral()).collect(),
        tab: Tableau::new(p, &lo, &up),
        tab_lo: lo.clone(),
        tab_up: up.clone(),
        pivots_retired: 0,
        incumbent: None,
        nodes: 0,
        seq: 0,
        reported: (None, None),
    };
    s.run(lo, up)
}

impl<F> Search<'_, F>
where
    F: FnMut(&Progress) -> Result<(), String>,
{
    fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    /// Largest objective value still worth finding, for propagation.
    fn cutoff(&self) -> Option<i64> {
        let (v, _) = self.incumbent.as_ref()?;
        if self.p.integral_objective {
            v.ceil_i64().map(|c| c - 1)
        } else {
            None
        }
    }

    /// Rounds a relaxation value to what integer points can achieve.
    fn node_bound(&self, v: Rational) -> Rational {
        if self.p.integral_objective {
            v.ceil_i64().map(Rational::from_int).unwrap_or(v)
        } else {
            v
        }
    }

    fn dominated(&self, bound: &Rational) -> bool {
        self.incumbent.as_ref().is_some_and(|(v, _)| bound >= v)
    }

    fn report(&mut self, bound: Option<Rational>) -> Result<(), Stop> {
        let inc = self.incumbent.as_ref().map(|(v, _)| v.clone());
        let bound = match (bound, &inc) {
            (Some(b), Some(i)) if b > *i => Some(i.clone()),
            (b, _) => b,
        };
        // keep the reported sequence monotone even if a caller-side bound
        // computation ever lagged behind
        let bound = match (&self.reported.0, bound) {
            (Some(prev), Some(b)) if b < *prev => Some(prev.clone()),
            (Some(prev), None) => Some(prev.clone()),
            (_, b) => b,
        };
        if (bound.clone(), inc.clone()) == self.reported {
            return Ok(());
        }
        self.reported = (bound.clone(), inc.clone());
        let progress = Progress {
            best_bound: bound,
            incumbent_value: inc,
            nodes_explored: self.nodes,
            elapsed_seconds: self.elapsed(),
        };
        (self.observer)(&progress).map_err(Stop::Abort)
    }

    fn consider(&mut self, value: Rational, point: Vec<Rational>) -> bool {
        if self.dominated(&value) {
            return false;
        }
        debug_assert!(self.p.check_point(&point).unwrap_or(false));
        self.incumbent = Some((value, point));
        true
    }

    fn load_bounds(&mut self, lo: &[Option<i64>], up: &[Option<i64>]) {
        let mut rebuild = false;
        for j in 0..lo.len() {
            let moved = lo[j] != self.tab_lo[j] || up[j] != self.tab_up[j];
            if moved && !self.tab.set_bounds(j, lo[j], up[j]) {
                rebuild = true;
                break;
            }
        }
        if rebuild {
            self.pivots_retired += self.tab.pivots;
            self.tab = Tableau::new(self.p, lo, up);
        }
        self.tab_lo.copy_from_slice(lo);
        self.tab_up.copy_from_slice(up);
    }

    /// Rounds the relaxation point at one half and keeps it if the rounded
    /// integer part extends to an exactly feasible point.
    fn round_point(&mut self, lo: &[Option<i64>], up: &[Option<i64>]) {
        let mut rlo = lo.to_vec();
        let mut rup = up.to_vec();
        for &j in &self.integer_cols {
            let v = self.tab.value(j);
            let fl = v.floor_i64();
            let r = if v.fract() >= Rational::new(1, 2) {
                fl.map(|f| f + 1)
            } else {
                fl
            };
            let Some(r) = r else { return };
            rlo[j] = Some(r);
            rup[j] = Some(r);
        }
        if !self.prop.run(&mut rlo, &mut rup, self.cutoff()) {
            return;
        }
        let mut point = Vec::with_capacity(self.p.num_vars());
        for j in 0..self.p.num_vars() {
            let cost: i64 = self.p.objective.iter().filter(|(k, _)| *k == j).map(|(_, c)| c).sum();
            let pick = if cost >= 0 {
                rlo[j].or(rup[j])
            } else {
                rup[j].or(rlo[j])
            };
            let Some(v) = pick else { return };
            point.push(Rational::from_int(v));
        }
        if self.p.check_point(&point).unwrap_or(false) {
            let value = self.p.objective_value(&point);
            self.consider(value, point);
        }
    }

    fn process(&mut self, lo: &mut [Option<i64>], up: &mut [Option<i64>]) -> Result<Outcome, Stop> {
        if !self.prop.run(lo, up, self.cutoff()) {
            return Ok(Outcome::Pruned);
        }
        self.load_bounds(lo, up);
        match self.tab.solve(self.deadline) {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => return Ok(Outcome::Pruned),
            LpStatus::Interrupted => return Err(Stop::Time),
            LpStatus::Unbounded => unreachable!("handled at the root"),
        }
        let bound = self.node_bound(self.tab.objective());
        if self.dominated(&bound) {
            return Ok(Outcome::Pruned);
        }

        // most fractional integer column, lowest index on ties
        let half = Rational::new(1, 2);
        let mut pick: Option<(usize, Rational)> = None;
        for &j in &self.integer_cols {
            let f = self.tab.value(j).fract();
            if f.is_zero() {
                continue;
            }
            let dist = (&f - &half).abs();
            if pick.as_ref().is_none_or(|(_, d)| dist < *d) {
                pick = Some((j, dist));
            }
        }
        let Some((col, _)) = pick else {
            let value = self.tab.objective();
            let point = self.tab.point();
            self.consider(value, point);
            return Ok(Outcome::Pruned);
        };
        self.round_point(lo, up);
        if self.dominated(&bound) {
            return Ok(Outcome::Pruned);
        }
        Ok(Outcome::Branch {
            bound,
            col,
            value: self.tab.value(col).clone(),
        })
    }

    fn check_limits(&self) -> Result<(), Stop> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Stop::Time);
        }
        if self.cfg.node_limit.is_some_and(|n| self.nodes >= n) {
            return Err(Stop::Nodes);
        }
        Ok(())
    }

    fn run(&mut self, root_lo: Vec<Option<i64>>, root_up: Vec<Option<i64>>) -> SolveResult {
        // the root relaxation decides boundedness before any branching
        match self.tab.solve(self.deadline) {
            LpStatus::Unbounded => return self.finish(SolveStatus::Unbounded, None, None),
            LpStatus::Interrupted => return self.finish(SolveStatus::TimeLimit, None, None),
            LpStatus::Infeasible | LpStatus::Optimal => {}
        }

        let mut open: BinaryHeap<OpenNode> = BinaryHeap::new();
        let mut dive: Option<Dive> = Some((root_lo, root_up, Rational::from_int(i64::MIN), 0));
        let mut root_bound: Option<Rational> = None;
        loop {
            let (mut lo, mut up, parent_bound, depth) = match dive.take() {
                Some(d) => d,
                None => match open.pop() {
                    Some(n) if self.dominated(&n.bound) => continue,
                    Some(n) => (n.lo, n.up, n.bound, n.depth),
                    None => break,
                },
            };
            let open_min = |open: &BinaryHeap<OpenNode>, extra: Option<&Rational>| -> Option<Rational> {
                let top = open.peek().map(|n| n.bound.clone());
                match (top, extra) {
                    (Some(a), Some(b)) => Some(a.min(b.clone())),
                    (a, b) => a.or_else(|| b.cloned()),
                }
            };
            let known = |b: &Rational| root_bound.as_ref().map(|_| b.clone());
            if let Err(stop) = self.check_limits() {
                let b = open_min(&open, Some(&parent_bound)).and_then(|b| known(&b));
                return self.stopped(stop, b);
            }
            self.nodes += 1;
            let outcome = match self.process(&mut lo, &mut up) {
                Ok(o) => o,
                Err(stop) => {
                    let b = open_min(&open, Some(&parent_bound)).and_then(|b| known(&b));
                    return self.stopped(stop, b);
                }
            };
            let next_bound = match outcome {
                Outcome::Pruned => open_min(&open, None),
                Outcome::Branch { bound, col, value } => {
                    if root_bound.is_none() {
                        root_bound = Some(bound.clone());
                    }
                    let fl = value.floor_i64().expect("branching value fits i64");
                    let mut down_up = up.clone();
                    down_up[col] = Some(fl);
                    let mut up_lo = lo.clone();
                    up_lo[col] = Some(fl + 1);
                    let (first, second) = if value.fract() >= Rational::new(1, 2) {
                        ((up_lo, up.clone()), (lo, down_up))
                    } else {
                        ((lo.clone(), down_up), (up_lo, up))
                    };
                    self.seq += 1;
                    open.push(OpenNode {
                        bound: bound.clone(),
                        depth: depth + 1,
                        seq: self.seq,
                        lo: second.0,
                        up: second.1,
                    });
                    dive = Some((first.0, first.1, bound.clone(), depth + 1));
                    open_min(&open, Some(&bound))
                }
            };
            if root_bound.is_none() {
                // the root closed without branching
                root_bound = Some(parent_bound.clone());
            }
            if let Err(stop) = self.report(next_bound) {
                return self.stopped(stop, None);
            }
        }
        match self.incumbent.as_ref().map(|(v, _)| v.clone()) {
            Some(v) => self.finish(SolveStatus::Optimal, Some(v), None),
            None => self.finish(SolveStatus::Infeasible, None, None),
        }
    }

    fn stopped(&mut self, stop: Stop, bound: Option<Rational>) -> SolveResult {
        let (status, reason) = match stop {
            Stop::Time => (SolveStatus::TimeLimit, None),
            Stop::Nodes => (SolveStatus::NodeLimit, None),
            Stop::Abort(msg) => (SolveStatus::Aborted, Some(msg)),
        };
        let bound = match (bound, &self.reported.0) {
            (Some(b), Some(prev)) => Some(b.max(prev.clone())),
            (b, prev) => b.or_else(|| prev.clone()),
        };
        let bound = match (bound, &self.incumbent) {
            (Some(b), Some((v, _))) => Some(b.min(v.clone())),
            (b, _) => b,
        };
        self.finish(status, bound, reason)
    }

    fn finish(&mut self, status: SolveStatus, bound: Option<Rational>, abort_reason: Option<String>) -> SolveResult {
        let best_bound = match status {
            SolveStatus::Optimal => bound.or_else(|| self.incumbent.as_ref().map(|(v, _)| v.clone())),
            SolveStatus::Infeasible | SolveStatus::Unbounded => None,
            _ => bound,
        };
        let incumbent_value = self.incumbent.as_ref().map(|(v, _)| v.clone());
        if abort_reason.is_none() && (best_bound.clone(), incumbent_value.clone()) != self.reported {
            let _ = self.report(best_bound.clone());
        }
        SolveResult {
            status,
            incumbent_value,
            incumbent_point: self.incumbent.as_ref().map(|(_, x)| x.clone()),
            best_bound,
            nodes_explored: self.nodes,
            lp_pivots: self.pivots_retired + self.tab.pivots,
            elapsed_seconds: self.elapsed(),
            abort_reason,
        }
    }
}
