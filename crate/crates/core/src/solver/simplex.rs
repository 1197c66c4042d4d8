//! Bounded-variable simplex on a dense exact tableau.
//!
//! Every row `a·x (≤|=) b` gets a slack column so the all-slack basis is
//! always available. A basis that is dual feasible for the real costs is
//! optimised with the dual simplex; otherwise a zero-cost dual pass finds a
//! primal feasible basis and the primal simplex finishes. After a bound
//! change the tableau stays dual feasible, so branch-and-bound children
//! reoptimise with the dual simplex from their parent's tableau.
//!
//! Pricing is Dantzig-style until a run of degenerate pivots, after which
//! the smallest-index rule takes over for the rest of the solve.

use std::time::Instant;

use super::Rational;
use crate::model::{MilpProblem, Relation};

/// Consecutive degenerate pivots tolerated before switching to the
/// smallest-index rule.
const DEGENERATE_RUN_LIMIT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    Interrupted,
}

#[derive(Clone)]
pub(crate) struct Tableau {
    m: usize,
    n_struct: usize,
    ncols: usize,
    /// Row-major `B⁻¹ [A I]`.
    t: Vec<Rational>,
    d: Vec<Rational>,
    cost: Vec<Rational>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    x: Vec<Rational>,
    basis: Vec<usize>,
    /// Row holding each basic column, `NONBASIC` otherwise.
    row_of: Vec<usize>,
    dual_ready: bool,
    bland: bool,
    degenerate_run: usize,
    pub(crate) pivots: u64,
}

const NONBASIC: usize = usize::MAX;

fn opt_rat(v: Option<i64>) -> Option<Rational> {
    v.map(Rational::from_int)
}

impl Tableau {
    /// Builds the all-slack tableau of `p` with the given structural bounds.
    pub(crate) fn new(p: &MilpProblem, lower: &[Option<i64>], upper: &[Option<i64>]) -> Tableau {
        let n_struct = p.num_vars();
        let m = p.constraints.len();
        let ncols = n_struct + m;
        let mut t = vec![Rational::ZERO; m * ncols];
        let mut lo: Vec<Option<Rational>> = lower.iter().map(|&v| opt_rat(v)).collect();
        let mut up: Vec<Option<Rational>> = upper.iter().map(|&v| opt_rat(v)).collect();
        let mut rhs = Vec::with_capacity(m);
        for (i, c) in p.constraints.iter().enumerate() {
            let sign = if c.relation == Relation::Ge { -1 } else { 1 };
            for &(j, a) in &c.coeffs {
                let cell = &mut t[i * ncols + j];
                *cell = &*cell + &Rational::from_int(sign * a);
            }
            t[i * ncols + n_struct + i] = Rational::ONE;
            rhs.push(Rational::from_int(sign * c.rhs));
            lo.push(Some(Rational::ZERO));
            up.push(if c.relation == Relation::Eq {
                Some(Rational::ZERO)
            } else {
                None
            });
        }

        let mut cost = vec![Rational::ZERO; ncols];
        for &(j, c) in &p.objective {
            cost[j] = &cost[j] + &Rational::from_int(c);
        }

        let mut dual_ready = true;
        let mut x = vec![Rational::ZERO; ncols];
        for j in 0..n_struct {
            let (l, u) = (&lo[j], &up[j]);
            let preferred = if cost[j].is_positive() {
                l
            } else if cost[j].is_negative() {
                u
            } else if l.is_some() {
                l
            } else {
                u
            };
            x[j] = match (preferred, l, u) {
                (Some(v), _, _) => v.clone(),
                (None, Some(v), _) | (None, None, Some(v)) => {
                    dual_ready = false;
                    v.clone()
                }
                (None, None, None) => {
                    if !cost[j].is_zero() {
                        dual_ready = false;
                    }
                    Rational::ZERO
                }
            };
        }
        for (i, r) in rhs.iter().enumerate() {
            let row = &t[i * ncols..i * ncols + n_struct];
            let mut v = r.clone();
            for (a, xj) in row.iter().zip(&x[..n_struct]) {
                if !a.is_zero() && !xj.is_zero() {
                    v = &v - &(a * xj);
                }
            }
            x[n_struct + i] = v;
        }

        let basis: Vec<usize> = (n_struct..ncols).collect();
        let mut row_of = vec![NONBASIC; ncols];
        for (i, &b) in basis.iter().enumerate() {
            row_of[b] = i;
        }
        let d = cost.clone();
        Tableau {
            m,
            n_struct,
            ncols,
            t,
            d,
            cost,
            lower: lo,
            upper: up,
            x,
            basis,
            row_of,
            dual_ready,
            bland: false,
            degenerate_run: 0,
            pivots: 0,
        }
    }

    pub(crate) fn value(&self, j: usize) -> &Rational {
        &self.x[j]
    }

    pub(crate) fn point(&self) -> Vec<Rational> {
        self.x[..self.n_struct].to_vec()
    }

    pub(crate) fn objective(&self) -> Rational {
        self.cost[..self.n_struct]
            .iter()
            .zip(&self.x)
            .filter(|(c, _)| !c.is_zero())
            .fold(Rational::ZERO, |acc, (c, x)| &acc + &(c * x))
    }

    fn can_increase(&self, j: usize) -> bool {
        self.upper[j].as_ref().is_none_or(|u| self.x[j] < *u)
    }

    fn can_decrease(&self, j: usize) -> bool {
        self.lower[j].as_ref().is_none_or(|l| self.x[j] > *l)
    }

    /// Amount by which basic column `j` violates its bounds, signed:
    /// negative below the lower bound, positive above the upper bound.
    fn violation(&self, j: usize) -> Option<Rational> {
        if let Some(l) = &self.lower[j] {
            if self.x[j] < *l {
                return Some(&self.x[j] - l);
            }
        }
        if let Some(u) = &self.upper[j] {
            if self.x[j] > *u {
                return Some(&self.x[j] - u);
            }
        }
        None
    }

    /// Changes the bounds of structural column `j`, keeping dual
    /// feasibility. Returns `false` when the current basis cannot be reused
    /// and the caller must rebuild the tableau.
    pub(crate) fn set_bounds(&mut self, j: usize, lower: Option<i64>, upper: Option<i64>) -> bool {
        self.lower[j] = opt_rat(lower);
        self.upper[j] = opt_rat(upper);
        if self.row_of[j] != NONBASIC {
            return true;
        }
        let (l, u) = (&self.lower[j], &self.upper[j]);
        let target = if self.d[j].is_positive() {
            l.clone()
        } else if self.d[j].is_negative() {
            u.clone()
        } else if l.as_ref() == Some(&self.x[j]) || u.as_ref() == Some(&self.x[j]) {
            Some(self.x[j].clone())
        } else if l.is_some() {
            l.clone()
        } else if u.is_some() {
            u.clone()
        } else {
            Some(self.x[j].clone())
        };
        let Some(target) = target else {
            self.dual_ready = false;
            return false;
        };
        let delta = &target - &self.x[j];
        if !delta.is_zero() {
            self.shift_nonbasic(j, &delta);
        }
        true
    }

    /// Moves nonbasic column `j` by `delta`, updating the basic values.
    fn shift_nonbasic(&mut self, j: usize, delta: &Rational) {
        for i in 0..self.m {
            let a = &self.t[i * self.ncols + j];
            if !a.is_zero() {
                let b = self.basis[i];
                self.x[b] = &self.x[b] - &(a * delta);
            }
        }
        self.x[j] = &self.x[j] + delta;
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let nc = self.ncols;
        let inv = self.t[r * nc + q].recip();
        let mut prow: Vec<(usize, Rational)> = Vec::new();
        for j in 0..nc {
            let cell = &mut self.t[r * nc + j];
            if !cell.is_zero() {
                *cell = &*cell * &inv;
                prow.push((j, cell.clone()));
            }
        }
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * nc + q].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.t[i * nc..(i + 1) * nc];
            for (j, v) in &prow {
                row[*j] = &row[*j] - &(&f * v);
            }
        }
        let f = self.d[q].clone();
        if !f.is_zero() {
            for (j, v) in &prow {
                self.d[*j] = &self.d[*j] - &(&f * v);
            }
        }
        let leaving = self.basis[r];
        self.row_of[leaving] = NONBASIC;
        self.row_of[q] = r;
        self.basis[r] = q;
        self.pivots += 1;
    }

    fn note_progress(&mut self, degenerate: bool) {
        if degenerate {
            self.degenerate_run += 1;
            if self.degenerate_run > DEGENERATE_RUN_LIMIT {
                self.bland = true;
            }
        } else {
            self.degenerate_run = 0;
        }
    }

    fn out_of_time(&self, deadline: Option<Instant>) -> bool {
        self.pivots & 15 == 0 && deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Optimises from the current basis.
    pub(crate) fn solve(&mut self, deadline: Option<Instant>) -> LpStatus {
        self.bland = false;
        self.degenerate_run = 0;
        if self.dual_ready {
            return self.dual(deadline);
        }
        self.d = vec![Rational::ZERO; self.ncols];
        match self.dual(deadline) {
            LpStatus::Optimal => {}
            other => return other,
        }
        self.reprice();
        self.bland = false;
        self.degenerate_run = 0;
        let status = self.primal(deadline);
        self.dual_ready = status == LpStatus::Optimal;
        status
    }

    fn reprice(&mut self) {
        let nc = self.ncols;
        let mut d = self.cost.clone();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &self.cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                let a = &self.t[i * nc + j];
                if !a.is_zero() {
                    *dj = &*dj - &(cb * a);
                }
            }
        }
        self.d = d;
    }

    fn dual(&mut self, deadline: Option<Instant>) -> LpStatus {
        let nc = self.ncols;
        loop {
            if self.out_of_time(deadline) {
                return LpStatus::Interrupted;
            }
            // leaving row
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.m {
                let b = self.basis[r];
                let Some(v) = self.violation(b) else { continue };
                let better = match &leave {
                    None => true,
                    Some((lr, _)) if self.bland => b < self.basis[*lr],
                    Some((_, lv)) => v.abs() > lv.abs(),
                };
                if better {
                    leave = Some((r, v));
                }
            }
            let Some((r, viol)) = leave else {
                return LpStatus::Optimal;
            };
            let p = self.basis[r];
            let raise = viol.is_negative();

            // entering column by the dual ratio test
            let mut enter: Option<(usize, Rational)> = None;
            for j in 0..nc {
                if self.row_of[j] != NONBASIC {
                    continue;
                }
                let a = &self.t[r * nc + j];
                if a.is_zero() {
                    continue;
                }
                // raising x_p needs x_j to move against the sign of a
                let ok = if raise == a.is_negative() {
                    self.can_increase(j)
                } else {
                    self.can_decrease(j)
                };
                if !ok {
                    continue;
                }
                let ratio = &self.d[j].abs() / &a.abs();
                if enter.as_ref().is_none_or(|(_, best)| ratio < *best) {
                    enter = Some((j, ratio));
                }
            }
            let Some((q, ratio)) = enter else {
                return LpStatus::Infeasible;
            };

            let target = if raise {
                self.lower[p].clone().expect("violated lower bound exists")
            } else {
                self.upper[p].clone().expect("violated upper bound exists")
            };
            let alpha = self.t[r * nc + q].clone();
            let theta = &(&self.x[p] - &target) / &alpha;
            self.shift_nonbasic(q, &theta);
            self.x[p] = target;
            self.pivot(r, q);
            self.note_progress(ratio.is_zero());
        }
    }

    fn primal(&mut self, deadline: Option<Instant>) -> LpStatus {
        let nc = self.ncols;
        loop {
            if self.out_of_time(deadline) {
                return LpStatus::Interrupted;
            }
            let mut enter: Option<(usize, Rational)> = None;
            for j in 0..nc {
                if self.row_of[j] != NONBASIC || self.d[j].is_zero() {
                    continue;
                }
                let ok = if self.d[j].is_negative() {
                    self.can_increase(j)
                } else {
                    self.can_decrease(j)
                };
                if !ok {
                    continue;
                }
                if self.bland {
                    enter = Some((j, Rational::ZERO));
                    break;
                }
                let mag = self.d[j].abs();
                if enter.as_ref().is_none_or(|(_, best)| mag > *best) {
                    enter = Some((j, mag));
                }
            }
            let Some((q, _)) = enter else {
                return LpStatus::Optimal;
            };
            let up = self.d[q].is_negative();

            // ratio test; `None` row means a bound flip of the entering column
            let mut step: Option<Rational> = match (&self.lower[q], &self.upper[q]) {
                (Some(l), Some(u)) => Some(u - l),
                _ => None,
            };
            let mut leave: Option<(usize, bool)> = None;
            for i in 0..self.m {
                let a = &self.t[i * nc + q];
                if a.is_zero() {
                    continue;
                }
                let b = self.basis[i];
                // x_b moves at rate -a per unit of x_q; flip for a decrease
                let falls = a.is_positive() == up;
                let room = if falls {
                    self.lower[b].as_ref().map(|l| &self.x[b] - l)
                } else {
                    self.upper[b].as_ref().map(|u| u - &self.x[b])
                };
                let Some(room) = room else { continue };
                let theta = &room / &a.abs();
                let better = match &step {
                    None => true,
                    Some(s) if theta < *s => true,
                    Some(s) if theta == *s => leave.is_some_and(|(li, _)| b < self.basis[li]),
                    _ => false,
                };
                if better {
                    step = Some(theta);
                    leave = Some((i, falls));
                }
            }
            let Some(theta) = step else {
                return LpStatus::Unbounded;
            };
            let delta = if up { theta.clone() } else { -&theta };
            self.shift_nonbasic(q, &delta);
            if let Some((r, falls)) = leave {
                let p = self.basis[r];
                let bound = if falls { &self.lower[p] } else { &self.upper[p] };
                self.x[p] = bound.clone().expect("ratio test uses finite bounds");
                self.pivot(r, q);
            }
            self.note_progress(theta.is_zero());
        }
    }
}
