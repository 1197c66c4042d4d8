//! Activity-based bound tightening over integer-coefficient rows.

use num_integer::Integer;

use crate::model::{MilpProblem, Relation, VarKind};

/// `Σ a·x ≤ rhs`.
#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<(usize, i64)>,
    rhs: i64,
}

#[derive(Debug, Clone)]
pub(crate) struct Propagator {
    rows: Vec<Row>,
    objective: Vec<(usize, i64)>,
    integral: Vec<bool>,
}

/// Fixpoint passes before giving up on further tightening.
const MAX_PASSES: usize = 64;

impl Propagator {
    pub(crate) fn new(p: &MilpProblem) -> Self {
        let mut rows = Vec::new();
        for c in &p.constraints {
            let negated = || Row {
                coeffs: c.coeffs.iter().map(|&(j, a)| (j, -a)).collect(),
                rhs: -c.rhs,
            };
            let plain = || Row {
                coeffs: c.coeffs.clone(),
                rhs: c.rhs,
            };
            match c.relation {
                Relation::Le => rows.push(plain()),
                Relation::Ge => rows.push(negated()),
                Relation::Eq => {
                    rows.push(plain());
                    rows.push(negated());
                }
            }
        }
        Propagator {
            rows,
            objective: p.objective.clone(),
            integral: p.vars.iter().map(|v| v.kind.is_integral()).collect(),
        }
    }

    /// Tightens `lo`/`up` in place, with the extra row `objective ≤ cutoff`
    /// when given. Returns `false` if the box contains no feasible point.
    pub(crate) fn run(&self, lo: &mut [Option<i64>], up: &mut [Option<i64>], cutoff: Option<i64>) -> bool {
        let cut_row = cutoff.map(|rhs| Row {
            coeffs: self.objective.clone(),
            rhs,
        });
        for _ in 0..MAX_PASSES {
            let mut changed = false;
            for row in self.rows.iter().chain(cut_row.as_ref()) {
                match self.tighten(row, lo, up) {
                    None => return false,
                    Some(c) => changed |= c,
                }
            }
            if !changed {
                break;
            }
        }
        true
    }

    /// One row; `None` on infeasibility, otherwise whether a bound moved.
    fn tighten(&self, row: &Row, lo: &mut [Option<i64>], up: &mut [Option<i64>]) -> Option<bool> {
        let min_term = |j: usize, a: i64, lo: &[Option<i64>], up: &[Option<i64>]| -> Option<i128> {
            let b = if a > 0 { lo[j] } else { up[j] };
            b.map(|v| a as i128 * v as i128)
        };
        let mut finite: i128 = 0;
        let mut unbounded = 0usize;
        for &(j, a) in &row.coeffs {
            match min_term(j, a, lo, up) {
                Some(v) => finite += v,
                None => unbounded += 1,
            }
        }
        let rhs = row.rhs as i128;
        if unbounded == 0 && finite > rhs {
            return None;
        }
        if unbounded > 1 {
            return Some(false);
        }
        let mut changed = false;
        for &(j, a) in &row.coeffs {
            let own = min_term(j, a, lo, up);
            let rest = match (own, unbounded) {
                (Some(v), 0) => finite - v,
                (None, 1) => finite,
                _ => continue,
            };
            let slack = rhs - rest;
            let integral = self.integral[j];
            if a > 0 {
                let q = Integer::div_floor(&slack, &(a as i128));
                if !integral && q * a as i128 != slack {
                    continue;
                }
                let Ok(q) = i64::try_from(q) else { continue };
                if up[j].is_none_or(|u| q < u) {
                    up[j] = Some(q);
                    changed = true;
                }
            } else {
                let q = Integer::div_ceil(&slack, &(a as i128));
                if !integral && q * a as i128 != slack {
                    continue;
                }
                let Ok(q) = i64::try_from(q) else { continue };
                if lo[j].is_none_or(|l| q > l) {
                    lo[j] = Some(q);
                    changed = true;
                }
            }
            if let (Some(l), Some(u)) = (lo[j], up[j]) {
                if l > u {
                    return None;
                }
            }
        }
        Some(changed)
    }
}

/// Shrinks the coefficient of a binary column on the relaxing side of a
/// row to the least value that still switches the row off. The set of
/// integer-feasible points is unchanged; the relaxation gets tighter.
///
/// For `R(x) − M·y ≤ b` with `max R ≤ b + M`, setting `y = 1` only needs
/// `M' = max R − b`.
pub(crate) fn tighten_coefficients(p: &MilpProblem) -> MilpProblem {
    let mut out = p.clone();
    for c in &mut out.constraints {
        let sign: i128 = match c.relation {
            Relation::Le => 1,
            Relation::Ge => -1,
            Relation::Eq => continue,
        };
        let rhs = sign * c.rhs as i128;
        for k in 0..c.coeffs.len() {
            let (col, a) = c.coeffs[k];
            let a = sign * a as i128;
            if a >= 0 || p.vars[col].kind != VarKind::Binary {
                continue;
            }
            let mut max_rest: i128 = 0;
            for (idx, &(j, b)) in c.coeffs.iter().enumerate() {
                if idx == k {
                    continue;
                }
                let b = sign * b as i128;
                let v = &p.vars[j];
                let Some(top) = (if b > 0 { v.upper } else { v.lower }) else {
                    max_rest = i128::MAX;
                    break;
                };
                max_rest += b * top as i128;
            }
            if max_rest == i128::MAX {
                continue;
            }
            let needed = (max_rest - rhs).max(0);
            if needed < -a {
                c.coeffs[k].1 = (-sign * needed) as i64;
            }
        }
        c.coeffs.retain(|&(_, a)| a != 0);
    }
    out
}
