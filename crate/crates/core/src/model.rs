//! Mixed-integer programs built from a graph Laplacian.
//!
//! Four models are provided, all minimisations with integer coefficients:
//!
//! * [`build_rmax_milp`]: optimal value is `r_max`, over two disjoint
//!   nonempty indicator vectors `b¹`, `b²`.
//! * [`build_sbarmin_milp`]: optimal value is `s̄_min(r)`, the least `s`
//!   for which the graph is not `(r, s)`-robust; infeasible exactly when
//!   `s̄_min(r) = n + 1`.
//! * [`build_lower_bound_milp`]: a lower bound on `r_max` over single
//!   subsets of size at most `⌊n/2⌋`.
//! * [`build_upper_bound_milp`]: an upper bound on `r_max` over
//!   bipartitions, using `‖L b‖∞`.
//!
//! Column order is fixed: the objective variable (`t` or `s̄`) first, then
//! `b¹`, `b²`, `y¹`, `y²` as present. [`ModelMeta`] records the slices.

use std::fmt::Write as _;
use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Laplacian, VertexSubset};
use crate::solver::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("the models need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("r must be at least 1 for the s̄ model, got {0}")]
    InvalidR(usize),
    #[error("constraint {row} references variable {index}, but only {count} are declared")]
    DanglingVariable { row: usize, index: usize, count: usize },
    #[error("objective references variable {index}, but only {count} are declared")]
    DanglingObjective { index: usize, count: usize },
    #[error("variable {0} has lower bound above upper bound")]
    EmptyDomain(String),
    #[error("binary variable {0} must have bounds [0, 1]")]
    BinaryBounds(String),
    #[error("point has {got} entries, problem has {expected} variables")]
    PointLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VarKind {
    Continuous,
    Integer,
    Binary,
}

impl VarKind {
    pub fn is_integral(self) -> bool {
        !matches!(self, VarKind::Continuous)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// `Σ coeffs · x  (relation)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// A minimisation problem with linear constraints over continuous, bounded
/// integer and binary variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MilpProblem {
    pub name: String,
    pub vars: Vec<Variable>,
    pub objective: Vec<(usize, i64)>,
    pub constraints: Vec<Constraint>,
    /// Every integer-feasible point has an integral objective value, which
    /// lets the solver round node bounds up.
    pub integral_objective: bool,
}

impl MilpProblem {
    pub fn new(name: impl Into<String>) -> Self {
        MilpProblem {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lower: Option<i64>, upper: Option<i64>) -> usize {
        let (lower, upper) = match kind {
            VarKind::Binary => (Some(0), Some(1)),
            _ => (lower, upper),
        };
        self.vars.push(Variable {
            name: name.into(),
            kind,
            lower,
            upper,
        });
        self.vars.len() - 1
    }

    pub fn add_constraint(&mut self, name: impl Into<String>, coeffs: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        let coeffs = coeffs.into_iter().filter(|&(_, c)| c != 0).collect();
        self.constraints.push(Constraint {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_continuous(&self) -> usize {
        self.count(VarKind::Continuous)
    }

    pub fn num_integer(&self) -> usize {
        self.count(VarKind::Integer)
    }

    pub fn num_binary(&self) -> usize {
        self.count(VarKind::Binary)
    }

    fn count(&self, kind: VarKind) -> usize {
        self.vars.iter().filter(|v| v.kind == kind).count()
    }

    /// Structural checks: every index in range and every domain nonempty.
    pub fn validate(&self) -> Result<(), ModelError> {
        let count = self.vars.len();
        for (row, c) in self.constraints.iter().enumerate() {
            if let Some(&(index, _)) = c.coeffs.iter().find(|(i, _)| *i >= count) {
                return Err(ModelError::DanglingVariable { row, index, count });
            }
        }
        if let Some(&(index, _)) = self.objective.iter().find(|(i, _)| *i >= count) {
            return Err(ModelError::DanglingObjective { index, count });
        }
        for v in &self.vars {
            if let (Some(l), Some(u)) = (v.lower, v.upper) {
                if l > u {
                    return Err(ModelError::EmptyDomain(v.name.clone()));
                }
            }
            if v.kind == VarKind::Binary && (v.lower != Some(0) || v.upper != Some(1)) {
                return Err(ModelError::BinaryBounds(v.name.clone()));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .fold(Rational::ZERO, |acc, &(j, c)| &acc + &(&x[j] * &Rational::from_int(c)))
    }

    /// Exact feasibility check of a point: bounds, integrality, every row.
    pub fn check_point(&self, x: &[Rational]) -> Result<bool, ModelError> {
        if x.len() != self.vars.len() {
            return Err(ModelError::PointLength {
                got: x.len(),
                expected: self.vars.len(),
            });
        }
        for (v, val) in self.vars.iter().zip(x) {
            if v.kind.is_integral() && !val.is_integer() {
                return Ok(false);
            }
            if v.lower.is_some_and(|l| *val < Rational::from_int(l))
                || v.upper.is_some_and(|u| *val > Rational::from_int(u))
            {
                return Ok(false);
            }
        }
        for c in &self.constraints {
            let lhs = c
                .coeffs
                .iter()
                .fold(Rational::ZERO, |acc, &(j, a)| &acc + &(&x[j] * &Rational::from_int(a)));
            let rhs = Rational::from_int(c.rhs);
            let ok = match c.relation {
                Relation::Le => lhs <= rhs,
                Relation::Ge => lhs >= rhs,
                Relation::Eq => lhs == rhs,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Renders the problem in CPLEX LP text format.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ {}", self.name);
        out.push_str("Minimize\n obj:");
        write_expr(&mut out, &self.objective, &self.vars);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}:", c.name);
            write_expr(&mut out, &c.coeffs, &self.vars);
            let _ = writeln!(out, " {} {}", c.relation.symbol(), c.rhs);
        }
        out.push_str("Bounds\n");
        for v in self.vars.iter().filter(|v| v.kind != VarKind::Binary) {
            match (v.lower, v.upper) {
                (Some(l), Some(u)) => {
                    let _ = writeln!(out, " {l} <= {} <= {u}", v.name);
                }
                (Some(l), None) => {
                    let _ = writeln!(out, " {} >= {l}", v.name);
                }
                (None, Some(u)) => {
                    let _ = writeln!(out, " -inf <= {} <= {u}", v.name);
                }
                (None, None) => {
                    let _ = writeln!(out, " {} free", v.name);
                }
            }
        }
        for (header, kind) in [("Generals", VarKind::Integer), ("Binaries", VarKind::Binary)] {
            let names: Vec<&str> = self
                .vars
                .iter()
                .filter(|v| v.kind == kind)
                .map(|v| v.name.as_str())
                .collect();
            if !names.is_empty() {
                let _ = writeln!(out, "{header}\n {}", names.join(" "));
            }
        }
        out.push_str("End\n");
        out
    }
}

fn write_expr(out: &mut String, coeffs: &[(usize, i64)], vars: &[Variable]) {
    if coeffs.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (k, &(j, c)) in coeffs.iter().enumerate() {
        let sign = match (k, c < 0) {
            (_, true) => " -",
            (0, false) => "",
            (_, false) => " +",
        };
        let mag = c.unsigned_abs();
        if mag == 1 {
            let _ = write!(out, "{sign} {}", vars[j].name);
        } else {
            let _ = write!(out, "{sign} {mag} {}", vars[j].name);
        }
    }
}

/// Which of the four models a problem is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    RMax,
    SBarMin { r: usize },
    LowerBound,
    UpperBound,
}

/// Big-M coefficient on `y` in the `s̄` model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BigM {
    /// `M = n`.
    #[default]
    VertexCount,
    /// `M = max in-degree`, the smallest value that still lets `y_j = 1`
    /// switch off row `j`.
    MaxInDegree,
}

/// Column layout of a built model, used to decode solver points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMeta {
    pub kind: ModelKind,
    pub n: usize,
    /// `t` or `s̄`.
    pub objective_var: usize,
    pub b1: Range<usize>,
    pub b2: Option<Range<usize>>,
    pub y1: Option<Range<usize>>,
    pub y2: Option<Range<usize>>,
}

impl ModelMeta {
    /// All column slices in order; together they cover `0..num_vars`.
    pub fn slices(&self) -> Vec<Range<usize>> {
        let mut out = vec![self.objective_var..self.objective_var + 1, self.b1.clone()];
        out.extend([&self.b2, &self.y1, &self.y2].into_iter().flatten().cloned());
        out
    }

    fn subset(&self, x: &[Rational], cols: &Range<usize>) -> Option<VertexSubset> {
        let bits: Option<Vec<u8>> = x[cols.clone()]
            .iter()
            .map(|v| match v.to_i64() {
                Some(0) => Some(0),
                Some(1) => Some(1),
                _ => None,
            })
            .collect();
        VertexSubset::from_indicator(&bits?).ok()
    }

    /// The subset encoded by `b¹`, if the entries are 0/1.
    pub fn decode_b1(&self, x: &[Rational]) -> Option<VertexSubset> {
        self.subset(x, &self.b1)
    }

    /// The subset encoded by `b²`; for the upper-bound model, the complement
    /// of `b¹`.
    pub fn decode_b2(&self, x: &[Rational]) -> Option<VertexSubset> {
        match (&self.b2, self.kind) {
            (Some(cols), _) => self.subset(x, cols),
            (None, ModelKind::UpperBound) => self.decode_b1(x).map(|s| s.complement()),
            (None, _) => None,
        }
    }
}

fn check_order(l: &Laplacian) -> Result<usize, ModelError> {
    match l.n() {
        n if n < 2 => Err(ModelError::TooFewVertices(n)),
        n => Ok(n),
    }
}

fn add_binaries(p: &mut MilpProblem, prefix: &str, n: usize) -> Range<usize> {
    let start = p.num_vars();
    for j in 1..=n {
        p.add_var(format!("{prefix}_{j}"), VarKind::Binary, Some(0), Some(1));
    }
    start..p.num_vars()
}

fn ones(cols: &Range<usize>, coef: i64) -> Vec<(usize, i64)> {
    cols.clone().map(|j| (j, coef)).collect()
}

/// `L_j · b` over the columns in `cols`.
fn laplacian_row(l: &Laplacian, j: usize, cols: &Range<usize>) -> Vec<(usize, i64)> {
    l.row(j)
        .iter()
        .zip(cols.clone())
        .filter(|(c, _)| **c != 0)
        .map(|(&c, col)| (col, c))
        .collect()
}

/// Two-sided cardinality `lo ≤ 1ᵀb ≤ hi`, as two rows.
fn cardinality(p: &mut MilpProblem, name: &str, cols: &Range<usize>, lo: i64, hi: i64) {
    p.add_constraint(format!("{name}_min"), ones(cols, 1), Relation::Ge, lo);
    p.add_constraint(format!("{name}_max"), ones(cols, 1), Relation::Le, hi);
}

/// `min t` subject to `[L 0; 0 L] b ≤ t·1`, `b¹ + b² ≤ 1`,
/// `1 ≤ 1ᵀb¹ ≤ n−1`, `1 ≤ 1ᵀb² ≤ n−1`, `b` binary, `t ≥ 0`.
pub fn build_rmax_milp(l: &Laplacian) -> Result<(MilpProblem, ModelMeta), ModelError> {
    let n = check_order(l)?;
    let mut p = MilpProblem::new("rmax");
    let t = p.add_var("t", VarKind::Continuous, Some(0), None);
    let b1 = add_binaries(&mut p, "b1", n);
    let b2 = add_binaries(&mut p, "b2", n);
    for (tag, cols) in [("reach1", &b1), ("reach2", &b2)] {
        for j in 0..n {
            let mut row = laplacian_row(l, j, cols);
            row.push((t, -1));
            p.add_constraint(format!("{tag}_{}", j + 1), row, Relation::Le, 0);
        }
    }
    for j in 0..n {
        p.add_constraint(
            format!("disjoint_{}", j + 1),
            vec![(b1.start + j, 1), (b2.start + j, 1)],
            Relation::Le,
            1,
        );
    }
    cardinality(&mut p, "card1", &b1, 1, n as i64 - 1);
    cardinality(&mut p, "card2", &b2, 1, n as i64 - 1);
    p.objective = vec![(t, 1)];
    p.integral_objective = true;
    let meta = ModelMeta {
        kind: ModelKind::RMax,
        n,
        objective_var: t,
        b1,
        b2: Some(b2),
        y1: None,
        y2: None,
    };
    Ok((p, meta))
}

/// `min s̄` over `s̄ ∈ [1, n+1]` integer and binary `b¹, b², y¹, y²` with
/// `1ᵀy¹ ≤ 1ᵀb¹ − 1`, `1ᵀy² ≤ 1ᵀb² − 1`, `1ᵀy¹ + 1ᵀy² ≤ s̄ − 1`,
/// `L bᵏ − M yᵏ ≤ (r−1)·1`, `b¹ + b² ≤ 1` and the cardinality rows.
pub fn build_sbarmin_milp(l: &Laplacian, r: usize) -> Result<(MilpProblem, ModelMeta), ModelError> {
    build_sbarmin_milp_with(l, r, BigM::VertexCount)
}

pub fn build_sbarmin_milp_with(l: &Laplacian, r: usize, big_m: BigM) -> Result<(MilpProblem, ModelMeta), ModelError> {
    let n = check_order(l)?;
    if r < 1 {
        return Err(ModelError::InvalidR(r));
    }
    let m = match big_m {
        BigM::VertexCount => n as i64,
        BigM::MaxInDegree => (0..n).map(|j| l.get(j, j)).max().unwrap_or(0),
    };
    let mut p = MilpProblem::new(format!("sbarmin_r{r}"));
    let sbar = p.add_var("sbar", VarKind::Integer, Some(1), Some(n as i64 + 1));
    let b1 = add_binaries(&mut p, "b1", n);
    let b2 = add_binaries(&mut p, "b2", n);
    let y1 = add_binaries(&mut p, "y1", n);
    let y2 = add_binaries(&mut p, "y2", n);

    for (tag, y, b) in [("partial1", &y1, &b1), ("partial2", &y2, &b2)] {
        let mut row = ones(y, 1);
        row.extend(ones(b, -1));
        p.add_constraint(tag, row, Relation::Le, -1);
    }
    let mut row = ones(&y1, 1);
    row.extend(ones(&y2, 1));
    row.push((sbar, -1));
    p.add_constraint("count", row, Relation::Le, -1);

    for (tag, b, y) in [("reach1", &b1, &y1), ("reach2", &b2, &y2)] {
        for j in 0..n {
            let mut row = laplacian_row(l, j, b);
            row.push((y.start + j, -m));
            p.add_constraint(format!("{tag}_{}", j + 1), row, Relation::Le, r as i64 - 1);
        }
    }
    for j in 0..n {
        p.add_constraint(
            format!("disjoint_{}", j + 1),
            vec![(b1.start + j, 1), (b2.start + j, 1)],
            Relation::Le,
            1,
        );
    }
    cardinality(&mut p, "card1", &b1, 1, n as i64 - 1);
    cardinality(&mut p, "card2", &b2, 1, n as i64 - 1);
    p.objective = vec![(sbar, 1)];
    p.integral_objective = true;
    let meta = ModelMeta {
        kind: ModelKind::SBarMin { r },
        n,
        objective_var: sbar,
        b1,
        b2: Some(b2),
        y1: Some(y1),
        y2: Some(y2),
    };
    Ok((p, meta))
}

/// `min t` subject to `L b ≤ t·1`, `1 ≤ 1ᵀb ≤ ⌊n/2⌋`, `b` binary, `t ≥ 0`.
pub fn build_lower_bound_milp(l: &Laplacian) -> Result<(MilpProblem, ModelMeta), ModelError> {
    let n = check_order(l)?;
    let mut p = MilpProblem::new("rmax_lower");
    let t = p.add_var("t", VarKind::Continuous, Some(0), None);
    let b = add_binaries(&mut p, "b", n);
    for j in 0..n {
        let mut row = laplacian_row(l, j, &b);
        row.push((t, -1));
        p.add_constraint(format!("reach_{}", j + 1), row, Relation::Le, 0);
    }
    cardinality(&mut p, "card", &b, 1, (n / 2) as i64);
    p.objective = vec![(t, 1)];
    p.integral_objective = true;
    let meta = ModelMeta {
        kind: ModelKind::LowerBound,
        n,
        objective_var: t,
        b1: b,
        b2: None,
        y1: None,
        y2: None,
    };
    Ok((p, meta))
}

/// `min t` subject to `−t·1 ≤ L b ≤ t·1`, `1 ≤ 1ᵀb ≤ n−1`, `b` binary.
pub fn build_upper_bound_milp(l: &Laplacian) -> Result<(MilpProblem, ModelMeta), ModelError> {
    let n = check_order(l)?;
    let mut p = MilpProblem::new("rmax_upper");
    let t = p.add_var("t", VarKind::Continuous, Some(0), None);
    let b = add_binaries(&mut p, "b", n);
    for j in 0..n {
        let mut row = laplacian_row(l, j, &b);
        row.push((t, -1));
        p.add_constraint(format!("upper_{}", j + 1), row, Relation::Le, 0);
    }
    for j in 0..n {
        let mut row: Vec<(usize, i64)> = laplacian_row(l, j, &b).into_iter().map(|(c, v)| (c, -v)).collect();
        row.push((t, -1));
        p.add_constraint(format!("lower_{}", j + 1), row, Relation::Le, 0);
    }
    cardinality(&mut p, "card", &b, 1, n as i64 - 1);
    p.objective = vec![(t, 1)];
    p.integral_objective = true;
    let meta = ModelMeta {
        kind: ModelKind::UpperBound,
        n,
        objective_var: t,
        b1: b,
        b2: None,
        y1: None,
        y2: None,
    };
    Ok((p, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_bipartitions, enumerate_pairs};
    use crate::graph::Digraph;

    fn cycle3() -> Digraph {
        Digraph::from_edge_list(3, [(1, 2), (2, 3), (3, 1)]).unwrap()
    }

    fn to_point(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| Rational::from_int(v)).collect()
    }

    /// Minimum objective over all integer points, by brute force over the
    /// binaries and the integer objective variable.
    fn brute_min(p: &MilpProblem, meta: &ModelMeta, t_range: std::ops::RangeInclusive<i64>) -> Option<i64> {
        let nb = p.num_vars() - 1;
        assert!(nb <= 20);
        let mut best: Option<i64> = None;
        for mask in 0u64..(1 << nb) {
            for t in t_range.clone() {
                let mut x = vec![0i64; p.num_vars()];
                x[meta.objective_var] = t;
                for k in 0..nb {
                    x[k + 1] = ((mask >> k) & 1) as i64;
                }
                if p.check_point(&to_point(&x)).unwrap() {
                    best = Some(best.map_or(t, |b| b.min(t)));
                    break;
                }
            }
        }
        best
    }

    #[test]
    fn rmax_dimensions() {
        let l = Digraph::complete(5).unwrap().laplacian();
        let (p, meta) = build_rmax_milp(&l).unwrap();
        assert_eq!(p.num_continuous(), 1);
        assert_eq!(p.num_binary(), 10);
        assert_eq!(p.constraints.len(), 19);
        assert_eq!(meta.slices(), vec![0..1, 1..6, 6..11]);
        p.validate().unwrap();
    }

    #[test]
    fn sbar_dimensions() {
        let l = Digraph::complete(4).unwrap().laplacian();
        let (p, meta) = build_sbarmin_milp(&l, 2).unwrap();
        assert_eq!(p.num_integer(), 1);
        assert_eq!(p.num_binary(), 16);
        assert_eq!(p.num_continuous(), 0);
        assert_eq!(p.constraints.len(), 3 + 2 * 4 + 4 + 4);
        assert_eq!(meta.slices(), vec![0..1, 1..5, 5..9, 9..13, 13..17]);
        assert_eq!(p.vars[0].lower, Some(1));
        assert_eq!(p.vars[0].upper, Some(5));
        p.validate().unwrap();
    }

    #[test]
    fn builders_reject_small_inputs() {
        let l1 = Digraph::edgeless(1).unwrap().laplacian();
        assert_eq!(build_rmax_milp(&l1).unwrap_err(), ModelError::TooFewVertices(1));
        let l = cycle3().laplacian();
        assert_eq!(build_sbarmin_milp(&l, 0).unwrap_err(), ModelError::InvalidR(0));
    }

    #[test]
    fn coefficients_are_bigm_laplacian_or_unit() {
        let g = Digraph::from_edge_list(5, [(1, 2), (2, 3), (3, 1), (4, 1), (5, 4), (1, 5)]).unwrap();
        let l = g.laplacian();
        let n = 5i64;
        let (p, _) = build_sbarmin_milp(&l, 1).unwrap();
        for c in &p.constraints {
            for &(_, a) in &c.coeffs {
                assert!([-n, -1, 1, n].contains(&a) || (0..n).contains(&a), "coefficient {a}");
            }
        }
        let (p, _) = build_sbarmin_milp_with(&l, 1, BigM::MaxInDegree).unwrap();
        assert!(p.constraints.iter().any(|c| c.coeffs.contains(&(16, -2))));
    }

    #[test]
    fn rmax_brute_force_matches_pair_minimum() {
        for g in [cycle3(), Digraph::complete(3).unwrap(), Digraph::edgeless(3).unwrap()] {
            let l = g.laplacian();
            let (p, meta) = build_rmax_milp(&l).unwrap();
            let direct = enumerate_pairs(3)
                .map(|(a, b)| g.reachability(&a).max(g.reachability(&b)) as i64)
                .min();
            assert_eq!(brute_min(&p, &meta, 0..=3), direct);
        }
    }

    #[test]
    fn bound_models_brute_force() {
        let k4 = Digraph::complete(4).unwrap();
        let (p, meta) = build_lower_bound_milp(&k4.laplacian()).unwrap();
        assert_eq!(brute_min(&p, &meta, 0..=4), Some(2));
        let (p, meta) = build_upper_bound_milp(&k4.laplacian()).unwrap();
        assert_eq!(brute_min(&p, &meta, 0..=4), Some(2));

        let e4 = Digraph::edgeless(4).unwrap();
        let (p, meta) = build_lower_bound_milp(&e4.laplacian()).unwrap();
        assert_eq!(brute_min(&p, &meta, 0..=4), Some(0));

        let c3 = cycle3();
        let (p, meta) = build_upper_bound_milp(&c3.laplacian()).unwrap();
        let direct = enumerate_bipartitions(3)
            .map(|(a, _)| c3.laplacian().inf_norm_product(&a))
            .min();
        assert_eq!(brute_min(&p, &meta, 0..=3), direct);
        assert_eq!(direct, Some(1));
    }

    #[test]
    fn decode_points() {
        let l = cycle3().laplacian();
        let (p, meta) = build_rmax_milp(&l).unwrap();
        let x = to_point(&[1, 1, 0, 0, 0, 1, 0]);
        assert!(p.check_point(&x).unwrap());
        assert_eq!(meta.decode_b1(&x).unwrap().to_one_based(), vec![1]);
        assert_eq!(meta.decode_b2(&x).unwrap().to_one_based(), vec![2]);
        assert!(meta.decode_b1(&vec![Rational::new(1, 2); 7]).is_none());

        let (_, meta) = build_upper_bound_milp(&l).unwrap();
        let x = to_point(&[1, 1, 0, 1]);
        assert_eq!(meta.decode_b2(&x).unwrap().to_one_based(), vec![2]);
    }

    #[test]
    fn validate_catches_dangling_indices() {
        let mut p = MilpProblem::new("bad");
        p.add_var("x", VarKind::Binary, None, None);
        p.add_constraint("c", vec![(0, 1), (3, 1)], Relation::Le, 1);
        assert_eq!(
            p.validate(),
            Err(ModelError::DanglingVariable {
                row: 0,
                index: 3,
                count: 1
            })
        );
        let mut p = MilpProblem::new("bad");
        p.add_var("z", VarKind::Integer, Some(3), Some(1));
        assert_eq!(p.validate(), Err(ModelError::EmptyDomain("z".into())));
    }

    #[test]
    fn lp_format_export() {
        let l = cycle3().laplacian();
        let (p, _) = build_sbarmin_milp(&l, 1).unwrap();
        let text = p.to_lp_format();
        assert!(text.starts_with("\\ sbarmin_r1\nMinimize\n obj: sbar\nSubject To\n"));
        assert!(text.contains(" partial1: y1_1 + y1_2 + y1_3 - b1_1 - b1_2 - b1_3 <= -1\n"));
        assert!(text.contains(" reach1_1: b1_1 - b1_3 - 3 y1_1 <= 0\n"));
        assert!(text.contains("Bounds\n 1 <= sbar <= 4\n"));
        assert!(text.contains("Generals\n sbar\n"));
        assert!(text.trim_end().ends_with("End"));
    }
}
