//! End-to-end robustness computations.
//!
//! Each entry point builds the relevant model, solves it, decodes and
//! re-verifies the certificate against direct reachability counts, and
//! maps solver outcomes to robustness values. A stage stopped by a limit
//! yields a bracket instead of a value; stages that need exact inputs
//! refuse to run on a bracket.
//!
//! Conventions kept here rather than in the models: the one-vertex graph is
//! `(1, 1)`, `s_max(0) = n`, and a graph with `r_max = 0` is reported as
//! `(0, n)`.

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{enumerate_bipartitions, enumerate_pairs};
use crate::graph::{Digraph, GraphError, VertexSubset};
use crate::model::{
    build_lower_bound_milp, build_rmax_milp, build_sbarmin_milp, build_upper_bound_milp, MilpProblem, ModelError,
    ModelMeta,
};
use crate::oracle::{self, max_possible_r, RobustnessPair};
use crate::solver::{solve, Rational, SolveConfig, SolveError, SolveResult, SolveStatus};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RobustnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("r = {r} is outside [0, {max}]")]
    ROutOfRange { r: usize, max: usize },
    #[error("{stage} needs an exact input but the previous stage stopped early")]
    NotExact { stage: &'static str },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// An integer known to lie in `[lower, upper]`; exact when they meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Estimate {
    pub lower: usize,
    pub upper: usize,
}

impl Estimate {
    pub fn exact(v: usize) -> Self {
        Estimate { lower: v, upper: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

impl std::fmt::Display for Estimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{}, {}]", self.lower, self.upper),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Milp,
    Exhaustive,
}

/// A pair of subsets, one-based, witnessing a value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

impl Certificate {
    fn new(s1: &VertexSubset, s2: &VertexSubset) -> Self {
        Certificate {
            s1: s1.to_one_based(),
            s2: s2.to_one_based(),
        }
    }
}

/// The solver figures of one stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSummary {
    pub stage: String,
    pub status: SolveStatus,
    pub incumbent_value: Option<Rational>,
    pub best_bound: Option<Rational>,
    pub nodes_explored: u64,
    pub elapsed_seconds: f64,
}

impl StageSummary {
    fn new(stage: impl Into<String>, res: &SolveResult) -> Self {
        StageSummary {
            stage: stage.into(),
            status: res.status,
            incumbent_value: res.incumbent_value.clone(),
            best_bound: res.best_bound.clone(),
            nodes_explored: res.nodes_explored,
            elapsed_seconds: res.elapsed_seconds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RMaxOutcome {
    pub value: Estimate,
    pub certificate: Option<Certificate>,
    pub stage: Option<StageSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SMaxOutcome {
    pub r: usize,
    pub value: Estimate,
    /// A pair that is not `(r, s_max + 1)`-robust, when one exists.
    pub certificate: Option<Certificate>,
    pub stage: Option<StageSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RsOutcome {
    pub r: RMaxOutcome,
    pub s: Estimate,
    pub s_detail: Option<SMaxOutcome>,
    /// `s = n` came from the in-degree test without a solve.
    pub shortcut: bool,
    /// `s = n` is the convention for `r_max = 0` or `n = 1`.
    pub by_convention: bool,
}

impl RsOutcome {
    pub fn pair(&self) -> Option<RobustnessPair> {
        Some(RobustnessPair::new(self.r.value.value()?, self.s.value()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsOutcome {
    pub lower: Estimate,
    pub upper: Estimate,
    pub stages: Vec<StageSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub n: usize,
    pub method: Method,
    pub r_max: Estimate,
    pub s_max_at_r_max: Estimate,
    pub f_max: Option<usize>,
    pub lower_bound_r: Option<Estimate>,
    pub upper_bound_r: Option<Estimate>,
    pub rmax_certificate: Option<Certificate>,
    pub sbar_certificate: Option<Certificate>,
    pub shortcut: bool,
    pub by_convention: bool,
    pub stages: Vec<StageSummary>,
}

/// Which optional quantities [`analyze`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub f_max: bool,
    pub bounds: bool,
}

fn ceil_usize(v: &Rational) -> usize {
    v.ceil_i64().map_or(0, |c| c.max(0) as usize)
}

fn int_value(v: &Rational) -> Result<usize, RobustnessError> {
    v.to_i64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| RobustnessError::Inconsistent(format!("objective value {v} is not a nonnegative integer")))
}

fn run(p: &MilpProblem, cfg: &SolveConfig) -> Result<SolveResult, RobustnessError> {
    let res = solve(p, cfg)?;
    if res.status == SolveStatus::Unbounded {
        return Err(RobustnessError::Inconsistent(format!(
            "{} relaxation is unbounded",
            p.name
        )));
    }
    if let Some(x) = &res.incumbent_point {
        if !p.check_point(x)? {
            return Err(RobustnessError::Inconsistent(format!(
                "{} incumbent violates a row",
                p.name
            )));
        }
    }
    Ok(res)
}

fn decode_pair(meta: &ModelMeta, x: &[Rational]) -> Result<(VertexSubset, VertexSubset), RobustnessError> {
    match (meta.decode_b1(x), meta.decode_b2(x)) {
        (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() && a.is_disjoint(&b) => Ok((a, b)),
        _ => Err(RobustnessError::Inconsistent(
            "incumbent does not decode to a subset pair".into(),
        )),
    }
}

/// `r_max` from the two-subset model.
pub fn r_max(g: &Digraph, cfg: &SolveConfig) -> Result<RMaxOutcome, RobustnessError> {
    let n = g.n();
    if n == 1 {
        return Ok(RMaxOutcome {
            value: Estimate::exact(1),
            certificate: None,
            stage: None,
        });
    }
    let (p, meta) = build_rmax_milp(&g.laplacian())?;
    let res = run(&p, cfg)?;
    let stage = StageSummary::new("r_max", &res);
    let Some(x) = &res.incumbent_point else {
        return match res.status {
            SolveStatus::Infeasible => Err(RobustnessError::Inconsistent("r_max model reported infeasible".into())),
            _ => Ok(RMaxOutcome {
                value: Estimate {
                    lower: res.best_bound.as_ref().map_or(0, ceil_usize),
                    upper: max_possible_r(n),
                },
                certificate: None,
                stage: Some(stage),
            }),
        };
    };
    let (s1, s2) = decode_pair(&meta, x)?;
    let reach = g.reachability(&s1).max(g.reachability(&s2));
    let value = int_value(res.incumbent_value.as_ref().expect("point implies value"))?;
    if reach != value {
        return Err(RobustnessError::Inconsistent(format!(
            "r_max certificate {s1}, {s2} has reachability {reach}, solver value {value}"
        )));
    }
    let estimate = if res.is_optimal() {
        Estimate::exact(value)
    } else {
        let lower = res.best_bound.as_ref().map_or(0, ceil_usize).min(value);
        Estimate { lower, upper: value }
    };
    Ok(RMaxOutcome {
        value: estimate,
        certificate: Some(Certificate::new(&s1, &s2)),
        stage: Some(stage),
    })
}

/// `s_max(r) = s̄_min(r) − 1`, with an infeasible model meaning `n`.
pub fn s_max(g: &Digraph, r: usize, cfg: &SolveConfig) -> Result<SMaxOutcome, RobustnessError> {
    let n = g.n();
    let max = max_possible_r(n);
    if r > max {
        return Err(RobustnessError::ROutOfRange { r, max });
    }
    if r == 0 || n == 1 {
        return Ok(SMaxOutcome {
            r,
            value: Estimate::exact(n),
            certificate: None,
            stage: None,
        });
    }
    let (p, meta) = build_sbarmin_milp(&g.laplacian(), r)?;
    let res = run(&p, cfg)?;
    let stage = StageSummary::new(format!("sbar_min(r={r})"), &res);
    if res.status == SolveStatus::Infeasible {
        return Ok(SMaxOutcome {
            r,
            value: Estimate::exact(n),
            certificate: None,
            stage: Some(stage),
        });
    }
    let lower = res.best_bound.as_ref().map_or(0, |b| ceil_usize(b).saturating_sub(1));
    let Some(x) = &res.incumbent_point else {
        return Ok(SMaxOutcome {
            r,
            value: Estimate { lower, upper: n },
            certificate: None,
            stage: Some(stage),
        });
    };
    let (s1, s2) = decode_pair(&meta, x)?;
    let sbar = int_value(res.incumbent_value.as_ref().expect("point implies value"))?;
    if sbar == 0 || oracle::holds(g, &s1, &s2, r, sbar) {
        return Err(RobustnessError::Inconsistent(format!(
            "s̄ certificate {s1}, {s2} does not violate ({r}, {sbar})-robustness"
        )));
    }
    let estimate = if res.is_optimal() {
        Estimate::exact(sbar - 1)
    } else {
        Estimate {
            lower: lower.min(sbar - 1),
            upper: sbar - 1,
        }
    };
    Ok(SMaxOutcome {
        r,
        value: estimate,
        certificate: Some(Certificate::new(&s1, &s2)),
        stage: Some(stage),
    })
}

/// `δ_in ≥ ⌊n/2⌋ + r − 1` forces `s_max(r) = n`.
pub fn shortcut_applies(g: &Digraph, r: usize) -> bool {
    r >= 1 && g.min_in_degree() + 1 >= g.n() / 2 + r
}

/// The lexicographically largest robustness pair `(r_max, s_max(r_max))`.
/// The time limit applies to each of the two solves.
pub fn rs_robustness(g: &Digraph, cfg: &SolveConfig) -> Result<RsOutcome, RobustnessError> {
    rs_inner(g, cfg, false)
}

/// Like [`rs_robustness`], with the time limit shared by both solves.
pub fn rs_robustness_budgeted(g: &Digraph, cfg: &SolveConfig) -> Result<RsOutcome, RobustnessError> {
    rs_inner(g, cfg, true)
}

fn rs_inner(g: &Digraph, cfg: &SolveConfig, shared: bool) -> Result<RsOutcome, RobustnessError> {
    let n = g.n();
    let start = std::time::Instant::now();
    let r = r_max(g, cfg)?;
    let Some(rv) = r.value.value() else {
        return Ok(RsOutcome {
            r,
            s: Estimate { lower: 0, upper: n },
            s_detail: None,
            shortcut: false,
            by_convention: false,
        });
    };
    if rv == 0 || n == 1 {
        let s = if n == 1 { 1 } else { n };
        return Ok(RsOutcome {
            r,
            s: Estimate::exact(s),
            s_detail: None,
            shortcut: false,
            by_convention: true,
        });
    }
    if shortcut_applies(g, rv) {
        return Ok(RsOutcome {
            r,
            s: Estimate::exact(n),
            s_detail: None,
            shortcut: true,
            by_convention: false,
        });
    }
    let mut s_cfg = cfg.clone();
    if shared {
        s_cfg.time_limit = cfg.time_limit.map(|t| (t - start.elapsed().as_secs_f64()).max(0.0));
    }
    let s = s_max(g, rv, &s_cfg)?;
    Ok(RsOutcome {
        r,
        s: s.value,
        s_detail: Some(s),
        shortcut: false,
        by_convention: false,
    })
}

/// The largest `F` with the graph `(F+1, F+1)`-robust: walk `r` down from
/// `r_max` until `s_max(r) ≥ r`, then `F = r − 1`; zero if none does.
pub fn f_max(g: &Digraph, cfg: &SolveConfig) -> Result<usize, RobustnessError> {
    f_max_with(g, cfg, &mut Vec::new())
}

fn f_max_with(g: &Digraph, cfg: &SolveConfig, stages: &mut Vec<StageSummary>) -> Result<usize, RobustnessError> {
    let r = r_max(g, cfg)?;
    stages.extend(r.stage);
    let mut rv = r.value.value().ok_or(RobustnessError::NotExact { stage: "f_max" })?;
    while rv > 0 {
        let s = s_max(g, rv, cfg)?;
        stages.extend(s.stage);
        let sv = s.value.value().ok_or(RobustnessError::NotExact { stage: "f_max" })?;
        if sv >= rv {
            return Ok(rv - 1);
        }
        rv -= 1;
    }
    Ok(0)
}

/// Lower and upper bounds on `r_max` from the one-subset models, solved on
/// two threads.
pub fn r_max_bounds(g: &Digraph, cfg: &SolveConfig) -> Result<BoundsOutcome, RobustnessError> {
    let n = g.n();
    if n == 1 {
        return Ok(BoundsOutcome {
            lower: Estimate::exact(1),
            upper: Estimate::exact(1),
            stages: Vec::new(),
        });
    }
    let l = g.laplacian();
    let (lp, _) = build_lower_bound_milp(&l)?;
    let (up, _) = build_upper_bound_milp(&l)?;
    let (lo_res, up_res) = std::thread::scope(|s| {
        let lo = s.spawn(|| run(&lp, cfg));
        let hi = run(&up, cfg);
        (lo.join().expect("lower-bound solve panicked"), hi)
    });
    let (lo_res, up_res) = (lo_res?, up_res?);
    let bound = |res: &SolveResult| -> Result<Estimate, RobustnessError> {
        let floor = res.best_bound.as_ref().map_or(0, ceil_usize);
        match (&res.incumbent_value, res.status) {
            (Some(v), SolveStatus::Optimal) => Ok(Estimate::exact(int_value(v)?)),
            (Some(v), _) => Ok(Estimate {
                lower: floor.min(int_value(v)?),
                upper: int_value(v)?,
            }),
            (None, SolveStatus::Infeasible) => {
                Err(RobustnessError::Inconsistent("bound model reported infeasible".into()))
            }
            (None, _) => Ok(Estimate { lower: floor, upper: n }),
        }
    };
    let lower = bound(&lo_res)?;
    let upper = bound(&up_res)?;
    Ok(BoundsOutcome {
        // a bracket on the lower-bound model's optimum only certifies its
        // own lower end, and dually for the upper-bound model
        lower,
        upper,
        stages: vec![
            StageSummary::new("lower_bound", &lo_res),
            StageSummary::new("upper_bound", &up_res),
        ],
    })
}

/// The lower-bound quantity by enumeration: the least worst row over
/// subsets of at most `⌊n/2⌋` vertices.
pub fn lower_bound_exhaustive(g: &Digraph) -> usize {
    let n = g.n();
    if n == 1 {
        return 1;
    }
    let l = g.laplacian();
    (1u64..1 << n)
        .filter(|m| m.count_ones() as usize <= n / 2)
        .map(|m| l.max_row_product(&VertexSubset::from_bits(n, m).expect("mask within order")))
        .min()
        .map_or(0, |v| v.max(0) as usize)
}

/// The upper-bound quantity by enumeration: the least `‖L σ(S)‖∞` over
/// bipartitions.
pub fn upper_bound_exhaustive(g: &Digraph) -> usize {
    let n = g.n();
    if n == 1 {
        return 1;
    }
    let l = g.laplacian();
    enumerate_bipartitions(n)
        .map(|(s, _)| l.inf_norm_product(&s))
        .min()
        .map_or(0, |v| v as usize)
}

/// `r_max` with a witness pair, by enumeration.
pub fn r_max_exhaustive_with_certificate(g: &Digraph) -> (usize, Option<Certificate>) {
    enumerate_pairs(g.n())
        .map(|(a, b)| (g.reachability(&a).max(g.reachability(&b)), a, b))
        .min_by_key(|(v, _, _)| *v)
        .map_or((1, None), |(v, a, b)| (v, Some(Certificate::new(&a, &b))))
}

/// Runs the requested computations with one method and collects them.
pub fn analyze(
    g: &Digraph,
    cfg: &SolveConfig,
    method: Method,
    opts: AnalyzeOptions,
) -> Result<RobustnessReport, RobustnessError> {
    match method {
        Method::Milp => analyze_milp(g, cfg, opts),
        Method::Exhaustive => Ok(analyze_exhaustive(g, opts)),
    }
}

fn analyze_milp(g: &Digraph, cfg: &SolveConfig, opts: AnalyzeOptions) -> Result<RobustnessReport, RobustnessError> {
    let rs = rs_robustness(g, cfg)?;
    let mut stages: Vec<StageSummary> = rs.r.stage.iter().cloned().collect();
    stages.extend(rs.s_detail.as_ref().and_then(|s| s.stage.clone()));
    let f = if opts.f_max {
        match rs.r.value.value() {
            Some(_) => Some(f_max_with(g, cfg, &mut stages)?),
            None => return Err(RobustnessError::NotExact { stage: "f_max" }),
        }
    } else {
        None
    };
    let (lower, upper) = if opts.bounds {
        let b = r_max_bounds(g, cfg)?;
        stages.extend(b.stages);
        (Some(b.lower), Some(b.upper))
    } else {
        (None, None)
    };
    Ok(RobustnessReport {
        n: g.n(),
        method: Method::Milp,
        r_max: rs.r.value,
        s_max_at_r_max: rs.s,
        f_max: f,
        lower_bound_r: lower,
        upper_bound_r: upper,
        rmax_certificate: rs.r.certificate.clone(),
        sbar_certificate: rs.s_detail.and_then(|s| s.certificate),
        shortcut: rs.shortcut,
        by_convention: rs.by_convention,
        stages,
    })
}

fn analyze_exhaustive(g: &Digraph, opts: AnalyzeOptions) -> RobustnessReport {
    let n = g.n();
    let pair = oracle::determine_robustness(g);
    let (_, cert) = r_max_exhaustive_with_certificate(g);
    let f = opts.f_max.then(|| {
        (1..=pair.r)
            .rev()
            .find(|&r| oracle::smax_exhaustive(g, r) >= r)
            .map_or(0, |r| r - 1)
    });
    RobustnessReport {
        n,
        method: Method::Exhaustive,
        r_max: Estimate::exact(pair.r),
        s_max_at_r_max: Estimate::exact(pair.s),
        f_max: f,
        lower_bound_r: opts.bounds.then(|| Estimate::exact(lower_bound_exhaustive(g))),
        upper_bound_r: opts.bounds.then(|| Estimate::exact(upper_bound_exhaustive(g))),
        rmax_certificate: cert,
        sbar_certificate: None,
        shortcut: false,
        by_convention: pair.r == 0 || n == 1,
        stages: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_out_tree;

    fn cfg() -> SolveConfig {
        SolveConfig::default()
    }

    fn two_triangles() -> Digraph {
        Digraph::from_edge_list(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]).unwrap()
    }

    #[test]
    fn r_max_examples() {
        let k5 = Digraph::complete(5).unwrap();
        let out = r_max(&k5, &cfg()).unwrap();
        assert_eq!(out.value, Estimate::exact(3));
        let c = out.certificate.unwrap();
        let s1 = VertexSubset::from_one_based(5, c.s1).unwrap();
        let s2 = VertexSubset::from_one_based(5, c.s2).unwrap();
        assert_eq!(k5.reachability(&s1).max(k5.reachability(&s2)), 3);

        assert_eq!(r_max(&two_triangles(), &cfg()).unwrap().value, Estimate::exact(0));
        assert_eq!(
            r_max(&Digraph::edgeless(1).unwrap(), &cfg()).unwrap().value,
            Estimate::exact(1)
        );
        let tree = Digraph::from_edge_list(4, [(1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(r_max(&tree, &cfg()).unwrap().value, Estimate::exact(1));
    }

    #[test]
    fn s_max_examples() {
        let k3 = Digraph::complete(3).unwrap();
        assert_eq!(s_max(&k3, 2, &cfg()).unwrap().value, Estimate::exact(3));
        assert_eq!(s_max(&two_triangles(), 0, &cfg()).unwrap().value, Estimate::exact(6));
        // every member of any proper subset of the 3-cycle gains its one
        // in-neighbour from outside, so no pair ever fails at r = 1
        let c3 = Digraph::from_edge_list(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(s_max(&c3, 1, &cfg()).unwrap().value, Estimate::exact(3));
        assert_eq!(
            s_max(&k3, 3, &cfg()).unwrap_err(),
            RobustnessError::ROutOfRange { r: 3, max: 2 }
        );
        let tree = Digraph::from_edge_list(4, [(1, 2), (2, 3), (2, 4)]).unwrap();
        let out = s_max(&tree, 1, &cfg()).unwrap();
        assert_eq!(out.value, Estimate::exact(1));
        assert!(out.certificate.is_some());
    }

    #[test]
    fn rs_examples() {
        let k6 = Digraph::complete(6).unwrap();
        let out = rs_robustness(&k6, &cfg()).unwrap();
        assert!(out.shortcut);
        assert_eq!(out.pair(), Some(RobustnessPair::new(3, 6)));

        let e4 = Digraph::edgeless(4).unwrap();
        let out = rs_robustness(&e4, &cfg()).unwrap();
        assert!(out.by_convention);
        assert_eq!(out.pair(), Some(RobustnessPair::new(0, 4)));

        let tree = Digraph::from_edge_list(5, [(1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        assert_eq!(
            rs_robustness(&tree, &cfg()).unwrap().pair(),
            Some(RobustnessPair::new(1, 1))
        );
    }

    #[test]
    fn f_max_examples() {
        assert_eq!(f_max(&Digraph::complete(3).unwrap(), &cfg()).unwrap(), 1);
        assert_eq!(f_max(&two_triangles(), &cfg()).unwrap(), 0);
    }

    #[test]
    fn bounds_examples() {
        let out = r_max_bounds(&Digraph::complete(4).unwrap(), &cfg()).unwrap();
        assert_eq!((out.lower, out.upper), (Estimate::exact(2), Estimate::exact(2)));
        let out = r_max_bounds(&Digraph::edgeless(4).unwrap(), &cfg()).unwrap();
        assert_eq!((out.lower, out.upper), (Estimate::exact(0), Estimate::exact(0)));
        assert_eq!(lower_bound_exhaustive(&Digraph::complete(4).unwrap()), 2);
        assert_eq!(upper_bound_exhaustive(&Digraph::complete(4).unwrap()), 2);
    }

    #[test]
    fn star_trees_are_fully_s_robust() {
        // a root with only leaves below it: any set holding the root has no
        // reachable member, any set without it is entirely reachable
        let star = Digraph::from_edge_list(5, [(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(oracle::determine_robustness(&star), RobustnessPair::new(1, 5));
        assert_eq!(
            rs_robustness(&star, &cfg()).unwrap().pair(),
            Some(RobustnessPair::new(1, 5))
        );
    }

    #[test]
    fn deeper_random_trees_are_one_one() {
        for seed in 0..10 {
            let g = random_out_tree(7, seed).unwrap();
            let deep = (0..7).any(|v| g.in_degree(v) == 1 && g.out_degree(v) > 0);
            let expect = if deep {
                RobustnessPair::new(1, 1)
            } else {
                RobustnessPair::new(1, 7)
            };
            assert_eq!(oracle::determine_robustness(&g), expect);
            assert_eq!(rs_robustness(&g, &cfg()).unwrap().pair(), Some(expect));
        }
    }

    #[test]
    fn analyze_methods_agree() {
        let g = Digraph::from_edge_list(5, [(1, 2), (2, 1), (2, 3), (3, 4), (4, 5), (5, 1), (3, 1), (4, 2)]).unwrap();
        let opts = AnalyzeOptions {
            f_max: true,
            bounds: true,
        };
        let a = analyze(&g, &cfg(), Method::Milp, opts).unwrap();
        let b = analyze(&g, &cfg(), Method::Exhaustive, opts).unwrap();
        assert_eq!(a.r_max, b.r_max);
        assert_eq!(a.s_max_at_r_max, b.s_max_at_r_max);
        assert_eq!(a.f_max, b.f_max);
        assert_eq!(a.lower_bound_r, b.lower_bound_r);
        assert_eq!(a.upper_bound_r, b.upper_bound_r);
    }

    #[test]
    fn time_limited_stage_gives_bracket_and_blocks_f_max() {
        let g = crate::gen::generate(&crate::gen::GenSpec::probability(
            crate::gen::Family::RandomDigraph,
            20,
            0.7,
            5,
        ))
        .unwrap();
        let tight = SolveConfig::default().with_time_limit(0.0);
        let out = r_max(&g, &tight).unwrap();
        assert!(!out.value.is_exact());
        assert!(out.value.lower <= out.value.upper);
        assert_eq!(
            f_max(&g, &tight).unwrap_err(),
            RobustnessError::NotExact { stage: "f_max" }
        );
    }
}
