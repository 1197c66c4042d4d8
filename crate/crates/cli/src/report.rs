//! The JSON result document.

use rsrobust::{Certificate, Estimate, Rational, SolveStatus};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub n: usize,
    pub edges: usize,
}

impl InputInfo {
    pub fn new(path: &str, bytes: &[u8], n: usize, edges: usize) -> Self {
        InputInfo {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
            n,
            edges,
        }
    }
}

/// An integer bracket; `value` is set when it is closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: usize,
    pub upper: usize,
    pub value: Option<usize>,
}

impl From<Estimate> for Bracket {
    fn from(e: Estimate) -> Self {
        Bracket {
            lower: e.lower,
            upper: e.upper,
            value: e.value(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let mut s1 = c.s1.clone();
        let mut s2 = c.s2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        CertificateJson { s1, s2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Certificates {
    /// A pair whose larger reachability equals `r_max`.
    pub r_max: Option<CertificateJson>,
    /// A pair that is not `(r_max, s_max + 1)`-robust.
    pub s_max: Option<CertificateJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageJson {
    pub stage: String,
    pub status: String,
    pub incumbent: Option<i64>,
    /// The proven bound rounded up; every objective is integral.
    pub best_bound: Option<i64>,
    pub nodes: u64,
    pub elapsed_seconds: f64,
}

pub fn status_name(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Optimal => "optimal",
        SolveStatus::Infeasible => "infeasible",
        SolveStatus::TimeLimit => "time_limit",
        SolveStatus::NodeLimit => "node_limit",
        SolveStatus::Unbounded => "unbounded",
        SolveStatus::Aborted => "aborted",
    }
}

impl From<&rsrobust::robustness::StageSummary> for StageJson {
    fn from(s: &rsrobust::robustness::StageSummary) -> Self {
        StageJson {
            stage: s.stage.clone(),
            status: status_name(s.status).to_string(),
            incumbent: s.incumbent_value.as_ref().and_then(Rational::to_i64),
            best_bound: s.best_bound.as_ref().and_then(Rational::ceil_i64),
            nodes: s.nodes_explored,
            elapsed_seconds: s.elapsed_seconds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Bracket,
    pub upper: Bracket,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub method: String,
    pub seed: u64,
    pub time_limit: Option<f64>,
    pub input: InputInfo,
    /// `complete` when every requested value is exact, else `time_limit`.
    pub status: String,
    pub r_max: Option<Bracket>,
    pub s_max: Option<Bracket>,
    pub f_max: Option<usize>,
    pub bounds: Option<Bounds>,
    pub certificates: Certificates,
    pub stages: Vec<StageJson>,
    pub elapsed_seconds: f64,
}

impl ReportJson {
    pub fn new(command: &str, method: &str, seed: u64, time_limit: Option<f64>, input: InputInfo) -> Self {
        ReportJson {
            schema_version: SCHEMA_VERSION,
            tool: "rsrobust".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            method: method.into(),
            seed,
            time_limit,
            input,
            status: "complete".into(),
            r_max: None,
            s_max: None,
            f_max: None,
            bounds: None,
            certificates: Certificates::default(),
            stages: Vec::new(),
            elapsed_seconds: 0.0,
        }
    }

    /// Plain-text rendering for terminals.
    pub fn summary(&self) -> String {
        let show = |b: &Bracket| match b.value {
            Some(v) => v.to_string(),
            None => format!("[{}, {}]", b.lower, b.upper),
        };
        let mut out = format!("graph: n = {}, {} edges\n", self.input.n, self.input.edges);
        if let Some(r) = &self.r_max {
            out.push_str(&format!("r_max: {}\n", show(r)));
        }
        if let Some(s) = &self.s_max {
            out.push_str(&format!("s_max(r_max): {}\n", show(s)));
        }
        if let Some(f) = self.f_max {
            out.push_str(&format!("F_max: {f}\n"));
        }
        if let Some(b) = &self.bounds {
            out.push_str(&format!("bounds: {} <= r_max <= {}\n", show(&b.lower), show(&b.upper)));
        }
        if let Some(c) = &self.certificates.r_max {
            out.push_str(&format!("r_max witness: S1 = {:?}, S2 = {:?}\n", c.s1, c.s2));
        }
        if let Some(c) = &self.certificates.s_max {
            out.push_str(&format!("s_max witness: S1 = {:?}, S2 = {:?}\n", c.s1, c.s2));
        }
        out.push_str(&format!("status: {} ({:.3} s)\n", self.status, self.elapsed_seconds));
        out
    }
}
