//! The benchmark harness: random graphs per family, size and parameter,
//! each analysed by the MILP pipeline and by exhaustive search.
//!
//! CSV schema (version 1), one header row:
//!
//! `row, family, n, param, trial, seed, method, r_max, s_max, status,
//! elapsed_seconds, elapsed_min, elapsed_mean, elapsed_max, note`
//!
//! `row` is `trial` or `summary`. Trial rows leave the three statistics
//! empty; summary rows (one per cell and method) leave `trial`, `seed`,
//! `r_max`, `s_max` and `elapsed_seconds` empty and put the number of
//! exact trials in `note`. Unknown values are empty cells.

use std::io::Write;
use std::time::Instant;

use rsrobust::oracle::determine_robustness;
use rsrobust::robustness::rs_robustness_budgeted;
use rsrobust::{generate, Family, GenSpec, SolveConfig};
use serde::Serialize;

pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Largest order the exhaustive arm accepts by default.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    P(f64),
    K(usize),
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::P(p) => write!(f, "p={p}"),
            Param::K(k) => write!(f, "k={k}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub probabilities: Vec<f64>,
    pub ks: Vec<usize>,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    /// Seconds per graph for the MILP arm, shared by its solves.
    pub time_limit: Option<f64>,
    pub seed: u64,
    pub exhaustive_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: Family::ALL.to_vec(),
            probabilities: vec![0.3, 0.5, 0.8],
            ks: vec![3, 4, 5],
            n_min: 7,
            n_max: 10,
            trials: 5,
            time_limit: Some(10.0),
            seed: 0,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(format!("need 2 <= n-min <= n-max, got {}..{}", self.n_min, self.n_max));
        }
        if self.n_max > self.exhaustive_cap {
            return Err(format!(
                "n-max {} exceeds the exhaustive cap {}",
                self.n_max, self.exhaustive_cap
            ));
        }
        if self.probabilities.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err("probabilities must lie in [0, 1]".into());
        }
        if self.ks.contains(&0) {
            return Err("k must be at least 1".into());
        }
        Ok(())
    }

    /// Every (family, parameter) pair, families in the given order.
    pub fn configs(&self) -> Vec<(Family, Param)> {
        let mut out = Vec::new();
        for &f in &self.families {
            if f.uses_k() {
                out.extend(self.ks.iter().map(|&k| (f, Param::K(k))));
            } else {
                out.extend(self.probabilities.iter().map(|&p| (f, Param::P(p))));
            }
        }
        out
    }
}

/// The seed of one trial, a fixed mix of the run seed and the cell.
pub fn trial_seed(base: u64, config: usize, n: usize, trial: usize) -> u64 {
    let mut z = base
        ^ (config as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (n as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (trial as u64).wrapping_mul(0x94D0_49BB_1331_11EB);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub row: &'static str,
    pub family: &'static str,
    pub n: usize,
    pub param: String,
    pub trial: Option<usize>,
    pub seed: Option<u64>,
    pub method: &'static str,
    pub r_max: Option<usize>,
    pub s_max: Option<usize>,
    pub status: String,
    pub elapsed_seconds: Option<f64>,
    pub elapsed_min: Option<f64>,
    pub elapsed_mean: Option<f64>,
    pub elapsed_max: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, Default)]
pub struct BenchSummary {
    pub rows: Vec<BenchRow>,
    /// Trials where both methods were exact.
    pub compared: usize,
    /// Trials where both were exact and disagreed; described.
    pub disagreements: Vec<String>,
    /// Trials where the MILP arm stopped on its time limit.
    pub timed_out: usize,
    pub errors: usize,
}

struct Arm {
    pair: Option<(usize, usize)>,
    r: Option<usize>,
    s: Option<usize>,
    status: String,
    elapsed: f64,
    note: String,
}

fn run_milp(g: &rsrobust::Digraph, cfg: &SolveConfig) -> Arm {
    let start = Instant::now();
    let out = rs_robustness_budgeted(g, cfg);
    let elapsed = start.elapsed().as_secs_f64();
    match out {
        Ok(rs) => {
            let r = rs.r.value.value();
            let s = rs.s.value();
            Arm {
                pair: rs.pair().map(|p| (p.r, p.s)),
                r,
                s,
                status: if r.is_some() && s.is_some() {
                    "optimal"
                } else {
                    "time_limit"
                }
                .into(),
                elapsed,
                note: String::new(),
            }
        }
        Err(e) => Arm {
            pair: None,
            r: None,
            s: None,
            status: "error".into(),
            elapsed,
            note: e.to_string(),
        },
    }
}

fn run_exhaustive(g: &rsrobust::Digraph) -> Arm {
    let start = Instant::now();
    let p = determine_robustness(g);
    Arm {
        pair: Some((p.r, p.s)),
        r: Some(p.r),
        s: Some(p.s),
        status: "optimal".into(),
        elapsed: start.elapsed().as_secs_f64(),
        note: String::new(),
    }
}

fn summary_row(family: Family, n: usize, param: Param, method: &'static str, arms: &[(f64, bool)]) -> BenchRow {
    let times: Vec<f64> = arms.iter().map(|a| a.0).collect();
    let exact = arms.iter().filter(|a| a.1).count();
    let (min, max, mean) = if times.is_empty() {
        (None, None, None)
    } else {
        (
            Some(times.iter().copied().fold(f64::INFINITY, f64::min)),
            Some(times.iter().copied().fold(0.0, f64::max)),
            Some(times.iter().sum::<f64>() / times.len() as f64),
        )
    };
    BenchRow {
        row: "summary",
        family: family.name(),
        n,
        param: param.to_string(),
        trial: None,
        seed: None,
        method,
        r_max: None,
        s_max: None,
        status: if exact == arms.len() { "optimal" } else { "partial" }.into(),
        elapsed_seconds: None,
        elapsed_min: min,
        elapsed_mean: mean,
        elapsed_max: max,
        note: format!("exact={exact}/{}", arms.len()),
    }
}

/// Runs the whole protocol, handing each row to `sink` as soon as it exists.
pub fn run_bench<F>(cfg: &BenchConfig, mut sink: F) -> Result<BenchSummary, String>
where
    F: FnMut(&BenchRow) -> std::io::Result<()>,
{
    cfg.validate()?;
    let solve_cfg = SolveConfig {
        time_limit: cfg.time_limit,
        rng_seed: cfg.seed,
        ..SolveConfig::default()
    };
    let mut summary = BenchSummary::default();
    let mut emit = |row: BenchRow, summary: &mut BenchSummary| -> Result<(), String> {
        sink(&row).map_err(|e| e.to_string())?;
        summary.rows.push(row);
        Ok(())
    };
    for (ci, (family, param)) in cfg.configs().into_iter().enumerate() {
        for n in cfg.n_min..=cfg.n_max {
            let mut milp_times = Vec::new();
            let mut ex_times = Vec::new();
            for trial in 0..cfg.trials {
                let seed = trial_seed(cfg.seed, ci, n, trial);
                let spec = match param {
                    Param::P(p) => GenSpec::probability(family, n, p, seed),
                    Param::K(k) => GenSpec::degree(family, n, k, seed),
                };
                let base = |method: &'static str| BenchRow {
                    row: "trial",
                    family: family.name(),
                    n,
                    param: param.to_string(),
                    trial: Some(trial),
                    seed: Some(seed),
                    method,
                    r_max: None,
                    s_max: None,
                    status: String::new(),
                    elapsed_seconds: None,
                    elapsed_min: None,
                    elapsed_mean: None,
                    elapsed_max: None,
                    note: String::new(),
                };
                let g = match generate(&spec) {
                    Ok(g) => g,
                    Err(e) => {
                        summary.errors += 1;
                        for method in ["milp", "exhaustive"] {
                            let mut row = base(method);
                            row.status = "error".into();
                            row.note = e.to_string();
                            emit(row, &mut summary)?;
                        }
                        continue;
                    }
                };
                let milp = run_milp(&g, &solve_cfg);
                let ex = run_exhaustive(&g);
                match milp.status.as_str() {
                    "time_limit" => summary.timed_out += 1,
                    "error" => summary.errors += 1,
                    _ => {}
                }
                if let (Some(a), Some(b)) = (milp.pair, ex.pair) {
                    summary.compared += 1;
                    if a != b {
                        summary.disagreements.push(format!(
                            "{} {param} n={n} trial={trial} seed={seed}: milp {a:?}, exhaustive {b:?}",
                            family.name()
                        ));
                    }
                } else if let (Some(a), Some(b)) = (milp.r, ex.r) {
                    if a != b {
                        summary.disagreements.push(format!(
                            "{} {param} n={n} trial={trial} seed={seed}: milp r_max {a}, exhaustive {b}",
                            family.name()
                        ));
                    }
                }
                milp_times.push((milp.elapsed, milp.pair.is_some()));
                ex_times.push((ex.elapsed, true));
                for (method, arm) in [("milp", milp), ("exhaustive", ex)] {
                    let mut row = base(method);
                    row.r_max = arm.r;
                    row.s_max = arm.s;
                    row.status = arm.status;
                    row.elapsed_seconds = Some(arm.elapsed);
                    row.note = arm.note;
                    emit(row, &mut summary)?;
                }
            }
            emit(summary_row(family, n, param, "milp", &milp_times), &mut summary)?;
            emit(summary_row(family, n, param, "exhaustive", &ex_times), &mut summary)?;
        }
    }
    Ok(summary)
}

/// Writes rows as CSV with a header, flushing after each row.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> Self {
        CsvSink {
            writer: csv::Writer::from_writer(inner),
        }
    }

    pub fn write(&mut self, row: &BenchRow) -> std::io::Result<()> {
        self.writer.serialize(row).map_err(std::io::Error::other)?;
        self.writer.flush()
    }
}
