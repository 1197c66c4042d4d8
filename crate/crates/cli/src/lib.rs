//! The `rsrobust` command-line tool.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success |
//! | 1    | I/O failure (unreadable input, unwritable output) |
//! | 2    | the graph file could not be parsed |
//! | 3    | internal inconsistency (a certificate failed re-verification, or the bench methods disagreed) |
//! | 4    | a time limit stopped a solve before optimality; a partial report is still written |
//! | 64   | usage error (bad flags or generator parameters) |

pub mod bench;
pub mod graph_file;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsrobust::robustness::{self, lower_bound_exhaustive, r_max_exhaustive_with_certificate, upper_bound_exhaustive};
use rsrobust::{generate, oracle, Digraph, Estimate, Family, GenSpec, RobustnessError, SolveConfig};

use crate::bench::{run_bench, BenchConfig, CsvSink};
use crate::graph_file::{parse_graph, write_edge_list};
use crate::report::{Bounds, CertificateJson, InputInfo, ReportJson, StageJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_TIME_LIMIT: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "rsrobust", version, about = "r- and (r,s)-robustness of digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Largest r for which the graph is r-robust.
    Rmax(AnalysisArgs),
    /// The pair (r_max, s_max(r_max)).
    Rs(AnalysisArgs),
    /// Largest F with the graph (F+1, F+1)-robust.
    Fmax(AnalysisArgs),
    /// Lower and upper bounds on r_max from the one-subset models.
    Bounds(AnalysisArgs),
    /// Write a random graph as an edge list.
    Gen(GenArgs),
    /// Run the benchmark protocol and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Milp,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    /// Edge list (`n <count>` then `i j` lines) or 0/1 adjacency CSV.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "milp")]
    pub method: MethodArg,
    /// Seconds per solve.
    #[arg(long, env = "RSROBUST_TIME_LIMIT")]
    pub time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Treat every listed edge as a pair of opposite edges.
    #[arg(long)]
    pub undirected: bool,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// er, digraph, kout or kin.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated family names.
    #[arg(long, value_delimiter = ',', default_value = "er,digraph,kout,kin")]
    pub families: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.8")]
    pub p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 7)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Seconds per graph for the MILP arm.
    #[arg(long, env = "RSROBUST_TIME_LIMIT", default_value_t = 10.0)]
    pub time_limit: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = bench::DEFAULT_EXHAUSTIVE_CAP)]
    pub exhaustive_cap: usize,
    /// CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced: text for standard output, diagnostics for
/// standard error, and the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: msg.into() + "\n",
            code,
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Rmax(a) => analysis("rmax", &a),
        Command::Rs(a) => analysis("rs", &a),
        Command::Fmax(a) => analysis("fmax", &a),
        Command::Bounds(a) => analysis("bounds", &a),
        Command::Gen(a) => cmd_gen(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
}

fn read_graph(path: &Path, undirected: bool) -> Result<(Digraph, Vec<u8>), Outcome> {
    let bytes =
        std::fs::read(path).map_err(|e| Outcome::fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Outcome::fail(EXIT_PARSE, format!("{}: not UTF-8 text", path.display())))?;
    let g =
        parse_graph(&text, undirected).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok((g, bytes))
}

fn error_code(e: &RobustnessError) -> i32 {
    match e {
        RobustnessError::NotExact { .. } => EXIT_TIME_LIMIT,
        _ => EXIT_INCONSISTENT,
    }
}

fn analysis(command: &str, a: &AnalysisArgs) -> Outcome {
    let (g, bytes) = match read_graph(&a.file, a.undirected) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let cfg = SolveConfig {
        time_limit: a.time_limit,
        rng_seed: a.seed,
        ..SolveConfig::default()
    };
    if let Err(e) = cfg.validate() {
        return Outcome::fail(EXIT_USAGE, e.to_string());
    }
    let method = match a.method {
        MethodArg::Milp => "milp",
        MethodArg::Exhaustive => "exhaustive",
    };
    let input = InputInfo::new(&a.file.display().to_string(), &bytes, g.n(), g.edge_count());
    let mut report = ReportJson::new(command, method, a.seed, a.time_limit, input);
    let start = Instant::now();
    let result = match a.method {
        MethodArg::Milp => fill_milp(command, &g, &cfg, &mut report),
        MethodArg::Exhaustive => {
            fill_exhaustive(command, &g, &mut report);
            Ok(())
        }
    };
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    let mut code = EXIT_OK;
    let mut stderr = String::new();
    if let Err(e) = result {
        code = error_code(&e);
        stderr = format!("{e}\n");
    }
    let exact = [report.r_max, report.s_max]
        .iter()
        .flatten()
        .chain(report.bounds.iter().flat_map(|b| [&b.lower, &b.upper]))
        .all(|b| b.value.is_some());
    if !exact || code == EXIT_TIME_LIMIT {
        report.status = "time_limit".into();
        if code == EXIT_OK {
            code = EXIT_TIME_LIMIT;
        }
    }
    if code == EXIT_INCONSISTENT {
        report.status = "error".into();
    }
    let json = serde_json::to_string_pretty(&report).expect("report serialises");
    if let Some(path) = &a.out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            return Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", path.display()));
        }
    }
    Outcome {
        stdout: if a.json { json + "\n" } else { report.summary() },
        stderr,
        code,
    }
}

fn fill_milp(command: &str, g: &Digraph, cfg: &SolveConfig, report: &mut ReportJson) -> Result<(), RobustnessError> {
    match command {
        "rmax" => {
            let out = robustness::r_max(g, cfg)?;
            report.r_max = Some(out.value.into());
            report.certificates.r_max = out.certificate.as_ref().map(CertificateJson::from);
            report.stages.extend(out.stage.iter().map(StageJson::from));
        }
        "rs" => {
            let out = robustness::rs_robustness(g, cfg)?;
            report.r_max = Some(out.r.value.into());
            report.s_max = Some(out.s.into());
            report.certificates.r_max = out.r.certificate.as_ref().map(CertificateJson::from);
            report.stages.extend(out.r.stage.iter().map(StageJson::from));
            if let Some(s) = &out.s_detail {
                report.certificates.s_max = s.certificate.as_ref().map(CertificateJson::from);
                report.stages.extend(s.stage.iter().map(StageJson::from));
            }
        }
        "fmax" => {
            let r = robustness::r_max(g, cfg)?;
            report.r_max = Some(r.value.into());
            report.certificates.r_max = r.certificate.as_ref().map(CertificateJson::from);
            report.stages.extend(r.stage.iter().map(StageJson::from));
            report.f_max = Some(robustness::f_max(g, cfg)?);
        }
        "bounds" => {
            let b = robustness::r_max_bounds(g, cfg)?;
            report.bounds = Some(Bounds {
                lower: b.lower.into(),
                upper: b.upper.into(),
            });
            report.stages.extend(b.stages.iter().map(StageJson::from));
        }
        other => unreachable!("unknown analysis command {other}"),
    }
    Ok(())
}

fn fill_exhaustive(command: &str, g: &Digraph, report: &mut ReportJson) {
    let (r, cert) = r_max_exhaustive_with_certificate(g);
    let rmax_fields = |report: &mut ReportJson| {
        report.r_max = Some(Estimate::exact(r).into());
        report.certificates.r_max = cert.as_ref().map(CertificateJson::from);
    };
    match command {
        "rmax" => rmax_fields(report),
        "rs" => {
            rmax_fields(report);
            let pair = oracle::determine_robustness(g);
            report.s_max = Some(Estimate::exact(pair.s).into());
        }
        "fmax" => {
            rmax_fields(report);
            let f = (1..=r)
                .rev()
                .find(|&r| oracle::smax_exhaustive(g, r) >= r)
                .map_or(0, |r| r - 1);
            report.f_max = Some(f);
        }
        "bounds" => {
            report.bounds = Some(Bounds {
                lower: Estimate::exact(lower_bound_exhaustive(g)).into(),
                upper: Estimate::exact(upper_bound_exhaustive(g)).into(),
            });
        }
        other => unreachable!("unknown analysis command {other}"),
    }
}

fn cmd_gen(a: &GenArgs) -> Outcome {
    let Some(family) = Family::from_name(&a.family) else {
        return Outcome::fail(
            EXIT_USAGE,
            format!("unknown family `{}` (er, digraph, kout, kin)", a.family),
        );
    };
    let spec = if family.uses_k() {
        let Some(k) = a.k else {
            return Outcome::fail(EXIT_USAGE, format!("--k is required for {}", family.name()));
        };
        GenSpec::degree(family, a.n, k, a.seed)
    } else {
        let Some(p) = a.p else {
            return Outcome::fail(EXIT_USAGE, format!("--p is required for {}", family.name()));
        };
        GenSpec::probability(family, a.n, p, a.seed)
    };
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_USAGE, e.to_string()),
    };
    let text = format!(
        "# rsrobust gen --family {} --n {} {} --seed {}\n{}",
        family.name(),
        a.n,
        if family.uses_k() {
            format!("--k {}", spec.k)
        } else {
            format!("--p {}", spec.p)
        },
        a.seed,
        write_edge_list(&g)
    );
    match &a.out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => Outcome::default(),
            Err(e) => Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            stdout: text,
            ..Outcome::default()
        },
    }
}

fn cmd_bench(a: &BenchArgs) -> Outcome {
    let mut families = Vec::new();
    for name in &a.families {
        match Family::from_name(name) {
            Some(f) => families.push(f),
            None => return Outcome::fail(EXIT_USAGE, format!("unknown family `{name}`")),
        }
    }
    let cfg = BenchConfig {
        families,
        probabilities: a.p.clone(),
        ks: a.k.clone(),
        n_min: a.n_min,
        n_max: a.n_max,
        trials: a.trials,
        time_limit: Some(a.time_limit),
        seed: a.seed,
        exhaustive_cap: a.exhaustive_cap,
    };
    if let Err(e) = cfg.validate() {
        return Outcome::fail(EXIT_USAGE, e);
    }
    let mut buffer = Vec::new();
    let file = match &a.out {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Some(f),
            Err(e) => return Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", path.display())),
        },
        None => None,
    };
    let result = match file {
        Some(f) => {
            let mut sink = CsvSink::new(f);
            run_bench(&cfg, |row| sink.write(row))
        }
        None => {
            let mut sink = CsvSink::new(&mut buffer);
            run_bench(&cfg, |row| sink.write(row))
        }
    };
    let summary = match result {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_IO, e),
    };
    let mut stderr = format!(
        "{} rows, {} trials compared, {} disagreements, {} MILP time limits, {} errors\n",
        summary.rows.len(),
        summary.compared,
        summary.disagreements.len(),
        summary.timed_out,
        summary.errors
    );
    for d in &summary.disagreements {
        stderr.push_str(&format!("disagreement: {d}\n"));
    }
    Outcome {
        stdout: String::from_utf8(buffer).expect("csv is UTF-8"),
        stderr,
        code: if summary.disagreements.is_empty() {
            EXIT_OK
        } else {
            EXIT_INCONSISTENT
        },
    }
}
