//! Acceptance suite. Prints one `PASS` or `FAIL` line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rsrobust::model::build_sbarmin_milp;
use rsrobust::oracle::{
    determine_rmax_exhaustive, determine_robustness, is_rs_robust, max_possible_r, smax_exhaustive,
};
use rsrobust::robustness::{r_max_bounds, rs_robustness, s_max};
use rsrobust::solver::{solve, solve_anytime};
use rsrobust::{
    count_pairs, enumerate_pairs, generate, random_out_tree, Digraph, Estimate, Family, GenSpec, Rational,
    RobustnessPair, SolveConfig, SolveStatus,
};
use rsrobust_cli::bench::{run_bench, BenchConfig};

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

/// One corpus graph with every value the criteria compare.
struct Instance {
    label: String,
    g: Digraph,
    milp: Option<RobustnessPair>,
    milp_r: Estimate,
    milp_s: Estimate,
    exhaustive_r: usize,
    oracle: RobustnessPair,
    lower: Estimate,
    upper: Estimate,
}

fn corpus_specs() -> Vec<(String, GenSpec)> {
    let mut configs: Vec<(Family, f64, usize)> = Vec::new();
    for family in [Family::ErdosRenyi, Family::RandomDigraph] {
        for p in [0.3, 0.5, 0.8] {
            configs.push((family, p, 0));
        }
    }
    for family in [Family::KOut, Family::KIn] {
        for k in [2, 3] {
            configs.push((family, 0.0, k));
        }
    }
    let mut out = Vec::new();
    for (ci, &(family, p, k)) in configs.iter().enumerate() {
        for trial in 0..40usize {
            let n = 4 + trial % 7;
            let seed = 10_000 + 100 * ci as u64 + trial as u64;
            let spec = if family.uses_k() {
                GenSpec::degree(family, n, k, seed)
            } else {
                GenSpec::probability(family, n, p, seed)
            };
            let param = if family.uses_k() {
                format!("k={k}")
            } else {
                format!("p={p}")
            };
            out.push((format!("{} {param} n={n} seed={seed}", family.name()), spec));
        }
    }
    out
}

fn build_corpus() -> Result<Vec<Instance>, String> {
    let cfg = SolveConfig::default();
    let mut out = Vec::new();
    for (label, spec) in corpus_specs() {
        let g = generate(&spec).map_err(|e| format!("{label}: {e}"))?;
        let rs = rs_robustness(&g, &cfg).map_err(|e| format!("{label}: {e}"))?;
        let bounds = r_max_bounds(&g, &cfg).map_err(|e| format!("{label}: {e}"))?;
        out.push(Instance {
            milp: rs.pair(),
            milp_r: rs.r.value,
            milp_s: rs.s,
            exhaustive_r: determine_rmax_exhaustive(&g),
            oracle: determine_robustness(&g),
            lower: bounds.lower,
            upper: bounds.upper,
            label,
            g,
        });
    }
    Ok(out)
}

fn criterion_1(corpus: &[Instance]) -> Verdict {
    let mut bad = Vec::new();
    for inst in corpus {
        let r_ok = inst.milp_r.value() == Some(inst.exhaustive_r);
        let pair_ok = inst.milp == Some(inst.oracle);
        if !(r_ok && pair_ok) {
            bad.push(format!(
                "{}: milp r={} (r,s)={:?}, exhaustive r={} oracle {:?}",
                inst.label, inst.milp_r, inst.milp, inst.exhaustive_r, inst.oracle
            ));
        }
    }
    let agree = corpus.len() - bad.len();
    let mut detail = format!("{agree}/{} instances agree on r_max and (r*, s*)", corpus.len());
    if let Some(first) = bad.first() {
        detail.push_str(&format!("; first mismatch {first}"));
    }
    verdict(bad.is_empty() && corpus.len() == 400, detail)
}

fn criterion_2() -> Verdict {
    let three = count_pairs(3);
    let mut mismatches = Vec::new();
    for n in 1..=7usize {
        let streamed = enumerate_pairs(n).count() as u128;
        if count_pairs(n) != Some(streamed) {
            mismatches.push(format!("n={n}: formula {:?}, stream {streamed}", count_pairs(n)));
        }
    }
    verdict(
        three == Some(12) && mismatches.is_empty(),
        format!(
            "count(3) = {three:?}; formula matches stream for n = 1..=7 ({} mismatches)",
            mismatches.len()
        ),
    )
}

fn criterion_3() -> Verdict {
    let cfg = SolveConfig::default();
    let mut bad = Vec::new();
    for t in 0..20u64 {
        let n = 5 + (t as usize % 8);
        let g = random_out_tree(n, 500 + t).expect("valid order");
        let root_ok = (0..n).filter(|&j| g.in_degree(j) == 0).count() == 1;
        let milp = rs_robustness(&g, &cfg).ok().and_then(|o| o.pair());
        let oracle = determine_robustness(&g);
        let want = Some(RobustnessPair::new(1, 1));
        if !root_ok || milp != want || Some(oracle) != want {
            bad.push(format!("tree n={n} seed={}: milp {milp:?}, oracle {oracle:?}", 500 + t));
        }
    }
    verdict(
        bad.is_empty(),
        match bad.first() {
            None => "20/20 random out-trees are (1,1) under both methods; none is (0,n)".to_string(),
            Some(b) => format!("{} trees wrong; first {b}", bad.len()),
        },
    )
}

fn criterion_4(corpus: &[Instance]) -> Verdict {
    let mut bad = Vec::new();
    for inst in corpus {
        let (Some(lo), Some(hi)) = (inst.lower.value(), inst.upper.value()) else {
            bad.push(format!("{}: bounds not exact", inst.label));
            continue;
        };
        let r = inst.exhaustive_r;
        if !(lo <= r && r <= hi) {
            bad.push(format!("{}: {lo} <= {r} <= {hi} fails", inst.label));
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "lower <= r_max <= upper on {}/{} instances{}",
            corpus.len() - bad.len(),
            corpus.len(),
            bad.first().map(|b| format!("; first failure {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_5() -> Verdict {
    let cfg = SolveConfig::default();
    let mut bad = Vec::new();
    for n in 3..=8usize {
        let g = Digraph::complete(n).expect("valid order");
        let r = n.div_ceil(2);
        let (p, _) = build_sbarmin_milp(&g.laplacian(), r).expect("valid model");
        let status = solve(&p, &cfg).map(|res| res.status);
        let reported = s_max(&g, r, &cfg).map(|o| o.value);
        let oracle = smax_exhaustive(&g, r);
        if status != Ok(SolveStatus::Infeasible) || reported != Ok(Estimate::exact(n)) || oracle != n {
            bad.push(format!(
                "K_{n}, r={r}: status {status:?}, s_max {reported:?}, oracle {oracle}"
            ));
        }
    }
    verdict(
        bad.is_empty(),
        match bad.first() {
            None => "K_3..K_8 at r = ceil(n/2): model infeasible, s_max = n, oracle agrees".to_string(),
            Some(b) => format!("{} failures; first {b}", bad.len()),
        },
    )
}

fn criterion_6(corpus: &[Instance]) -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for inst in corpus {
        let n = inst.g.n();
        let rmax = max_possible_r(n);
        let rs = [inst.milp_r.lower, inst.milp_r.upper, inst.exhaustive_r, inst.oracle.r];
        let ss = [inst.milp_s.lower, inst.milp_s.upper, inst.oracle.s];
        checked += rs.len() + ss.len();
        if rs.iter().any(|&r| r > rmax) || ss.iter().any(|&s| s > n) {
            bad.push(format!(
                "{}: r values {rs:?} (max {rmax}), s values {ss:?} (max {n})",
                inst.label
            ));
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{checked} values within [0, ceil(n/2)] / [0, n]{}",
            bad.first()
                .map(|b| format!("; first violation {b}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut violations = Vec::new();
    let mut members = 0usize;
    for t in 0..50u64 {
        let n = 2 + (t as usize % 6);
        let p = [0.3, 0.5, 0.8][t as usize % 3];
        let g = generate(&GenSpec::probability(Family::RandomDigraph, n, p, 900 + t)).expect("valid spec");
        // theta[r][s] for r in 0..=n, s in 1..=n
        let theta: Vec<Vec<bool>> = (0..=n)
            .map(|r| (0..=n).map(|s| s >= 1 && is_rs_robust(&g, r, s)).collect())
            .collect();
        for r in 0..=n {
            for s in 1..=n {
                if !theta[r][s] {
                    continue;
                }
                members += 1;
                for (r2, row) in theta.iter().enumerate().take(r + 1) {
                    for (s2, &member) in row.iter().enumerate().take(s + 1).skip(1) {
                        if !member {
                            violations.push(format!("seed {}: ({r},{s}) in Θ but ({r2},{s2}) not", 900 + t));
                        }
                    }
                }
                if r >= 1 && s < n && !theta[r - 1][s + 1] {
                    violations.push(format!(
                        "seed {}: ({r},{s}) in Θ but ({},{}) not",
                        900 + t,
                        r - 1,
                        s + 1
                    ));
                }
            }
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "50 digraphs, {members} members of Θ checked, {} violations{}",
            violations.len(),
            violations.first().map(|v| format!("; first {v}")).unwrap_or_default()
        ),
    )
}

fn criterion_8() -> Verdict {
    let cfg = SolveConfig::default().with_time_limit(0.05);
    let mut bad = Vec::new();
    for t in 0..10u64 {
        let g = generate(&GenSpec::probability(Family::RandomDigraph, 20, 0.9, 700 + t)).expect("valid spec");
        let (p, _) = rsrobust::model::build_rmax_milp(&g.laplacian()).expect("valid model");
        let mut trace: Vec<(Option<Rational>, Option<Rational>)> = Vec::new();
        let res = solve_anytime(&p, &cfg, |pr| {
            trace.push((pr.best_bound.clone(), pr.incumbent_value.clone()));
            Ok(())
        })
        .expect("valid model");
        let bounds: Vec<_> = trace.iter().filter_map(|(b, _)| b.clone()).collect();
        let monotone = bounds.windows(2).all(|w| w[0] <= w[1]);
        let incs: Vec<_> = trace.iter().filter_map(|(_, i)| i.clone()).collect();
        let inc_monotone = incs.windows(2).all(|w| w[0] >= w[1]);
        let gap_ok = trace.iter().all(|(b, i)| match (b, i) {
            (Some(b), Some(i)) => b <= i,
            _ => true,
        }) && match (&res.best_bound, &res.incumbent_value) {
            (Some(b), Some(i)) => b <= i,
            _ => true,
        };
        if res.status != SolveStatus::TimeLimit || !monotone || !inc_monotone || !gap_ok {
            bad.push(format!(
                "seed {}: status {:?}, bound trace monotone {monotone}, incumbents monotone {inc_monotone}, bound <= incumbent {gap_ok}",
                700 + t,
                res.status
            ));
        }
    }
    verdict(
        bad.is_empty(),
        match bad.first() {
            None => "10/10 dense n=20 solves stop on TimeLimit with monotone traces and bound <= incumbent".to_string(),
            Some(b) => format!("{} failures; first {b}", bad.len()),
        },
    )
}

fn criterion_9() -> Verdict {
    let limit = 10.0;
    let grace = 2.0;
    let cfg = BenchConfig {
        n_min: 7,
        n_max: 12,
        trials: 10,
        time_limit: Some(limit),
        ..BenchConfig::default()
    };
    let cells = cfg.configs().len() * (cfg.n_max - cfg.n_min + 1);
    let summary = match run_bench(&cfg, |_| Ok(())) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("bench failed to run: {e}")),
    };
    let trial_rows = summary.rows.iter().filter(|r| r.row == "trial").count();
    let summary_rows = summary.rows.iter().filter(|r| r.row == "summary").count();
    let complete = trial_rows == cells * cfg.trials * 2 && summary_rows == cells * 2;
    let over: Vec<_> = summary
        .rows
        .iter()
        .filter(|r| r.method == "milp" && r.elapsed_seconds.is_some_and(|e| e > limit + grace))
        .collect();
    verdict(
        complete && summary.disagreements.is_empty() && summary.errors == 0 && over.is_empty(),
        format!(
            "{cells} cells x {} trials: {} both-exact trials, {} disagreements, {} MILP time limits, {} errors, {} rows over limit{}",
            cfg.trials,
            summary.compared,
            summary.disagreements.len(),
            summary.timed_out,
            summary.errors,
            over.len(),
            summary.disagreements.first().map(|d| format!("; first {d}")).unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = build_corpus();
    let corpus_secs = start.elapsed().as_secs_f64();
    let on_corpus = |f: fn(&[Instance]) -> Verdict| match &corpus {
        Ok(c) => f(c),
        Err(e) => verdict(false, format!("corpus failed: {e}")),
    };
    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("oracle equivalence", Box::new(|| on_corpus(criterion_1))),
        ("counting identity", Box::new(criterion_2)),
        ("spanning-tree regression", Box::new(criterion_3)),
        ("bound sandwich", Box::new(|| on_corpus(criterion_4))),
        ("infeasibility mapping", Box::new(criterion_5)),
        ("range conformance", Box::new(|| on_corpus(criterion_6))),
        ("Properties 1-2", Box::new(criterion_7)),
        ("anytime contract", Box::new(criterion_8)),
        ("benchmark protocol", Box::new(criterion_9)),
    ];
    println!(
        "corpus of {} graphs analysed in {corpus_secs:.1} s",
        corpus.as_ref().map_or(0, Vec::len)
    );
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = check();
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {} ({name}): {} [{:.1} s]",
            k + 1,
            v.detail,
            t.elapsed().as_secs_f64()
        );
        if !v.ok {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
