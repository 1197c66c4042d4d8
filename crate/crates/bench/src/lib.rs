//! Fixed graph fixtures shared by the benchmarks.

use rsrobust::{generate, Digraph, Family, GenSpec};

/// A seeded graph of the given family; `param` is `p` or `k`.
pub fn fixture(family: Family, n: usize, param: f64, seed: u64) -> Digraph {
    let spec = if family.uses_k() {
        GenSpec::degree(family, n, param as usize, seed)
    } else {
        GenSpec::probability(family, n, param, seed)
    };
    generate(&spec).expect("fixture parameters are valid")
}

/// The graphs timed by the solver benchmarks, labelled for reports.
pub fn solver_fixtures() -> Vec<(String, Digraph)> {
    let mut out = Vec::new();
    for n in [6, 8, 10] {
        out.push((format!("er-p0.5-n{n}"), fixture(Family::ErdosRenyi, n, 0.5, 1)));
        out.push((format!("kout-k3-n{n}"), fixture(Family::KOut, n, 3.0, 1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        let a = solver_fixtures();
        let b = solver_fixtures();
        assert_eq!(a.len(), 6);
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
    }
}
