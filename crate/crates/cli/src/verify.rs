//! Closed-form stopping-time pmfs checked against brute-force enumeration.

use std::collections::BTreeMap;

use coinrace_core::oracle::MAX_ORACLE_TURNS;
use coinrace_core::{brute_force_tau_pmf, tau_distribution, turn_bounds, NormalizedParams, Poly};

use crate::CliError;

/// Source of the pmfs under test.
pub trait PmfProvider: Sync {
    fn pmf(&self, params: &NormalizedParams) -> coinrace_core::Result<BTreeMap<u64, Poly>>;
}

/// The closed-form construction shipped in the core crate.
pub struct Analytic;

impl PmfProvider for Analytic {
    fn pmf(&self, params: &NormalizedParams) -> coinrace_core::Result<BTreeMap<u64, Poly>> {
        Ok(tau_distribution(params)?.pmf)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
    pub k: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: usize,
    pub matched: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare(
    provider: &dyn PmfProvider,
    (n, alpha, beta): (i64, i64, i64),
) -> Result<Vec<Mismatch>, CliError> {
    let params = NormalizedParams::from_integers(n, alpha, beta)?;
    let expected = brute_force_tau_pmf(&params)?.pmf;
    let mismatch = |k| Mismatch { n, alpha, beta, k };
    let mut out = Vec::new();
    let actual = match provider.pmf(&params) {
        Ok(pmf) => pmf,
        Err(_) => {
            out.extend(expected.keys().map(|&k| mismatch(k)));
            return Ok(out);
        }
    };
    let turns: std::collections::BTreeSet<u64> =
        expected.keys().chain(actual.keys()).copied().collect();
    let zero = Poly::zero();
    for k in turns {
        if actual.get(&k).unwrap_or(&zero) != expected.get(&k).unwrap_or(&zero) {
            out.push(mismatch(k));
        }
    }
    Ok(out)
}

/// Checks every triple with `1 ≤ n ≤ max_n`, `1 ≤ α ≤ max_alpha`, `1 ≤ β ≤ max_beta`.
pub fn verify_grid(
    provider: &dyn PmfProvider,
    max_n: i64,
    max_alpha: i64,
    max_beta: i64,
) -> Result<VerifyReport, CliError> {
    for (name, value) in [
        ("max-n", max_n),
        ("max-alpha", max_alpha),
        ("max-beta", max_beta),
    ] {
        if value < 1 {
            return Err(CliError::Usage(format!("{name} must be >= 1")));
        }
    }
    // α = 1 gives the longest game in the grid.
    let longest = turn_bounds(&NormalizedParams::from_integers(max_n, 1, 1)?)?.m;
    if longest > MAX_ORACLE_TURNS {
        return Err(CliError::Usage(format!(
            "max-n {max_n} needs {longest} turns; enumeration is limited to {MAX_ORACLE_TURNS}"
        )));
    }
    let cases: Vec<(i64, i64, i64)> = (1..=max_n)
        .flat_map(|n| (1..=max_alpha).flat_map(move |a| (1..=max_beta).map(move |b| (n, a, b))))
        .collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, |w| w.get())
        .min(cases.len());
    let chunk = cases.len().div_ceil(workers);
    let per_case: Vec<Result<Vec<Mismatch>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&c| compare(provider, c))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verify worker panicked"))
            .collect()
    });
    let mut report = VerifyReport {
        cases: cases.len(),
        ..Default::default()
    };
    for result in per_case {
        let found = result?;
        if found.is_empty() {
            report.matched += 1;
        }
        report.mismatches.extend(found);
    }
    Ok(report)
}
