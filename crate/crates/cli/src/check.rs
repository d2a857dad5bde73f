//! The `check` command: structural and homological invariants of a filtration.

use phcalc_core::persistence::check_fundamental_lemma_with;
use phcalc_core::{BettiTable, Filtration, Oracle};
use serde::Serialize;

/// Environment variable overriding the oracle's enumeration cap (in bits).
pub const ORACLE_MAX_BITS_ENV: &str = "PHCALC_ORACLE_MAX_BITS";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub nilpotency: usize,
    pub injectivity: usize,
    pub chain_map: usize,
    pub fundamental_lemma: usize,
    pub oracle_betti: usize,
    pub oracle_persistent_betti: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub max_dimension: usize,
    pub levels: usize,
    pub checks: CheckCounts,
    /// Oracle comparisons skipped because they exceed the enumeration cap.
    pub skipped: Vec<String>,
    pub violations: Vec<Violation>,
}

/// Runs every check for dimensions `0..=max_dim`. With `oracle`, also
/// compares against brute-force enumeration wherever it is within bounds.
pub fn run_checks(f: &Filtration, max_dim: usize, oracle: Option<Oracle>) -> CheckReport {
    let m = f.last_level();
    let mut counts = CheckCounts::default();
    let mut violations = Vec::new();
    let mut skipped = Vec::new();

    for (level, k) in f.levels().iter().enumerate() {
        for n in 0..=max_dim {
            counts.nilpotency += 1;
            let product = k
                .boundary_matrix(n)
                .multiply(&k.boundary_matrix(n + 1))
                .expect("consecutive boundary matrices conform");
            if !product.is_zero() {
                violations.push(Violation {
                    check: "nilpotency",
                    dimension: n,
                    level: Some(level),
                    levels: None,
                    detail: format!("D_{n} * D_{} has {} nonzero entries", n + 1, product.count_ones()),
                });
            }
        }
    }

    for n in 0..=max_dim {
        for j in 0..=m {
            for p in j..=m {
                let inclusion = f.inclusion_matrix(n, j, p).expect("levels in range");
                counts.injectivity += 1;
                let expected = f.level(j).n_simplices(n).len();
                if inclusion.rank() != expected {
                    violations.push(Violation {
                        check: "injectivity",
                        dimension: n,
                        level: None,
                        levels: Some((j, p)),
                        detail: format!("rank {} but {expected} simplices", inclusion.rank()),
                    });
                }
                if n == 0 {
                    continue;
                }
                counts.chain_map += 1;
                let lhs = f.level(p).boundary_matrix(n).multiply(&inclusion);
                let rhs = f
                    .inclusion_matrix(n - 1, j, p)
                    .and_then(|i| i.multiply(&f.level(j).boundary_matrix(n)));
                if lhs != rhs {
                    violations.push(Violation {
                        check: "chain_map",
                        dimension: n,
                        level: None,
                        levels: Some((j, p)),
                        detail: "inclusion does not commute with the boundary".into(),
                    });
                }
            }
        }
    }

    for n in 0..=max_dim {
        let table = BettiTable::compute(f, n);
        let report = check_fundamental_lemma_with(&table);
        counts.fundamental_lemma += report.pairs_checked;
        violations.extend(report.violations.iter().map(|v| Violation {
            check: "fundamental_lemma",
            dimension: n,
            level: None,
            levels: None,
            detail: v.to_string(),
        }));

        let Some(oracle) = oracle else { continue };
        for (level, k) in f.levels().iter().enumerate() {
            if !oracle.fits_complex(k, n) {
                skipped.push(format!("oracle betti: dimension {n}, level {level}"));
                continue;
            }
            counts.oracle_betti += 1;
            match oracle.betti(k, n) {
                Ok(b) if b == k.betti(n) => {}
                outcome => violations.push(Violation {
                    check: "oracle_betti",
                    dimension: n,
                    level: Some(level),
                    levels: None,
                    detail: format!("rank formula {} vs enumeration {outcome:?}", k.betti(n)),
                }),
            }
        }
        for j in 0..=m {
            for p in j..=m {
                if !(oracle.fits_complex(f.level(j), n) && oracle.fits_complex(f.level(p), n)) {
                    skipped.push(format!("oracle persistent betti: dimension {n}, levels ({j}, {p})"));
                    continue;
                }
                counts.oracle_persistent_betti += 1;
                match oracle.persistent_betti(f, n, j, p) {
                    Ok(b) if b == table.get(j, p) => {}
                    outcome => violations.push(Violation {
                        check: "oracle_persistent_betti",
                        dimension: n,
                        level: None,
                        levels: Some((j, p)),
                        detail: format!("rank formula {} vs enumeration {outcome:?}", table.get(j, p)),
                    }),
                }
            }
        }
    }

    CheckReport {
        passed: violations.is_empty(),
        max_dimension: max_dim,
        levels: m + 1,
        checks: counts,
        skipped,
        violations,
    }
}

/// The oracle cap from [`ORACLE_MAX_BITS_ENV`], or the default.
pub fn oracle_from_env() -> Result<Oracle, String> {
    match std::env::var(ORACLE_MAX_BITS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&b| b < 64)
            .map(Oracle::new)
            .ok_or_else(|| format!("{ORACLE_MAX_BITS_ENV} must be an integer below 64, got `{v}`")),
        Err(_) => Ok(Oracle::default()),
    }
}
