//! Exhaustive census over all staircases of bounded size, with theorem
//! verification suites.
//!
//! Instances fan out across a thread pool; results are collected in
//! enumeration order behind a barrier, so identical invocations produce
//! byte-identical reports whatever the job count, and the first violation
//! reported is deterministic.
//!
//! The JSON form carries `"schema": 1` and the fields
//! `kind="census", r, n_max, verify, seed, rows (n, total, smooth, singular,
//! compound_box, witness, oracle_agreements), checks, passed`; on a
//! violation, `passed=false` plus `violation {description, counterexample}`
//! with the counterexample in the staircase file format.

// Violations carry whole staircases; they only travel on the cold path.
#![allow(clippy::result_large_err)]

use rayon::prelude::*;
use serde_json::{json, Value};

use staircase_core::bunch;
use staircase_core::classify;
use staircase_core::cotangent;
use staircase_core::staircase::{self, BasisSet};

use crate::format;
use crate::gen::Rng;
use crate::verify::{self, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracle,
    TwoVar,
    ThreeVar,
    Boxes,
    Thicken,
    Truncate,
    AddBox,
    Union,
}

impl Suite {
    fn wants(self, suite: Suite) -> bool {
        self == Suite::All || self == suite
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Oracle => "oracle",
            Suite::TwoVar => "2var",
            Suite::ThreeVar => "3var",
            Suite::Boxes => "boxes",
            Suite::Thicken => "thicken",
            Suite::Truncate => "truncate",
            Suite::AddBox => "addbox",
            Suite::Union => "union",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub verify: Suite,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            verify: Suite::All,
            jobs: 1,
            seed: 0,
        }
    }
}

/// Aggregates for one size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub r: usize,
    pub n: usize,
    pub total: usize,
    pub smooth_count: usize,
    pub singular_count: usize,
    pub compound_box_count: usize,
    /// Instances carrying a rigid non-standard witness.
    pub witness_count: usize,
    /// Instances whose oracle cross-check ran and agreed; equals `total`
    /// whenever cross-checking is enabled, since disagreement aborts.
    pub oracle_agreements: usize,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub r: usize,
    pub n_max: usize,
    pub verify: Suite,
    pub seed: u64,
    pub rows: Vec<CensusRow>,
    /// Total assertions made by the verification suites.
    pub checks: u64,
}

struct InstanceOutcome {
    smooth: bool,
    compound: bool,
    witness: bool,
    oracle_ran: bool,
    checks: u64,
}

fn analyze_instance(
    beta: &BasisSet,
    opts: &CensusOptions,
    index: u64,
) -> Result<InstanceOutcome, Violation> {
    let mut checks = 0u64;
    let smooth = cotangent::is_smooth(beta);
    let compound = classify::compound_box_decomposition(beta).is_some();
    let witness = !classify::rigid_nonstandard_witnesses(beta).is_empty();
    if witness && smooth {
        return Err(Violation {
            description: "rigid non-standard witness on a smooth staircase".into(),
            counterexample: beta.clone(),
        });
    }
    checks += 1;

    let standard_bunch = bunch::build_bunch(beta);
    let violations = bunch::verify_bunch(beta, &standard_bunch);
    if standard_bunch.len() != beta.arity() * beta.len() || !violations.is_empty() {
        return Err(Violation {
            description: format!("standard bunch failed verification: {violations:?}"),
            counterexample: beta.clone(),
        });
    }
    checks += 1;

    let mut oracle_ran = false;
    if opts.verify.wants(Suite::Oracle) {
        checks += verify::check_oracle(beta)? as u64;
        oracle_ran = true;
    }
    if beta.arity() == 2 && opts.verify.wants(Suite::TwoVar) {
        checks += verify::check_two_var(beta)? as u64;
    }
    if beta.arity() == 3 && opts.verify.wants(Suite::ThreeVar) {
        checks += verify::check_three_var(beta)? as u64;
    }
    if opts.verify.wants(Suite::Thicken) {
        let mut rng = Rng::new(opts.seed ^ (0x7487 << 32) ^ index);
        checks += verify::check_thicken(beta, &mut rng)? as u64;
    }
    if opts.verify.wants(Suite::Truncate) {
        checks += verify::check_truncate(beta)? as u64;
    }
    if opts.verify.wants(Suite::AddBox) {
        let mut rng = Rng::new(opts.seed ^ (0xadd0 << 32) ^ index);
        checks += verify::check_addbox(beta, &mut rng)? as u64;
    }
    Ok(InstanceOutcome {
        smooth,
        compound,
        witness,
        oracle_ran,
        checks,
    })
}

pub fn run_census(r: usize, n_max: usize, opts: &CensusOptions) -> Result<CensusReport, Violation> {
    assert!(r >= 1 && n_max >= 1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .expect("thread pool");
    let mut rows = Vec::with_capacity(n_max);
    let mut checks = 0u64;
    for n in 1..=n_max {
        let instances: Vec<BasisSet> = staircase::enumerate(r, n).collect();

        // Enumeration counts against the independent counting oracles.
        if r == 2 && opts.verify.wants(Suite::TwoVar) {
            if instances.len() as u64 != verify::partition_count(n) {
                return Err(Violation {
                    description: format!(
                        "{} staircases enumerated at n={n}, partition recurrence says {}",
                        instances.len(),
                        verify::partition_count(n)
                    ),
                    counterexample: instances[0].clone(),
                });
            }
            checks += 1;
        }
        if r == 3 && opts.verify.wants(Suite::ThreeVar) {
            if instances.len() as u64 != verify::plane_partition_count(n) {
                return Err(Violation {
                    description: format!(
                        "{} staircases enumerated at n={n}, plane-partition recurrence says {}",
                        instances.len(),
                        verify::plane_partition_count(n)
                    ),
                    counterexample: instances[0].clone(),
                });
            }
            checks += 1;
        }

        let outcomes: Vec<Result<InstanceOutcome, Violation>> = pool.install(|| {
            instances
                .par_iter()
                .enumerate()
                .map(|(i, beta)| analyze_instance(beta, opts, ((n as u64) << 32) | i as u64))
                .collect()
        });
        let mut row = CensusRow {
            r,
            n,
            total: instances.len(),
            smooth_count: 0,
            singular_count: 0,
            compound_box_count: 0,
            witness_count: 0,
            oracle_agreements: 0,
        };
        for outcome in outcomes {
            let outcome = outcome?;
            if outcome.smooth {
                row.smooth_count += 1;
            } else {
                row.singular_count += 1;
            }
            if outcome.compound {
                row.compound_box_count += 1;
            }
            if outcome.witness {
                row.witness_count += 1;
            }
            if outcome.oracle_ran {
                row.oracle_agreements += 1;
            }
            checks += outcome.checks;
        }
        rows.push(row);
    }

    // Seeded constructor samples, once per census run.
    let sample_cap = n_max.max(4);
    if opts.verify.wants(Suite::Boxes) {
        let mut rng = Rng::new(opts.seed ^ 0xb0cce5);
        for _ in 0..20 {
            checks += verify::check_box_sample(&mut rng, r, sample_cap)? as u64;
        }
    }
    if opts.verify.wants(Suite::Union) {
        let mut rng = Rng::new(opts.seed ^ 0x2b0ce5);
        for _ in 0..20 {
            checks += verify::check_union_sample(&mut rng, r, sample_cap)? as u64;
        }
    }

    Ok(CensusReport {
        r,
        n_max,
        verify: opts.verify,
        seed: opts.seed,
        rows,
        checks,
    })
}

pub fn render_text(report: &CensusReport) -> String {
    let mut out = format!(
        "census: r={} max size={} verify={} seed={}\n",
        report.r,
        report.n_max,
        report.verify.name(),
        report.seed
    );
    out.push_str("  n    total   smooth singular compound  witness   oracle\n");
    for row in &report.rows {
        let oracle = if row.oracle_agreements == 0 && row.total > 0 {
            "-".to_string()
        } else {
            format!("{}/{}", row.oracle_agreements, row.total)
        };
        out.push_str(&format!(
            "{:>3} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n",
            row.n,
            row.total,
            row.smooth_count,
            row.singular_count,
            row.compound_box_count,
            row.witness_count,
            oracle
        ));
    }
    out.push_str(&format!(
        "suite checks: {}\nall checks passed\n",
        report.checks
    ));
    out
}

pub fn render_json(report: &CensusReport) -> Value {
    json!({
        "schema": 1,
        "kind": "census",
        "r": report.r,
        "n_max": report.n_max,
        "verify": report.verify.name(),
        "seed": report.seed,
        "rows": report
            .rows
            .iter()
            .map(|row| json!({
                "n": row.n,
                "total": row.total,
                "smooth": row.smooth_count,
                "singular": row.singular_count,
                "compound_box": row.compound_box_count,
                "witness": row.witness_count,
                "oracle_agreements": row.oracle_agreements,
            }))
            .collect::<Vec<_>>(),
        "checks": report.checks,
        "passed": true,
    })
}

pub fn render_violation_text(violation: &Violation) -> String {
    format!(
        "violation: {}\ncounterexample:\n{}",
        violation.description,
        format::write_staircase(&violation.counterexample)
    )
}

pub fn render_violation_json(violation: &Violation) -> Value {
    json!({
        "schema": 1,
        "kind": "census",
        "passed": false,
        "violation": {
            "description": violation.description,
            "counterexample": format::write_staircase(&violation.counterexample),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census_rows() {
        let report = run_census(2, 5, &CensusOptions::default()).unwrap();
        let totals: Vec<usize> = report.rows.iter().map(|r| r.total).collect();
        assert_eq!(totals, vec![1, 2, 3, 5, 7]);
        assert!(report.rows.iter().all(|r| r.singular_count == 0));
        assert!(report
            .rows
            .iter()
            .all(|r| r.compound_box_count == r.total && r.oracle_agreements == r.total));
    }

    #[test]
    fn census_is_deterministic_across_job_counts() {
        let sequential = run_census(
            3,
            4,
            &CensusOptions {
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let parallel = run_census(
            3,
            4,
            &CensusOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(render_text(&sequential), render_text(&parallel));
        assert_eq!(sequential.checks, parallel.checks);
    }

    #[test]
    fn three_variable_rows_split_by_smoothness() {
        let report = run_census(3, 4, &CensusOptions::default()).unwrap();
        let last = report.rows.last().unwrap();
        assert_eq!(last.total, 13);
        assert_eq!(last.smooth_count, last.compound_box_count);
        assert!(last.singular_count > 0);
    }
}
