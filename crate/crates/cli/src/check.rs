use std::io::{self, Write};

use anyhow::anyhow;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sphdesign::checks::{self, CaseResult, Suite};
use sphdesign::report::SCHEMA_VERSION;

use crate::config::{CheckArgs, Format};
use crate::output::write_json;
use crate::Failure;

#[derive(Debug, Serialize)]
struct SuiteSummary {
    suite: Suite,
    cases: usize,
    failed: usize,
    worst: f64,
    tolerance: f64,
    failures: Vec<CaseResult>,
}

impl SuiteSummary {
    fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Evaluate every case of `suites`. The seed permutes evaluation order only;
/// results are returned in canonical order.
fn evaluate(suites: &[Suite], seed: u64) -> Vec<SuiteSummary> {
    let cases: Vec<_> = suites.iter().flat_map(|s| s.cases()).collect();
    let mut order: Vec<usize> = (0..cases.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut results: Vec<(usize, CaseResult)> = order
        .par_iter()
        .map(|&i| (i, checks::run(cases[i])))
        .collect();
    results.sort_by_key(|(i, _)| *i);
    suites
        .iter()
        .map(|&suite| {
            let mine: Vec<CaseResult> = results
                .iter()
                .filter(|(_, r)| r.case.suite == suite)
                .map(|(_, r)| r.clone())
                .collect();
            let failures: Vec<CaseResult> = mine.iter().filter(|r| !r.passed()).cloned().collect();
            SuiteSummary {
                suite,
                cases: mine.len(),
                failed: failures.len(),
                worst: mine.iter().map(|r| r.worst).fold(0.0, f64::max),
                tolerance: suite.tolerance(),
                failures,
            }
        })
        .collect()
}

pub fn run(args: CheckArgs) -> Result<(), Failure> {
    let suites: Vec<Suite> = match &args.suite {
        Some(name) => vec![Suite::from_name(name).ok_or_else(|| {
            Failure::usage(anyhow!(
                "unknown suite {name:?}; expected one of {}",
                Suite::ALL.map(Suite::name).join(", ")
            ))
        })?],
        None => Suite::ALL.to_vec(),
    };
    let summaries = evaluate(&suites, args.seed);
    let mut out = io::stdout().lock();
    if args.format == Format::Json {
        #[derive(Serialize)]
        struct Output<'a> {
            schema_version: u32,
            suites: &'a [SuiteSummary],
        }
        write_json(
            &mut out,
            &Output {
                schema_version: SCHEMA_VERSION,
                suites: &summaries,
            },
        )?;
    } else {
        for s in &summaries {
            let tag = if s.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{tag} {}: {} cases, {} failed, worst {:.3e} (tolerance {:.0e})",
                s.suite.name(),
                s.cases,
                s.failed,
                s.worst,
                s.tolerance
            )?;
            for f in &s.failures {
                let c = f.case;
                let why = f
                    .error
                    .clone()
                    .unwrap_or_else(|| format!("{:.3e}", f.worst));
                writeln!(out, "  n={} tau={} M={}: {why}", c.n, c.tau, c.m)?;
            }
        }
    }
    let failed: usize = summaries.iter().map(|s| s.failed).sum();
    if failed > 0 {
        return Err(Failure::check(anyhow!("{failed} check cases failed")));
    }
    Ok(())
}
