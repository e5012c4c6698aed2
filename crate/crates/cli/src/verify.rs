use mpc_core::suites::{self, SuiteReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

pub const SCHEMA: &str = "mpc-dirac.verify/1";

#[derive(Debug, Clone, Serialize)]
pub struct VerifyMetadata {
    pub hbar: f64,
    pub tol: f64,
    pub seed: u64,
}

/// One metric of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub suite: &'static str,
    pub samples: usize,
    pub metric: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub metadata: VerifyMetadata,
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

fn builtin_threshold(metric: &str) -> f64 {
    match metric {
        "reconstruction" | "z_symmetry" => 1e-10,
        "cayley" | "f2" => 1e-9,
        "associativity" | "eta_multiplicativity" | "inverse" => 1e-8,
        "f1" => 1e-7,
        "clifford_relation" => 1e-12,
        "nu_commutation" | "nu_homomorphism" => 1e-10,
        "u_star_finite_difference" => 1e-5,
        // Counters: any nonzero value fails.
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Siegel,
    GroupLaw,
    Lifts,
    Clifford(usize),
}

fn run_job(job: Job, stream: u64, config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    let hbar = config.hbar;
    Ok(match job {
        Job::Siegel => vec![suites::siegel_suite(&mut rng, 500, 4, hbar)?],
        Job::GroupLaw => vec![suites::group_law_suite(&mut rng, 200, 3, hbar)?],
        Job::Lifts => suites::lift_suites(&mut rng, 100, hbar)?,
        Job::Clifford(n) => vec![suites::clifford_suite(&mut rng, n, 6, hbar, 1e-4)?],
    })
}

pub fn run(config: &RunConfig) -> Result<VerifyReport, CliError> {
    let jobs = [Job::Siegel, Job::GroupLaw, Job::Lifts, Job::Clifford(1), Job::Clifford(2), Job::Clifford(3)];
    let results: Vec<Vec<SuiteReport>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| run_job(*job, i as u64, config))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (job, reports) in jobs.iter().zip(results) {
        for report in reports {
            let suite = match job {
                Job::Clifford(1) => "clifford_n1",
                Job::Clifford(2) => "clifford_n2",
                Job::Clifford(_) => "clifford_n3",
                _ => report.name,
            };
            for m in &report.metrics {
                let threshold = config.threshold(builtin_threshold(m.name));
                rows.push(VerifyRow {
                    suite,
                    samples: report.samples,
                    metric: m.name,
                    value: m.value,
                    threshold,
                    pass: m.value <= threshold,
                });
            }
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport {
        schema_version: SCHEMA,
        command: "mpc-verify",
        metadata: VerifyMetadata {
            hbar: config.hbar,
            tol: config.tol,
            seed: config.seed,
        },
        rows,
        pass,
    })
}
