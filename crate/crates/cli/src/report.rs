use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::config::{SuiteConfig, SuiteName};
use crate::suites::{self, TrialOutcome};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub trial: u64,
    pub seed: u64,
    pub attempt: u64,
    pub message: String,
    pub inputs: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub trials: u64,
    pub pass: u64,
    pub fail: u64,
    /// Trials with every attempt outside the domain.
    pub resampled: u64,
    /// Out-of-domain attempts that were redrawn.
    pub redraws: u64,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: SuiteName,
    pub properties: Vec<PropertyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteResult>,
    pub total_failures: u64,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn run(config: &SuiteConfig) -> SuiteReport {
        let start = Instant::now();
        let sig = config.signature();
        let indices = config.trial_indices();
        let catalog = suites::catalog();
        let mut results = Vec::new();
        for &suite in &config.suites {
            let properties = catalog
                .iter()
                .enumerate()
                .filter(|(_, p)| p.suite == suite)
                .map(|(ordinal, p)| {
                    let idx: &[u64] = if p.deterministic && !indices.is_empty() {
                        &indices[..1]
                    } else {
                        &indices
                    };
                    let outcomes: Vec<(u64, TrialOutcome)> = idx
                        .par_iter()
                        .map(|&i| {
                            let seed = config.trial_seed(i);
                            (i, suites::run_trial(p.run, sig, seed, ordinal as u64))
                        })
                        .collect();
                    tally(p.name, config, outcomes)
                })
                .collect();
            results.push(SuiteResult {
                name: suite,
                properties,
            });
        }
        let total_failures = results
            .iter()
            .flat_map(|s| &s.properties)
            .map(|p| p.fail)
            .sum();
        SuiteReport {
            config: config.clone(),
            suites: results,
            total_failures,
            wall_time_ms: start.elapsed().as_millis(),
        }
    }

    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, one line per property.
    pub fn render_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "supergeom verify: seed {} trials {} over Λ({},{})",
            c.master_seed, c.trials, c.even_generators, c.odd_generators
        );
        if let Some(i) = c.only_trial {
            let _ = writeln!(out, "only trial {i} (seed {})", c.trial_seed(i));
        }
        for suite in &self.suites {
            let _ = writeln!(out, "{}", suite.name);
            for p in &suite.properties {
                let tag = if p.fail > 0 { "FAIL" } else { "ok" };
                let _ = write!(
                    out,
                    "  [{tag:>4}] {:<34} {} pass, {} fail",
                    p.name, p.pass, p.fail
                );
                if p.resampled > 0 {
                    let _ = write!(out, ", {} resampled", p.resampled);
                }
                if p.redraws > 0 {
                    let _ = write!(out, " ({} redraws)", p.redraws);
                }
                out.push('\n');
                for w in &p.witnesses {
                    let _ = writeln!(
                        out,
                        "         trial {} seed {} attempt {}: {}",
                        w.trial, w.seed, w.attempt, w.message
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            "{} failure(s) in {} ms",
            self.total_failures, self.wall_time_ms
        );
        out
    }
}

fn tally(name: &str, config: &SuiteConfig, outcomes: Vec<(u64, TrialOutcome)>) -> PropertyReport {
    let mut r = PropertyReport {
        name: name.to_string(),
        trials: outcomes.len() as u64,
        pass: 0,
        fail: 0,
        resampled: 0,
        redraws: 0,
        witnesses: Vec::new(),
    };
    for (trial, outcome) in outcomes {
        match outcome {
            TrialOutcome::Pass { redraws } => {
                r.pass += 1;
                r.redraws += redraws;
            }
            TrialOutcome::Fail {
                redraws,
                attempt,
                message,
                inputs,
            } => {
                r.fail += 1;
                r.redraws += redraws;
                let seed = config.trial_seed(trial);
                r.witnesses.push(Witness {
                    trial,
                    seed,
                    attempt,
                    message,
                    inputs,
                });
            }
            TrialOutcome::Resampled => {
                r.resampled += 1;
                r.redraws += suites::MAX_ATTEMPTS;
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(trials: u64, suites: &[&str]) -> SuiteConfig {
        let names: Vec<String> = suites.iter().map(|s| s.to_string()).collect();
        SuiteConfig::new(5, trials, 4, 1, &names).unwrap()
    }

    #[test]
    fn counts_add_up() {
        let report = SuiteReport::run(&config(3, &["algebra", "flag"]));
        assert!(report.passed());
        for p in report.suites.iter().flat_map(|s| &s.properties) {
            assert_eq!(p.pass + p.fail + p.resampled, p.trials, "{}", p.name);
        }
    }

    #[test]
    fn zero_trials_is_empty() {
        let report = SuiteReport::run(&config(0, &["jacobian"]));
        assert!(report.passed());
        assert!(report.suites[0].properties.iter().all(|p| p.trials == 0));
    }

    #[test]
    fn runs_are_reproducible() {
        let a = SuiteReport::run(&config(2, &["matrix"]));
        let b = SuiteReport::run(&config(2, &["matrix"]));
        assert_eq!(a.suites, b.suites);
    }
}
