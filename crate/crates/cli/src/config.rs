use std::fmt;

use serde::Serialize;
use supergeom::{Signature, MAX_GENERATORS};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Algebra,
    Matrix,
    Groups,
    Flag,
    Jacobian,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] = [
        SuiteName::Algebra,
        SuiteName::Matrix,
        SuiteName::Groups,
        SuiteName::Flag,
        SuiteName::Jacobian,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Matrix => "matrix",
            SuiteName::Groups => "groups",
            SuiteName::Flag => "flag",
            SuiteName::Jacobian => "jacobian",
        }
    }

    pub fn parse(name: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|s| s.as_str() == name)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown suite '{name}' (expected one of algebra, matrix, groups, flag, jacobian)"
                ))
            })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Validated settings of a `verify` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub master_seed: u64,
    pub trials: u64,
    pub odd_generators: usize,
    pub even_generators: usize,
    /// Selected suites in catalog order, without duplicates.
    pub suites: Vec<SuiteName>,
    /// Run only this trial index (seed `master_seed + index`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub only_trial: Option<u64>,
}

impl SuiteConfig {
    pub fn new(
        master_seed: u64,
        trials: u64,
        odd_generators: usize,
        even_generators: usize,
        suite_names: &[String],
    ) -> Result<Self, CliError> {
        for (flag, n) in [("--odd", odd_generators), ("--even", even_generators)] {
            if n > MAX_GENERATORS {
                return Err(CliError::Config(format!(
                    "{flag} {n} exceeds the cap of {MAX_GENERATORS} generators"
                )));
            }
        }
        let mut suites = suite_names
            .iter()
            .map(|s| SuiteName::parse(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        if suites.is_empty() {
            return Err(CliError::Config("no suites selected".into()));
        }
        suites.sort();
        suites.dedup();
        Ok(SuiteConfig {
            master_seed,
            trials,
            odd_generators,
            even_generators,
            suites,
            only_trial: None,
        })
    }

    pub fn with_only_trial(mut self, index: Option<u64>) -> Self {
        self.only_trial = index;
        self
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.even_generators, self.odd_generators)
            .expect("validated against the cap")
    }

    /// Trial indices to run, in order.
    pub fn trial_indices(&self) -> Vec<u64> {
        match self.only_trial {
            Some(i) => vec![i],
            None => (0..self.trials).collect(),
        }
    }

    /// `master_seed + index`, wrapping.
    pub fn trial_seed(&self, index: u64) -> u64 {
        self.master_seed.wrapping_add(index)
    }
}
