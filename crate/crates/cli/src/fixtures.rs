//! The verification fixture file and its runner.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::recipes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub description: String,
    pub anchor: String,
    pub recipe: String,
    #[serde(default)]
    pub args: Value,
    pub expected: Value,
    pub provenance: Provenance,
    /// Oracle used to freeze `expected`; required for `DERIVED` checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frozen_by: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub version: u32,
    pub checks: Vec<Check>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("invalid filter pattern: {0}")]
    Pattern(#[from] glob::PatternError),
}

impl FixtureFile {
    pub fn load(path: &Path) -> Result<Self, FixtureError> {
        let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: Self = serde_json::from_str(&text).map_err(|source| FixtureError::Parse {
            path: path.to_path_buf(),
            source,
        })?;
        file.check_shape().map_err(|message| FixtureError::Invalid {
            path: path.to_path_buf(),
            message,
        })?;
        Ok(file)
    }

    fn check_shape(&self) -> Result<(), String> {
        let mut names = std::collections::BTreeSet::new();
        for c in &self.checks {
            if !names.insert(&c.name) {
                return Err(format!("duplicate check name `{}`", c.name));
            }
            if !recipes::RECIPES.contains(&c.recipe.as_str()) {
                return Err(format!("check `{}`: unknown recipe `{}`", c.name, c.recipe));
            }
            if c.anchor.trim().is_empty() {
                return Err(format!("check `{}`: empty anchor", c.name));
            }
            if c.provenance == Provenance::Derived && c.oracle.is_none() {
                return Err(format!("check `{}`: DERIVED checks need an oracle", c.name));
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), FixtureError> {
        let text = serde_json::to_string_pretty(self).expect("fixture file serializes") + "\n";
        std::fs::write(path, text).map_err(|source| FixtureError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Checks whose name matches `filter`, sorted by name.
    pub fn select(&self, filter: Option<&str>) -> Result<Vec<&Check>, FixtureError> {
        let pattern = filter.map(glob::Pattern::new).transpose()?;
        let mut out: Vec<&Check> = self
            .checks
            .iter()
            .filter(|c| pattern.as_ref().map_or(true, |p| p.matches(&c.name)))
            .collect();
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }

    /// Recomputes `expected` for the selected `DERIVED` checks with their
    /// oracles. Returns the names that were updated.
    pub fn regenerate(&mut self, filter: Option<&str>) -> Result<Vec<String>, String> {
        let pattern = filter.map(glob::Pattern::new).transpose().map_err(|e| e.to_string())?;
        let targets: Vec<usize> = (0..self.checks.len())
            .filter(|&i| {
                let c = &self.checks[i];
                c.provenance == Provenance::Derived && pattern.as_ref().map_or(true, |p| p.matches(&c.name))
            })
            .collect();
        let values = targets
            .par_iter()
            .map(|&i| {
                let c = &self.checks[i];
                let oracle = c.oracle.as_deref().expect("shape checked");
                recipes::run_oracle(oracle, &c.args).map_err(|e| format!("{}: {e}", c.name))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut names = Vec::new();
        for (i, v) in targets.into_iter().zip(values) {
            let c = &mut self.checks[i];
            c.expected = v;
            c.frozen_by = Some(format!("oracle `{}` via --regenerate-fixtures", c.oracle.as_deref().unwrap_or("")));
            names.push(c.name.clone());
        }
        names.sort();
        Ok(names)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub description: String,
    pub anchor: String,
    pub provenance: Provenance,
    pub expected: Value,
    pub actual: Option<Value>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

fn run_check(c: &Check) -> CheckResult {
    let (actual, error) = if c.expected.is_null() {
        (None, Some("expectation not frozen; run --regenerate-fixtures".to_string()))
    } else {
        match recipes::run(&c.recipe, &c.args) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    let pass = actual.as_ref() == Some(&c.expected);
    CheckResult {
        name: c.name.clone(),
        description: c.description.clone(),
        anchor: c.anchor.clone(),
        provenance: c.provenance,
        expected: c.expected.clone(),
        actual,
        pass,
        error,
    }
}

/// Runs the checks in parallel; the report keeps the input order.
pub fn run(checks: &[&Check]) -> Report {
    let results: Vec<CheckResult> = checks.par_iter().map(|c| run_check(c)).collect();
    let passed = results.iter().filter(|r| r.pass).count();
    Report {
        total: results.len(),
        passed,
        failed: results.len() - passed,
        checks: results,
    }
}
