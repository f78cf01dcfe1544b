//! The bundled curated scenarios and a runner over a scenario directory.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::report::{analyze, AnalysisReport};
use crate::scenario::Scenario;
use crate::verifier::Verdict;

pub const SCENARIO_DIR_ENV: &str = "MINPAIR_SCENARIO_DIR";

/// `$MINPAIR_SCENARIO_DIR`, or the scenarios shipped with this crate.
pub fn bundle_dir() -> PathBuf {
    std::env::var_os(SCENARIO_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios")))
}

/// All `*.json` scenarios in `dir`, ordered by id.
pub fn load_dir(dir: &Path) -> Result<Vec<Scenario>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::Io(e.to_string()))?.path();
        if path.extension().is_some_and(|x| x == "json") {
            out.push(Scenario::load(&path)?);
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// One scenario's outcome in a suite run.
#[derive(Debug)]
pub struct SuiteEntry {
    pub id: String,
    pub outcome: Result<AnalysisReport>,
}

#[derive(Debug)]
pub struct SuiteSummary {
    pub entries: Vec<SuiteEntry>,
    pub filter: Option<String>,
}

impl SuiteSummary {
    /// Verdicts passing the name filter, with their scenario id.
    pub fn rows(&self) -> Vec<(&str, &Verdict)> {
        let mut rows = Vec::new();
        for entry in &self.entries {
            if let Ok(r) = &entry.outcome {
                for v in &r.verdicts {
                    if self.filter.as_deref().is_none_or(|f| v.name.contains(f)) {
                        rows.push((entry.id.as_str(), v));
                    }
                }
            }
        }
        rows
    }

    pub fn errors(&self) -> Vec<(&str, &Error)> {
        self.entries
            .iter()
            .filter_map(|e| e.outcome.as_ref().err().map(|err| (e.id.as_str(), err)))
            .collect()
    }

    /// Rows whose status differs from the declared expectation, plus
    /// mismatched expected values.
    pub fn unexpected(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .rows()
            .into_iter()
            .filter(|(_, v)| !v.as_expected())
            .map(|(id, v)| format!("{id} {}: {} ({})", v.name, v.status, v.message))
            .collect();
        for e in &self.entries {
            if let Ok(r) = &e.outcome {
                out.extend(r.expectation_mismatches.iter().map(|m| format!("{}: {m}", e.id)));
            }
        }
        out
    }

    /// 0 when everything is as expected, 1 on a theorem-level surprise, 2 on
    /// an input or certification error.
    pub fn exit_code(&self) -> i32 {
        if !self.errors().is_empty() {
            2
        } else if !self.unexpected().is_empty() {
            1
        } else {
            0
        }
    }

    /// Plain-text table, one line per verdict.
    pub fn table(&self) -> String {
        let mut s = String::new();
        for (id, v) in self.rows() {
            let expect = match v.expected {
                Some(x) => format!(" (expected {x})"),
                None => String::new(),
            };
            let tag = if v.as_expected() { "" } else { "  <-- unexpected" };
            s.push_str(&format!(
                "{id:<4} {:<18} {:<7}{expect} {}{tag}\n",
                v.name,
                v.status.to_string(),
                v.message
            ));
        }
        for (id, e) in self.errors() {
            s.push_str(&format!("{id:<4} ERROR {e}\n"));
        }
        s
    }
}

/// Loads and analyses every scenario in `dir`.
pub fn run_suite(dir: &Path, filter: Option<&str>) -> Result<SuiteSummary> {
    if !dir.is_dir() {
        return Err(Error::Io(format!("scenario directory {} not found", dir.display())));
    }
    let entries = load_dir(dir)?
        .into_iter()
        .map(|sc| SuiteEntry {
            outcome: analyze(&sc),
            id: sc.id,
        })
        .collect();
    Ok(SuiteSummary {
        entries,
        filter: filter.map(str::to_owned),
    })
}
