//! Corpus files: `# expect: field=value` headers, then the equation.
//!
//! Recognized fields: `parse` (`ok` or `error`), `bureau`, `class`,
//! `resonances` (comma-separated, with multiplicity), `h`, `complete`,
//! `constant`, `compatibility` (`pass`, `fail` or `skipped`) and `verdict`
//! (condition verdict, or `none`). Other `#` lines are comments.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::report::{analyze, AnalysisReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusCase {
    pub name: String,
    pub expectations: Vec<(String, String)>,
    pub equation: String,
}

pub fn parse_case(name: &str, text: &str) -> CorpusCase {
    let mut expectations = Vec::new();
    let mut body = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(e) = rest.trim().strip_prefix("expect:") {
                if let Some((k, v)) = e.split_once('=') {
                    expectations.push((k.trim().to_string(), v.trim().to_string()));
                }
            }
        } else if !line.is_empty() {
            body.push(line);
        }
    }
    CorpusCase {
        name: name.to_string(),
        expectations,
        equation: body.join(" "),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub file: String,
    pub equation: String,
    pub checks: usize,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
}

fn actual_value(field: &str, report: Option<&AnalysisReport>) -> String {
    let Some(r) = report else {
        return match field {
            "parse" => "error".into(),
            _ => "-".into(),
        };
    };
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    match field {
        "parse" => "ok".into(),
        "bureau" => r.bureau.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
        "class" => r.class.clone(),
        "resonances" => join(&r.resonances),
        "h" => r.h.clone().unwrap_or_else(|| "-".into()),
        "complete" => r.complete.to_string(),
        "constant" => r.constant.to_string(),
        "compatibility" => r.compatibility_status.as_str().into(),
        "verdict" => r
            .conditions
            .as_ref()
            .map(|c| c.verdict.clone())
            .unwrap_or_else(|| "none".into()),
        _ => format!("unknown field '{field}'"),
    }
}

fn normalize(field: &str, v: &str) -> String {
    if field == "resonances" {
        v.split(',').map(str::trim).collect::<Vec<_>>().join(",")
    } else {
        v.to_string()
    }
}

pub fn run_case(case: &CorpusCase) -> CaseResult {
    let report = painleve_core::parse(&case.equation)
        .ok()
        .map(|eq| analyze(&case.equation, &eq, None, None));
    let mismatches: Vec<Mismatch> = case
        .expectations
        .iter()
        .filter_map(|(k, v)| {
            let actual = actual_value(k, report.as_ref());
            (normalize(k, v) != actual).then(|| Mismatch {
                field: k.clone(),
                expected: v.clone(),
                actual,
            })
        })
        .collect();
    CaseResult {
        file: case.name.clone(),
        equation: case.equation.clone(),
        checks: case.expectations.len(),
        passed: mismatches.is_empty(),
        mismatches,
    }
}

/// `.ode` files of `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ode"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_corpus(dir: &Path) -> io::Result<Vec<CaseResult>> {
    corpus_files(dir)?
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p)?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(run_case(&parse_case(&name, &text)))
        })
        .collect()
}

pub fn corpus_text(results: &[CaseResult]) -> String {
    let mut s = String::new();
    for r in results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{mark}  {:<32} {}\n", r.file, r.equation));
        for m in &r.mismatches {
            s.push_str(&format!(
                "      {}: expected {}, got {}\n",
                m.field, m.expected, m.actual
            ));
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    s.push_str(&format!(
        "{} cases, {} passed, {} failed\n",
        results.len(),
        results.len() - failed,
        failed
    ));
    s
}
