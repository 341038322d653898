//! Result reporting: human-readable text and line-delimited JSON.
//!
//! The `jsonl` format emits one object per assertion —
//! `{"case","target","check","passed","explanation"}` — followed by one
//! summary line `{"summary":{"cases","passed","failed"}}`.

use std::io::{self, Write};

use serde_json::json;

use super::TestResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    Jsonl,
}

pub fn write_report(
    out: &mut dyn Write,
    results: &[TestResult],
    format: ReportFormat,
) -> io::Result<()> {
    match format {
        ReportFormat::Text => write_text(out, results),
        ReportFormat::Jsonl => write_jsonl(out, results),
    }
}

fn write_text(out: &mut dyn Write, results: &[TestResult]) -> io::Result<()> {
    for result in results {
        let assertions = result.per_assertion.len();
        if result.passed() {
            writeln!(out, "PASS {} ({} assertion(s))", result.case_name, assertions)?;
            continue;
        }
        let passed = result
            .per_assertion
            .iter()
            .filter(|(_, v)| v.passed)
            .count();
        writeln!(
            out,
            "FAIL {} ({passed}/{assertions} assertion(s) passed)",
            result.case_name
        )?;
        for diagnostic in &result.diagnostics {
            writeln!(out, "    error: {diagnostic}")?;
        }
        for (spec, verdict) in &result.per_assertion {
            if verdict.passed {
                continue;
            }
            let target = spec
                .target
                .as_ref()
                .map(|t| t.display())
                .unwrap_or_default();
            writeln!(out, "    [{} {target}]", spec.check.name())?;
            for line in verdict.explanation.lines() {
                writeln!(out, "        {line}")?;
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    writeln!(
        out,
        "summary: {} case(s), {} passed, {} failed",
        results.len(),
        results.len() - failed,
        failed
    )
}

fn write_jsonl(out: &mut dyn Write, results: &[TestResult]) -> io::Result<()> {
    for result in results {
        for (spec, verdict) in &result.per_assertion {
            let target = match &spec.target {
                Some(t) => json!(t.display()),
                None => json!(null),
            };
            let line = json!({
                "case": result.case_name,
                "target": target,
                "check": spec.check.name(),
                "passed": verdict.passed,
                "explanation": verdict.explanation,
            });
            writeln!(out, "{line}")?;
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    let summary = json!({
        "summary": {
            "cases": results.len(),
            "passed": results.len() - failed,
            "failed": failed,
        }
    });
    writeln!(out, "{summary}")
}
