//! Table and structured renderings of command results.

use std::fmt::Write;

use gesture_mapping::criteria::{CriterionContext, QualityReport};
use gesture_mapping::mapping::{mapping_entries, MappingEntry};
use gesture_mapping::optimizer::{OptimizationResult, SolverConfig, TracePoint};
use gesture_mapping::{Mapping, Vocabulary};
use serde::Serialize;

use crate::config::Format;

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct EnumerationOutput {
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    gestures: Option<Vec<String>>,
}

pub fn enumeration(vocab: &Vocabulary, count_only: bool, format: Format) -> String {
    let fingerprints = || vocab.iter().map(|g| g.fingerprint()).collect::<Vec<_>>();
    match format {
        Format::Structured => json(&EnumerationOutput {
            count: vocab.len(),
            gestures: (!count_only).then(fingerprints),
        }),
        Format::Table => {
            let mut out = format!("{} gestures\n", vocab.len());
            if !count_only {
                for fp in fingerprints() {
                    out.push_str(&fp);
                    out.push('\n');
                }
            }
            out
        }
    }
}

fn entries(ctx: &CriterionContext, assignment: &[usize]) -> Vec<MappingEntry> {
    mapping_entries(&Mapping::from_assignment(ctx.catalog(), assignment), ctx.vocabulary())
}

fn report_table(out: &mut String, report: &QualityReport) {
    let width = report.per_criterion.iter().map(|r| r.criterion.len()).max().unwrap_or(0).max(9);
    writeln!(out, "{:<width$}  {:>6}  {:>12}", "criterion", "weight", "score").unwrap();
    for row in &report.per_criterion {
        writeln!(out, "{:<width$}  {:>6.3}  {:>12.10}", row.criterion, row.weight, row.score).unwrap();
    }
    let normalization = serde_json::to_value(report.normalization).expect("serializable");
    writeln!(
        out,
        "q̂ = {:.12}  (n = {}, normalization {})",
        report.aggregate,
        report.n,
        normalization.as_str().unwrap_or_default()
    )
    .unwrap();
}

fn mapping_table(out: &mut String, rows: &[MappingEntry]) {
    let width = rows.iter().map(|e| e.task.len()).max().unwrap_or(0).max(4);
    writeln!(out, "{:<width$}  gesture", "task").unwrap();
    for e in rows {
        writeln!(out, "{:<width$}  {}", e.task, e.gesture_fingerprint).unwrap();
    }
}

#[derive(Serialize)]
struct ScoreOutput<'a> {
    mapping: Vec<MappingEntry>,
    report: &'a QualityReport,
}

pub fn score(ctx: &CriterionContext, assignment: &[usize], report: &QualityReport, format: Format) -> String {
    let mapping = entries(ctx, assignment);
    match format {
        Format::Structured => json(&ScoreOutput { mapping, report }),
        Format::Table => {
            let mut out = String::new();
            report_table(&mut out, report);
            out
        }
    }
}

#[derive(Serialize)]
struct OptimizeOutput<'a> {
    algorithm: &'static str,
    seed: u64,
    optimality: &'static str,
    iterations_used: u64,
    aggregate: f64,
    mapping: Vec<MappingEntry>,
    assignment: &'a [usize],
    report: &'a QualityReport,
    trace: &'a [TracePoint],
}

pub fn optimization(ctx: &CriterionContext, solver: &SolverConfig, result: &OptimizationResult, format: Format) -> String {
    let mapping = entries(ctx, &result.assignment);
    match format {
        Format::Structured => json(&OptimizeOutput {
            algorithm: solver.algorithm.as_str(),
            seed: solver.seed,
            optimality: result.optimality.as_str(),
            iterations_used: result.iterations_used,
            aggregate: result.report.aggregate,
            mapping,
            assignment: &result.assignment,
            report: &result.report,
            trace: &result.trace,
        }),
        Format::Table => {
            let mut out = String::new();
            mapping_table(&mut out, &mapping);
            out.push('\n');
            report_table(&mut out, &result.report);
            writeln!(out, "optimality: {}", result.optimality.as_str()).unwrap();
            writeln!(out, "iterations: {}", result.iterations_used).unwrap();
            writeln!(out, "solver: {} (seed {})", solver.algorithm.as_str(), solver.seed).unwrap();
            out
        }
    }
}
