//! Machine-readable audit and comparison reports.
//!
//! JSON is the canonical form (schema in `schema/report.schema.json`). The CSV
//! variants are flat: one row per group per finding (audit) or per group per
//! candidate per finding (compare). Floats are written as the shortest decimal
//! that round-trips, and every list has a fixed order, so identical inputs give
//! byte-identical output.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohort::{AlignedStudy, InclusionPolicy, PredictionSet};
use crate::error::{Error, Result};
use crate::metrics::{self, BootstrapConfig, FairnessSummary};
use crate::positive_sum::{
    self, ChangeNarrative, CompareOptions, GatePolicy, PlotPoint, PositiveSumComparison, Verdict,
};

pub const TOOL: &str = "possum";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ReportConfig {
    pub inclusion: InclusionPolicy,
    pub bootstrap: BootstrapConfig,
    pub gate: GatePolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub tool: String,
    pub report_version: u32,
    pub command: String,
    pub config: ReportConfig,
    pub model_id: String,
    pub summaries: Vec<FairnessSummary>,
    pub macro_average_auroc: f64,
    pub warnings: Vec<String>,
}

/// Per-finding fairness summary of one model.
pub fn audit(set: &PredictionSet, config: &ReportConfig) -> Result<AuditReport> {
    let findings: Vec<&str> = set.findings().collect();
    let summaries = findings
        .par_iter()
        .map(|f| metrics::summarize(set, f, &config.inclusion, &config.bootstrap))
        .collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    for s in &summaries {
        if s.fairness_score.is_none() {
            warnings.push(format!(
                "finding `{}`: {} group(s) pass the inclusion rule, fairness score undefined",
                s.finding, s.included_groups
            ));
        }
        for g in s.per_group.iter().filter(|g| g.low_confidence) {
            warnings.push(format!(
                "finding `{}`, group `{}`: bootstrap interval widened to cover the point estimate",
                s.finding, g.group
            ));
        }
    }
    Ok(AuditReport {
        tool: TOOL.into(),
        report_version: REPORT_VERSION,
        command: "audit".into(),
        config: *config,
        model_id: set.model_id().to_string(),
        macro_average_auroc: metrics::macro_average(&summaries)?,
        summaries,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateResult {
    pub comparison: PositiveSumComparison,
    /// Absent when fewer than two groups are jointly included.
    pub narrative: Option<ChangeNarrative>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingBlock {
    pub finding: String,
    pub results: Vec<CandidateResult>,
    pub pareto_set: Vec<String>,
}

/// Overall AUROC against traditional fairness, one point per model and finding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerformanceFairnessPoint {
    pub model: String,
    pub finding: String,
    pub overall_auroc: f64,
    pub fairness_score: Option<f64>,
}

/// Cross-finding mean of a candidate's gains. Reported only, never gated on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRollup {
    pub candidate: String,
    pub findings: usize,
    pub macro_overall_delta: f64,
    pub macro_min_group_delta: f64,
    pub promoted_everywhere: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub candidate: String,
    pub finding: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub tool: String,
    pub report_version: u32,
    pub command: String,
    pub config: ReportConfig,
    pub baseline_id: String,
    pub candidate_ids: Vec<String>,
    pub findings: Vec<FindingBlock>,
    pub coordinates: Vec<PlotPoint>,
    pub performance_fairness: Vec<PerformanceFairnessPoint>,
    pub rollup: Vec<CandidateRollup>,
    pub skipped: Vec<Skipped>,
    pub all_promoted: bool,
    pub warnings: Vec<String>,
}

impl CompareReport {
    pub fn any_rejected(&self) -> bool {
        !self.all_promoted
    }
}

/// Compares every candidate with the baseline on every finding.
///
/// Findings are ordered lexicographically, candidates in input order. A
/// (candidate, finding) pair without any jointly included group is listed in
/// `skipped` and not gated.
pub fn compare_study(study: &AlignedStudy, config: &ReportConfig) -> Result<CompareReport> {
    let opts = CompareOptions {
        inclusion: config.inclusion,
        epsilon: config.gate.epsilon,
        delta_ci: config.gate.conservative_ci,
        boot: config.bootstrap,
    };
    let baseline = study.baseline();
    let findings: Vec<&str> = baseline.findings().collect();
    let candidate_ids: Vec<&str> = study.candidates().iter().map(|c| c.model_id()).collect();

    let jobs: Vec<(&str, &str)> = findings
        .iter()
        .flat_map(|f| candidate_ids.iter().map(move |c| (*f, *c)))
        .collect();
    let outcomes: Vec<Result<Option<PositiveSumComparison>>> = jobs
        .par_iter()
        .map(|(f, c)| match positive_sum::compare(study, f, c, &opts) {
            Ok(cmp) => Ok(Some(cmp)),
            Err(Error::NoJointlyIncludedGroup(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();

    let mut blocks = Vec::new();
    let mut skipped = Vec::new();
    let mut warnings = Vec::new();
    let mut all_cmps = Vec::new();
    let mut outcomes = outcomes.into_iter();
    for f in &findings {
        let mut results = Vec::new();
        let mut cmps = Vec::new();
        for c in &candidate_ids {
            match outcomes.next().expect("one outcome per job")? {
                Some(cmp) => {
                    let narrative = positive_sum::decompose_disparity_change(&cmp).ok();
                    let verdict = positive_sum::gate(&cmp, &config.gate);
                    cmps.push(cmp.clone());
                    results.push(CandidateResult {
                        comparison: cmp,
                        narrative,
                        verdict,
                    });
                }
                None => {
                    let reason = "no group passes the inclusion rule in both models".to_string();
                    warnings.push(format!("candidate `{c}`, finding `{f}`: skipped, {reason}"));
                    skipped.push(Skipped {
                        candidate: c.to_string(),
                        finding: f.to_string(),
                        reason,
                    });
                }
            }
        }
        let pareto_set = if cmps.is_empty() {
            Vec::new()
        } else {
            positive_sum::pareto_select(&cmps)?
        };
        all_cmps.extend(cmps);
        blocks.push(FindingBlock {
            finding: f.to_string(),
            results,
            pareto_set,
        });
    }

    let models: Vec<&PredictionSet> = std::iter::once(baseline).chain(study.candidates()).collect();
    let performance_fairness = findings
        .iter()
        .flat_map(|f| models.iter().map(move |m| (*f, *m)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(f, m)| {
            let (overall, fairness) = metrics::point_fairness(m, f, &config.inclusion)?;
            Ok(PerformanceFairnessPoint {
                model: m.model_id().to_string(),
                finding: f.to_string(),
                overall_auroc: overall,
                fairness_score: fairness,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let rollup = candidate_ids
        .iter()
        .filter_map(|c| {
            let mine: Vec<&CandidateResult> = blocks
                .iter()
                .flat_map(|b| &b.results)
                .filter(|r| r.comparison.candidate_id == *c)
                .collect();
            if mine.is_empty() {
                return None;
            }
            let n = mine.len() as f64;
            Some(CandidateRollup {
                candidate: c.to_string(),
                findings: mine.len(),
                macro_overall_delta: mine.iter().map(|r| r.comparison.overall_delta).sum::<f64>() / n,
                macro_min_group_delta: mine.iter().map(|r| r.comparison.min_group_delta).sum::<f64>() / n,
                promoted_everywhere: mine.iter().all(|r| r.verdict.is_promote()),
            })
        })
        .collect();

    let all_promoted = blocks.iter().flat_map(|b| &b.results).all(|r| r.verdict.is_promote());
    Ok(CompareReport {
        tool: TOOL.into(),
        report_version: REPORT_VERSION,
        command: "compare".into(),
        config: *config,
        baseline_id: baseline.model_id().to_string(),
        candidate_ids: candidate_ids.iter().map(|c| c.to_string()).collect(),
        findings: blocks,
        coordinates: positive_sum::plot_coordinates(&all_cmps),
        performance_fairness,
        rollup,
        skipped,
        all_promoted,
        warnings,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

/// Flat CSV: one row per group per finding.
pub fn audit_csv(report: &AuditReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "model",
        "finding",
        "overall_auroc",
        "fairness_score",
        "worst_group",
        "group",
        "n_pos",
        "n_neg",
        "auroc",
        "ci_low",
        "ci_high",
        "included",
        "low_confidence",
    ])?;
    for s in &report.summaries {
        for g in &s.per_group {
            w.write_record([
                report.model_id.clone(),
                s.finding.clone(),
                s.overall_auroc.to_string(),
                opt(s.fairness_score),
                s.worst_group.clone().unwrap_or_default(),
                g.group.clone(),
                g.n_pos.to_string(),
                g.n_neg.to_string(),
                opt(g.auroc),
                opt(g.ci.map(|c| c.low)),
                opt(g.ci.map(|c| c.high)),
                g.included.to_string(),
                g.low_confidence.to_string(),
            ])?;
        }
    }
    finish(w)
}

/// Flat CSV: one row per group per candidate per finding.
pub fn compare_csv(report: &CompareReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "finding",
        "candidate",
        "group",
        "n_pos",
        "n_neg",
        "baseline_auroc",
        "candidate_auroc",
        "delta",
        "jointly_included",
        "overall_delta",
        "min_group_delta",
        "min_group",
        "disparity_change",
        "classification",
        "narrative",
        "verdict",
    ])?;
    for b in &report.findings {
        for r in &b.results {
            let c = &r.comparison;
            let verdict = if r.verdict.is_promote() { "promote" } else { "reject" };
            let narrative = r.narrative.as_ref().map(|n| snake(&n.kind)).unwrap_or_default();
            for g in &c.group_deltas {
                w.write_record([
                    c.finding.clone(),
                    c.candidate_id.clone(),
                    g.group.clone(),
                    g.n_pos.to_string(),
                    g.n_neg.to_string(),
                    opt(g.baseline_auroc),
                    opt(g.candidate_auroc),
                    opt(g.delta),
                    g.jointly_included.to_string(),
                    c.overall_delta.to_string(),
                    c.min_group_delta.to_string(),
                    c.min_group.clone(),
                    c.disparity_change.to_string(),
                    snake(&c.classification),
                    narrative.clone(),
                    verdict.to_string(),
                ])?;
            }
        }
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
