//! Baseline-relative comparison of candidate models.
//!
//! A candidate is judged on two gains relative to the baseline: the change in
//! overall AUROC, and the smallest change in AUROC across protected subgroups.
//! A wider gap between subgroups is acceptable when neither gain is negative.
//! It is harmful when the overall performance drops, or when some subgroup
//! loses performance.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cohort::{AlignedStudy, InclusionPolicy, PredictionRecord};
use crate::error::{Error, Result};
use crate::metrics::{self, auroc, largest_disparity, BootstrapConfig, Interval};
use crate::rng::stream_key;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDelta {
    pub group: String,
    pub n_pos: usize,
    pub n_neg: usize,
    pub baseline_auroc: Option<f64>,
    pub candidate_auroc: Option<f64>,
    /// `candidate_auroc - baseline_auroc`, when both are defined.
    pub delta: Option<f64>,
    /// Included under the policy in both models' evaluations.
    pub jointly_included: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_ci: Option<Interval>,
}

impl GroupDelta {
    pub fn new(group: impl Into<String>, baseline_auroc: f64, candidate_auroc: f64, jointly_included: bool) -> Self {
        Self {
            group: group.into(),
            n_pos: 0,
            n_neg: 0,
            baseline_auroc: Some(baseline_auroc),
            candidate_auroc: Some(candidate_auroc),
            delta: Some(candidate_auroc - baseline_auroc),
            jointly_included,
            delta_ci: None,
        }
    }

    fn joint_delta(&self) -> Option<f64> {
        if self.jointly_included {
            self.delta
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NonHarmful,
    HarmfulToSubgroup,
    HarmfulToOverall,
    HarmfulBoth,
}

impl Classification {
    pub fn is_harmful(self) -> bool {
        self != Classification::NonHarmful
    }
}

/// Maps the two gains to a class, treating `[-epsilon, 0)` as no loss.
pub fn classify(overall_delta: f64, min_group_delta: f64, epsilon: f64) -> Classification {
    let overall_ok = overall_delta >= -epsilon;
    let groups_ok = min_group_delta >= -epsilon;
    match (overall_ok, groups_ok) {
        (true, true) => Classification::NonHarmful,
        (true, false) => Classification::HarmfulToSubgroup,
        (false, true) => Classification::HarmfulToOverall,
        (false, false) => Classification::HarmfulBoth,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositiveSumComparison {
    pub finding: String,
    pub baseline_id: String,
    pub candidate_id: String,
    pub baseline_overall_auroc: f64,
    pub candidate_overall_auroc: f64,
    pub overall_delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overall_delta_ci: Option<Interval>,
    pub group_deltas: Vec<GroupDelta>,
    /// Smallest delta over jointly included groups.
    pub min_group_delta: f64,
    pub min_group: String,
    pub classification: Classification,
    pub epsilon: f64,
    /// Largest AUROC gap among jointly included groups, per model.
    pub baseline_disparity: f64,
    pub candidate_disparity: f64,
    pub disparity_change: f64,
}

impl PositiveSumComparison {
    /// Builds a comparison from point estimates. `group_deltas` are sorted by group id.
    pub fn from_parts(
        finding: impl Into<String>,
        baseline_id: impl Into<String>,
        candidate_id: impl Into<String>,
        baseline_overall_auroc: f64,
        candidate_overall_auroc: f64,
        mut group_deltas: Vec<GroupDelta>,
        epsilon: f64,
    ) -> Result<Self> {
        let finding = finding.into();
        if epsilon.is_nan() || epsilon < 0.0 {
            return Err(Error::InvalidArgument(format!("epsilon must be >= 0, got {epsilon}")));
        }
        group_deltas.sort_by(|a, b| a.group.cmp(&b.group));
        let (min_group, min_group_delta) = group_deltas
            .iter()
            .filter_map(|g| g.joint_delta().map(|d| (g.group.as_str(), d)))
            .min_by(|a, b| match a.1.total_cmp(&b.1) {
                Ordering::Equal => a.0.cmp(b.0),
                o => o,
            })
            .ok_or_else(|| Error::NoJointlyIncludedGroup(finding.clone()))?;
        let min_group = min_group.to_string();

        let joint = || group_deltas.iter().filter(|g| g.jointly_included);
        let baseline_disparity = largest_disparity(joint().filter_map(|g| g.baseline_auroc)).unwrap_or(0.0);
        let candidate_disparity = largest_disparity(joint().filter_map(|g| g.candidate_auroc)).unwrap_or(0.0);

        let overall_delta = candidate_overall_auroc - baseline_overall_auroc;
        Ok(Self {
            finding,
            baseline_id: baseline_id.into(),
            candidate_id: candidate_id.into(),
            baseline_overall_auroc,
            candidate_overall_auroc,
            overall_delta,
            overall_delta_ci: None,
            classification: classify(overall_delta, min_group_delta, epsilon),
            group_deltas,
            min_group_delta,
            min_group,
            epsilon,
            baseline_disparity,
            candidate_disparity,
            disparity_change: candidate_disparity - baseline_disparity,
        })
    }

    pub fn jointly_included(&self) -> impl Iterator<Item = &GroupDelta> {
        self.group_deltas
            .iter()
            .filter(|g| g.jointly_included && g.delta.is_some())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    pub inclusion: InclusionPolicy,
    pub epsilon: f64,
    /// Paired bootstrap intervals for every delta (needed by the conservative gate).
    pub delta_ci: bool,
    pub boot: BootstrapConfig,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            inclusion: InclusionPolicy::default(),
            epsilon: 0.0,
            delta_ci: false,
            boot: BootstrapConfig::default(),
        }
    }
}

struct Paired {
    base_pos: Vec<f64>,
    base_neg: Vec<f64>,
    cand_pos: Vec<f64>,
    cand_neg: Vec<f64>,
}

impl Paired {
    fn new() -> Self {
        Self {
            base_pos: Vec::new(),
            base_neg: Vec::new(),
            cand_pos: Vec::new(),
            cand_neg: Vec::new(),
        }
    }

    fn push(&mut self, b: &PredictionRecord, c: &PredictionRecord) {
        if b.label {
            self.base_pos.push(b.score);
            self.cand_pos.push(c.score);
        } else {
            self.base_neg.push(b.score);
            self.cand_neg.push(c.score);
        }
    }

    fn aurocs(&self) -> Option<(f64, f64)> {
        let b = auroc(&self.base_pos, &self.base_neg).ok()?;
        let c = auroc(&self.cand_pos, &self.cand_neg).ok()?;
        Some((b, c))
    }

    /// Stratified paired bootstrap of the AUROC difference: both models are
    /// scored on the same resampled examples.
    fn delta_ci(&self, point: f64, boot: &BootstrapConfig, key: u64) -> Result<Interval> {
        let pick = |v: &[f64], idx: &[usize]| idx.iter().map(|&i| v[i]).collect::<Vec<f64>>();
        let mut stats =
            metrics::stratified_bootstrap(self.base_pos.len(), self.base_neg.len(), boot, key, |pi, ni| {
                let b = auroc(&pick(&self.base_pos, pi), &pick(&self.base_neg, ni))?;
                let c = auroc(&pick(&self.cand_pos, pi), &pick(&self.cand_neg, ni))?;
                Ok(c - b)
            })?;
        Ok(metrics::finalize_delta(&mut stats, point, boot.confidence_level).interval)
    }
}

/// Compares one candidate with the baseline on one finding.
pub fn compare(
    study: &AlignedStudy,
    finding: &str,
    candidate_id: &str,
    opts: &CompareOptions,
) -> Result<PositiveSumComparison> {
    let baseline = study.baseline();
    let candidate = study.candidate(candidate_id)?;

    let mut overall = Paired::new();
    let mut groups: std::collections::BTreeMap<&str, Paired> = Default::default();
    for (b, c) in baseline
        .finding_records(finding)?
        .zip(candidate.finding_records(finding)?)
    {
        debug_assert_eq!((&b.example_id, b.label), (&c.example_id, c.label));
        overall.push(b, c);
        groups.entry(b.group.as_str()).or_insert_with(Paired::new).push(b, c);
    }

    let mut deltas = Vec::with_capacity(groups.len());
    for (group, p) in &groups {
        let (n_pos, n_neg) = (p.base_pos.len(), p.base_neg.len());
        // Labels are shared after alignment, so the per-model checks coincide.
        let jointly =
            opts.inclusion.includes(n_pos, n_neg) && opts.inclusion.includes(p.cand_pos.len(), p.cand_neg.len());
        let aurocs = p.aurocs();
        let mut gd = GroupDelta {
            group: group.to_string(),
            n_pos,
            n_neg,
            baseline_auroc: aurocs.map(|a| a.0),
            candidate_auroc: aurocs.map(|a| a.1),
            delta: aurocs.map(|(b, c)| c - b),
            jointly_included: jointly,
            delta_ci: None,
        };
        if opts.delta_ci && jointly {
            if let Some(d) = gd.delta {
                let key = stream_key(&["delta", finding, candidate_id, group]);
                gd.delta_ci = Some(p.delta_ci(d, &opts.boot, key)?);
            }
        }
        deltas.push(gd);
    }

    let (base_overall, cand_overall) = overall
        .aurocs()
        .ok_or(Error::UndefinedAuroc("finding lacks one of the classes"))?;
    let mut cmp = PositiveSumComparison::from_parts(
        finding,
        baseline.model_id(),
        candidate_id,
        base_overall,
        cand_overall,
        deltas,
        opts.epsilon,
    )?;
    if opts.delta_ci {
        let key = stream_key(&["delta", finding, candidate_id]);
        cmp.overall_delta_ci = Some(overall.delta_ci(cmp.overall_delta, &opts.boot, key)?);
    }
    Ok(cmp)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GatePolicy {
    pub epsilon: f64,
    pub require_overall_gain: bool,
    pub require_no_group_loss: bool,
    /// Count a loss only when the delta's bootstrap interval lies entirely
    /// below `-epsilon`. Falls back to point estimates when no interval was computed.
    pub conservative_ci: bool,
}

impl Default for GatePolicy {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            require_overall_gain: true,
            require_no_group_loss: true,
            conservative_ci: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum RejectReason {
    OverallLoss { delta: f64 },
    GroupLoss { group: String, delta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decision", content = "reasons", rename_all = "snake_case")]
pub enum Verdict {
    Promote,
    Reject(Vec<RejectReason>),
}

impl Verdict {
    pub fn is_promote(&self) -> bool {
        matches!(self, Verdict::Promote)
    }
}

/// Hard-constraint gate: no overall loss and no subgroup loss beyond `epsilon`.
pub fn gate(cmp: &PositiveSumComparison, policy: &GatePolicy) -> Verdict {
    let eps = policy.epsilon;
    let loses = |point: f64, ci: Option<Interval>| match (policy.conservative_ci, ci) {
        (true, Some(ci)) => ci.high < -eps,
        _ => point < -eps,
    };
    let mut reasons = Vec::new();
    if policy.require_overall_gain && loses(cmp.overall_delta, cmp.overall_delta_ci) {
        reasons.push(RejectReason::OverallLoss {
            delta: cmp.overall_delta,
        });
    }
    if policy.require_no_group_loss {
        for g in cmp.jointly_included() {
            let d = g.delta.expect("filtered on delta");
            if loses(d, g.delta_ci) {
                reasons.push(RejectReason::GroupLoss {
                    group: g.group.clone(),
                    delta: d,
                });
            }
        }
    }
    if reasons.is_empty() {
        Verdict::Promote
    } else {
        Verdict::Reject(reasons)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChangeKind {
    AdvantagedImproved,
    AllImprovedUnevenly,
    WorstGroupDeclined,
    AllDeclinedUnevenly,
    Mixed,
    NoChange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Up,
    Flat,
    Down,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSign {
    pub group: String,
    pub delta: f64,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChangeNarrative {
    pub kind: ChangeKind,
    pub detail: Vec<GroupSign>,
}

/// Sign pattern of jointly included group deltas, with `[-ε, ε]` as the zero band.
pub fn narrative_kind(deltas: &[f64], epsilon: f64) -> ChangeKind {
    let up = deltas.iter().filter(|&&d| d > epsilon).count();
    let down = deltas.iter().filter(|&&d| d < -epsilon).count();
    let n = deltas.len();
    let flat = n - up - down;
    if flat == n {
        ChangeKind::NoChange
    } else if up == 1 && flat == n - 1 {
        ChangeKind::AdvantagedImproved
    } else if down == 1 && flat == n - 1 {
        ChangeKind::WorstGroupDeclined
    } else if up == n && largest_disparity(deltas.iter().copied()).is_some_and(|spread| spread > epsilon) {
        ChangeKind::AllImprovedUnevenly
    } else if down == n {
        ChangeKind::AllDeclinedUnevenly
    } else {
        ChangeKind::Mixed
    }
}

/// Explains a change in disparity by the per-group delta signs.
pub fn decompose_disparity_change(cmp: &PositiveSumComparison) -> Result<ChangeNarrative> {
    let eps = cmp.epsilon;
    let detail: Vec<GroupSign> = cmp
        .jointly_included()
        .map(|g| {
            let delta = g.delta.expect("filtered on delta");
            let sign = if delta > eps {
                Sign::Up
            } else if delta < -eps {
                Sign::Down
            } else {
                Sign::Flat
            };
            GroupSign {
                group: g.group.clone(),
                delta,
                sign,
            }
        })
        .collect();
    if detail.len() < 2 {
        return Err(Error::TooFewGroups(detail.len()));
    }
    let deltas: Vec<f64> = detail.iter().map(|g| g.delta).collect();
    Ok(ChangeNarrative {
        kind: narrative_kind(&deltas, eps),
        detail,
    })
}

/// `a` is at least as good in both gains and strictly better in one.
pub fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 >= b.0 && a.1 >= b.1 && (a.0 > b.0 || a.1 > b.1)
}

/// Candidates not dominated in (overall_delta, min_group_delta), ordered by
/// descending overall_delta, then descending min_group_delta, then id.
pub fn pareto_select(cmps: &[PositiveSumComparison]) -> Result<Vec<String>> {
    let first = cmps
        .first()
        .ok_or_else(|| Error::InvalidArgument("pareto selection over no candidates".into()))?;
    if let Some(other) = cmps.iter().find(|c| c.finding != first.finding) {
        return Err(Error::InvalidArgument(format!(
            "pareto selection mixes findings `{}` and `{}`",
            first.finding, other.finding
        )));
    }
    let mut order: Vec<&PositiveSumComparison> = cmps.iter().collect();
    order.sort_by(|a, b| {
        b.overall_delta
            .total_cmp(&a.overall_delta)
            .then(b.min_group_delta.total_cmp(&a.min_group_delta))
            .then(a.candidate_id.cmp(&b.candidate_id))
    });

    // Sweep in descending x. A point survives when its y beats every point
    // with strictly larger x and it is the top y among points sharing its x.
    let mut front = Vec::new();
    let mut best_y_left = f64::NEG_INFINITY;
    let mut i = 0;
    while i < order.len() {
        let x = order[i].overall_delta;
        let mut j = i;
        while j < order.len() && order[j].overall_delta == x {
            j += 1;
        }
        let top_y = order[i].min_group_delta;
        if top_y > best_y_left {
            front.extend(
                order[i..j]
                    .iter()
                    .take_while(|c| c.min_group_delta == top_y)
                    .map(|c| c.candidate_id.clone()),
            );
        }
        best_y_left = best_y_left.max(top_y);
        i = j;
    }
    Ok(front)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub candidate: String,
    pub finding: String,
    /// Overall AUROC change.
    pub x: f64,
    /// Smallest subgroup AUROC change.
    pub y: f64,
}

pub fn plot_coordinates(cmps: &[PositiveSumComparison]) -> Vec<PlotPoint> {
    cmps.iter()
        .map(|c| PlotPoint {
            candidate: c.candidate_id.clone(),
            finding: c.finding.clone(),
            x: c.overall_delta,
            y: c.min_group_delta,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmp_from(groups: &[(&str, f64, f64)], overall: (f64, f64), eps: f64) -> PositiveSumComparison {
        let gd = groups
            .iter()
            .map(|(g, b, c)| GroupDelta::new(*g, *b, *c, true))
            .collect();
        PositiveSumComparison::from_parts("f", "base", "cand", overall.0, overall.1, gd, eps).unwrap()
    }

    #[test]
    fn advantaged_group_improves() {
        let c = cmp_from(&[("A", 0.7, 0.8), ("B", 0.7, 0.7)], (0.7, 0.75), 0.0);
        assert!(c.overall_delta > 0.0);
        assert_eq!(c.min_group_delta, 0.0);
        assert_eq!(c.min_group, "B");
        assert_eq!(c.classification, Classification::NonHarmful);
        assert!((c.disparity_change - 0.1).abs() < 1e-12);
        assert_eq!(
            decompose_disparity_change(&c).unwrap().kind,
            ChangeKind::AdvantagedImproved
        );
    }

    #[test]
    fn subgroup_harm() {
        let c = cmp_from(&[("A", 0.7, 0.8), ("B", 0.7, 0.65)], (0.7, 0.72), 0.0);
        assert!((c.min_group_delta + 0.05).abs() < 1e-12);
        assert_eq!(c.classification, Classification::HarmfulToSubgroup);
        match gate(&c, &GatePolicy::default()) {
            Verdict::Reject(r) => assert!(matches!(&r[..], [RejectReason::GroupLoss { group, .. }] if group == "B")),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn classify_quadrants() {
        assert_eq!(classify(0.0, 0.0, 0.0), Classification::NonHarmful);
        assert_eq!(classify(0.1, -0.01, 0.0), Classification::HarmfulToSubgroup);
        assert_eq!(classify(-0.01, 0.1, 0.0), Classification::HarmfulToOverall);
        assert_eq!(classify(-0.01, -0.01, 0.0), Classification::HarmfulBoth);
        assert_eq!(classify(-0.01, -0.01, 0.01), Classification::NonHarmful);
    }

    #[test]
    fn gate_examples() {
        let promote = cmp_from(&[("A", 0.7, 0.73), ("B", 0.7, 0.7)], (0.70, 0.72), 0.0);
        assert_eq!(gate(&promote, &GatePolicy::default()), Verdict::Promote);

        let small_loss = cmp_from(&[("A", 0.75, 0.8), ("B", 0.7, 0.69)], (0.70, 0.72), 0.0);
        assert!(matches!(gate(&small_loss, &GatePolicy::default()), Verdict::Reject(_)));
        let tolerant = GatePolicy {
            epsilon: 0.02,
            ..Default::default()
        };
        assert_eq!(gate(&small_loss, &tolerant), Verdict::Promote);
        let relaxed = GatePolicy {
            require_no_group_loss: false,
            ..Default::default()
        };
        assert_eq!(gate(&small_loss, &relaxed), Verdict::Promote);
    }

    #[test]
    fn gate_lists_every_violation() {
        let c = cmp_from(&[("A", 0.8, 0.7), ("B", 0.7, 0.6), ("C", 0.7, 0.75)], (0.75, 0.70), 0.0);
        match gate(&c, &GatePolicy::default()) {
            Verdict::Reject(r) => assert_eq!(r.len(), 3),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn conservative_gate_uses_interval() {
        let mut c = cmp_from(&[("A", 0.8, 0.79), ("B", 0.7, 0.72)], (0.75, 0.76), 0.0);
        c.group_deltas[0].delta_ci = Some(Interval { low: -0.04, high: 0.02 });
        let cons = GatePolicy {
            conservative_ci: true,
            ..Default::default()
        };
        assert_eq!(gate(&c, &cons), Verdict::Promote);
        assert!(!gate(&c, &GatePolicy::default()).is_promote());
        c.group_deltas[0].delta_ci = Some(Interval {
            low: -0.04,
            high: -0.001,
        });
        assert!(!gate(&c, &cons).is_promote());
    }

    #[test]
    fn narrative_kinds() {
        assert_eq!(narrative_kind(&[0.1, 0.0, 0.0], 0.0), ChangeKind::AdvantagedImproved);
        assert_eq!(
            narrative_kind(&[0.05, 0.02, 0.08], 0.0),
            ChangeKind::AllImprovedUnevenly
        );
        assert_eq!(narrative_kind(&[0.0, 0.0], 0.0), ChangeKind::NoChange);
        assert_eq!(narrative_kind(&[0.0, -0.03, 0.0], 0.0), ChangeKind::WorstGroupDeclined);
        assert_eq!(narrative_kind(&[-0.01, -0.03], 0.0), ChangeKind::AllDeclinedUnevenly);
        assert_eq!(narrative_kind(&[0.02, -0.03, 0.01], 0.0), ChangeKind::Mixed);
        assert_eq!(narrative_kind(&[0.02, 0.02], 0.0), ChangeKind::Mixed);
        assert_eq!(narrative_kind(&[0.005, -0.005], 0.01), ChangeKind::NoChange);
    }

    #[test]
    fn decompose_needs_two_groups() {
        let c = cmp_from(&[("A", 0.7, 0.8)], (0.7, 0.8), 0.0);
        assert!(matches!(decompose_disparity_change(&c), Err(Error::TooFewGroups(1))));
    }

    #[test]
    fn no_jointly_included_group() {
        let gd = vec![GroupDelta::new("A", 0.7, 0.8, false)];
        assert!(matches!(
            PositiveSumComparison::from_parts("f", "b", "c", 0.7, 0.8, gd, 0.0),
            Err(Error::NoJointlyIncludedGroup(_))
        ));
    }

    fn point(id: &str, x: f64, y: f64) -> PositiveSumComparison {
        let mut c = cmp_from(&[("A", 0.0, y)], (0.0, x), 0.0);
        c.candidate_id = id.into();
        c
    }

    #[test]
    fn pareto_examples() {
        let cmps = [point("a", 0.02, 0.01), point("b", 0.01, 0.03), point("c", 0.005, 0.0)];
        assert_eq!(pareto_select(&cmps).unwrap(), ["a", "b"]);
        assert_eq!(pareto_select(&cmps[2..]).unwrap(), ["c"]);
        assert!(pareto_select(&[]).is_err());
    }

    #[test]
    fn pareto_ties() {
        // Identical points do not dominate each other; same x with lower y is dominated.
        let cmps = [
            point("z", 0.01, 0.01),
            point("y", 0.01, 0.01),
            point("x", 0.01, 0.0),
            point("w", 0.0, 0.01),
        ];
        assert_eq!(pareto_select(&cmps).unwrap(), ["y", "z"]);
    }

    #[test]
    fn pareto_rejects_mixed_findings() {
        let mut b = point("b", 0.0, 0.0);
        b.finding = "other".into();
        assert!(pareto_select(&[point("a", 0.0, 0.0), b]).is_err());
    }

    #[test]
    fn coordinates_of_no_change() {
        let c = cmp_from(&[("A", 0.7, 0.7), ("B", 0.6, 0.6)], (0.65, 0.65), 0.0);
        let p = plot_coordinates(&[c]);
        assert_eq!((p[0].x, p[0].y), (0.0, 0.0));
    }
}
