//! AUROC, stratified bootstrap intervals and the traditional group-fairness
//! score (one minus the largest AUROC gap between included subgroups).

use std::cmp::Ordering;

use rand::RngExt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohort::{InclusionPolicy, PredictionRecord, PredictionSet};
use crate::error::{Error, Result};
use crate::rng::{stream_key, substream};

/// Mann–Whitney statistic in doubled integer form.
///
/// `concordant2 = 2·#(pos > neg) + #(pos == neg)` and `pairs2 = 2·n_pos·n_neg`,
/// so AUROC is `concordant2 / pairs2` with ties credited one half.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub concordant2: u128,
    pub pairs2: u128,
}

impl PairCounts {
    pub fn value(&self) -> f64 {
        self.concordant2 as f64 / self.pairs2 as f64
    }
}

/// Rank-sum computation of the pair counts in O(n log n), average ranks for ties.
pub fn auroc_counts(scores_pos: &[f64], scores_neg: &[f64]) -> Result<PairCounts> {
    if scores_pos.is_empty() {
        return Err(Error::UndefinedAuroc("no positive scores"));
    }
    if scores_neg.is_empty() {
        return Err(Error::UndefinedAuroc("no negative scores"));
    }
    let mut all: Vec<(f64, bool)> = Vec::with_capacity(scores_pos.len() + scores_neg.len());
    for &s in scores_pos {
        if !s.is_finite() {
            return Err(Error::NonFiniteScore);
        }
        all.push((s, true));
    }
    for &s in scores_neg {
        if !s.is_finite() {
            return Err(Error::NonFiniteScore);
        }
        all.push((s, false));
    }
    all.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

    // Twice the positive rank sum. A tie block spanning sorted positions
    // [start, end) has average 1-based rank (start + 1 + end) / 2.
    let mut rank_sum2: u128 = 0;
    let mut start = 0;
    while start < all.len() {
        let mut end = start + 1;
        while end < all.len() && all[end].0 == all[start].0 {
            end += 1;
        }
        let block_pos = all[start..end].iter().filter(|e| e.1).count() as u128;
        rank_sum2 += block_pos * (start as u128 + 1 + end as u128);
        start = end;
    }
    let n_pos = scores_pos.len() as u128;
    let n_neg = scores_neg.len() as u128;
    Ok(PairCounts {
        concordant2: rank_sum2 - n_pos * (n_pos + 1),
        pairs2: 2 * n_pos * n_neg,
    })
}

/// Probability that a random positive outscores a random negative, ties one half.
pub fn auroc(scores_pos: &[f64], scores_neg: &[f64]) -> Result<f64> {
    auroc_counts(scores_pos, scores_neg).map(|c| c.value())
}

/// Splits records into (positive scores, negative scores).
pub fn split_by_label<'a>(records: impl IntoIterator<Item = &'a PredictionRecord>) -> (Vec<f64>, Vec<f64>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in records {
        if r.label {
            pos.push(r.score);
        } else {
            neg.push(r.score);
        }
    }
    (pos, neg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiMethod {
    #[default]
    Percentile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub n_resamples: usize,
    pub confidence_level: f64,
    pub seed: u64,
    pub method: CiMethod,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            n_resamples: 300,
            confidence_level: 0.95,
            seed: 0,
            method: CiMethod::Percentile,
        }
    }
}

impl BootstrapConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_resamples == 0 {
            return Err(Error::InvalidArgument("bootstrap needs at least one resample".into()));
        }
        if !(self.confidence_level > 0.0 && self.confidence_level < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "confidence level must lie in (0, 1), got {}",
                self.confidence_level
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }
}

/// Linear-interpolation quantile of sorted data, `q` in [0, 1].
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Equal-tailed percentile interval of `stats` at `level`.
pub fn percentile_interval(stats: &mut [f64], level: f64) -> Interval {
    stats.sort_unstable_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    Interval {
        low: quantile_sorted(stats, tail),
        high: quantile_sorted(stats, 1.0 - tail),
    }
}

/// Result of one bootstrap run: the (possibly widened) interval, and whether
/// widening was needed to cover the point estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapCi {
    pub interval: Interval,
    pub low_confidence: bool,
}

/// Clamps to `[lo, hi]` and widens to cover `point`.
fn finalize(mut iv: Interval, point: f64, lo: f64, hi: f64) -> BootstrapCi {
    iv.low = iv.low.clamp(lo, hi);
    iv.high = iv.high.clamp(lo, hi);
    let mut low_confidence = false;
    if point < iv.low {
        iv.low = point;
        low_confidence = true;
    }
    if point > iv.high {
        iv.high = point;
        low_confidence = true;
    }
    BootstrapCi {
        interval: iv,
        low_confidence,
    }
}

fn resample_indices<R: rand::Rng>(rng: &mut R, n: usize, out: &mut Vec<usize>) {
    out.clear();
    // Draw in u64 so the sequence does not depend on the platform's usize width.
    out.extend((0..n).map(|_| rng.random_range(0..n as u64) as usize));
}

/// Stratified percentile bootstrap of a statistic over (positive, negative)
/// index sets. `stat` receives resampled positive and negative indices.
///
/// Resample `b` always draws from substream `(cfg.seed, key, b)`, so serial and
/// parallel evaluation agree bit for bit.
pub fn stratified_bootstrap<F>(n_pos: usize, n_neg: usize, cfg: &BootstrapConfig, key: u64, stat: F) -> Result<Vec<f64>>
where
    F: Fn(&[usize], &[usize]) -> Result<f64> + Sync,
{
    cfg.validate()?;
    (0..cfg.n_resamples)
        .into_par_iter()
        .map_init(
            || (Vec::with_capacity(n_pos), Vec::with_capacity(n_neg)),
            |(pos_idx, neg_idx), b| {
                let mut rng = substream(cfg.seed, key, b as u64);
                resample_indices(&mut rng, n_pos, pos_idx);
                resample_indices(&mut rng, n_neg, neg_idx);
                stat(pos_idx, neg_idx)
            },
        )
        .collect()
}

/// Percentile CI for the AUROC of one (positive, negative) sample.
pub fn bootstrap_auroc_ci(pos: &[f64], neg: &[f64], cfg: &BootstrapConfig, key: u64) -> Result<BootstrapCi> {
    let point = auroc(pos, neg)?;
    let mut stats = stratified_bootstrap(pos.len(), neg.len(), cfg, key, |pi, ni| {
        let p: Vec<f64> = pi.iter().map(|&i| pos[i]).collect();
        let n: Vec<f64> = ni.iter().map(|&i| neg[i]).collect();
        auroc(&p, &n)
    })?;
    Ok(finalize(
        percentile_interval(&mut stats, cfg.confidence_level),
        point,
        0.0,
        1.0,
    ))
}

/// Percentile CI for a difference of statistics, clamped to `[-1, 1]`.
pub(crate) fn finalize_delta(stats: &mut [f64], point: f64, level: f64) -> BootstrapCi {
    finalize(percentile_interval(stats, level), point, -1.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupPerformance {
    pub group: String,
    pub n_pos: usize,
    pub n_neg: usize,
    /// Point estimate; absent when the group lacks one of the classes.
    pub auroc: Option<f64>,
    /// Present only for included groups.
    pub ci: Option<Interval>,
    pub included: bool,
    /// The percentile interval had to be widened to cover the point estimate.
    pub low_confidence: bool,
}

/// Per-group AUROC with bootstrap intervals for one finding. Groups are
/// returned in lexicographic order.
pub fn group_performance(
    set: &PredictionSet,
    finding: &str,
    policy: &InclusionPolicy,
    boot: &BootstrapConfig,
) -> Result<Vec<SubgroupPerformance>> {
    boot.validate()?;
    let mut by_group: std::collections::BTreeMap<&str, Vec<&PredictionRecord>> = Default::default();
    for r in set.finding_records(finding)? {
        by_group.entry(r.group.as_str()).or_default().push(r);
    }
    by_group
        .into_par_iter()
        .map(|(group, recs)| {
            let (pos, neg) = split_by_label(recs);
            let included = policy.includes(pos.len(), neg.len());
            let auroc = if pos.is_empty() || neg.is_empty() {
                None
            } else {
                Some(auroc(&pos, &neg)?)
            };
            let (ci, low_confidence) = if included {
                let key = stream_key(&["auroc", finding, group]);
                let ci = bootstrap_auroc_ci(&pos, &neg, boot, key)?;
                (Some(ci.interval), ci.low_confidence)
            } else {
                (None, false)
            };
            Ok(SubgroupPerformance {
                group: group.to_string(),
                n_pos: pos.len(),
                n_neg: neg.len(),
                auroc,
                ci,
                included,
                low_confidence,
            })
        })
        .collect()
}

/// Largest pairwise gap among the values, `None` when empty.
pub fn largest_disparity(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let mut it = values.into_iter();
    let first = it.next()?;
    let (lo, hi) = it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Some(hi - lo)
}

/// `1 - (max - min)` over at least two group AUROCs.
pub fn fairness_score(aurocs: &[f64]) -> Option<f64> {
    if aurocs.len() < 2 {
        return None;
    }
    largest_disparity(aurocs.iter().copied()).map(|d| 1.0 - d)
}

/// Group with the lowest value; ties go to the lexicographically smallest id.
pub fn worst_group<'a>(values: impl IntoIterator<Item = (&'a str, f64)>) -> Option<(&'a str, f64)> {
    values.into_iter().min_by(|a, b| match a.1.total_cmp(&b.1) {
        Ordering::Equal => a.0.cmp(b.0),
        o => o,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FairnessSummary {
    pub finding: String,
    pub n_pos: usize,
    pub n_neg: usize,
    /// Pooled over every record of the finding, excluded groups included.
    pub overall_auroc: f64,
    pub per_group: Vec<SubgroupPerformance>,
    /// `None` with fewer than two included groups.
    pub fairness_score: Option<f64>,
    pub largest_disparity: Option<f64>,
    pub worst_group: Option<String>,
    pub included_groups: usize,
}

impl FairnessSummary {
    pub fn included(&self) -> impl Iterator<Item = (&str, f64)> {
        self.per_group
            .iter()
            .filter(|g| g.included)
            .filter_map(|g| g.auroc.map(|a| (g.group.as_str(), a)))
    }
}

pub fn summarize(
    set: &PredictionSet,
    finding: &str,
    policy: &InclusionPolicy,
    boot: &BootstrapConfig,
) -> Result<FairnessSummary> {
    let (pos, neg) = split_by_label(set.finding_records(finding)?);
    let overall_auroc = auroc(&pos, &neg)?;
    let per_group = group_performance(set, finding, policy, boot)?;
    let included: Vec<(&str, f64)> = per_group
        .iter()
        .filter(|g| g.included)
        .filter_map(|g| g.auroc.map(|a| (g.group.as_str(), a)))
        .collect();
    let values: Vec<f64> = included.iter().map(|g| g.1).collect();
    let fairness = fairness_score(&values);
    let disparity = if values.len() >= 2 {
        largest_disparity(values.iter().copied())
    } else {
        None
    };
    let worst = worst_group(included.iter().copied()).map(|(g, _)| g.to_string());
    let included_groups = included.len();
    Ok(FairnessSummary {
        finding: finding.to_string(),
        n_pos: pos.len(),
        n_neg: neg.len(),
        overall_auroc,
        per_group,
        fairness_score: fairness,
        largest_disparity: disparity,
        worst_group: worst,
        included_groups,
    })
}

/// Overall AUROC and fairness score from point estimates only (no bootstrap).
pub fn point_fairness(set: &PredictionSet, finding: &str, policy: &InclusionPolicy) -> Result<(f64, Option<f64>)> {
    let mut by_group: std::collections::BTreeMap<&str, Vec<&PredictionRecord>> = Default::default();
    for r in set.finding_records(finding)? {
        by_group.entry(r.group.as_str()).or_default().push(r);
    }
    let (pos, neg) = split_by_label(set.finding_records(finding)?);
    let overall = auroc(&pos, &neg)?;
    let mut included = Vec::new();
    for recs in by_group.into_values() {
        let (p, n) = split_by_label(recs);
        if policy.includes(p.len(), n.len()) && !p.is_empty() && !n.is_empty() {
            included.push(auroc(&p, &n)?);
        }
    }
    Ok((overall, fairness_score(&included)))
}

/// Unweighted mean of overall AUROC across findings.
pub fn macro_average(summaries: &[FairnessSummary]) -> Result<f64> {
    if summaries.is_empty() {
        return Err(Error::InvalidArgument("macro average of an empty list".into()));
    }
    Ok(summaries.iter().map(|s| s.overall_auroc).sum::<f64>() / summaries.len() as f64)
}
