//! Prediction data: ingestion, validation, alignment of candidates against a
//! baseline, and the per-(finding, group) inclusion rule.
//!
//! Input is long-format delimited text, one file per model:
//!
//! ```text
//! example_id,finding,label,score,group
//! p001,pneumonia,1,0.91,white
//! p001,effusion,0,-1.3,white
//! ```
//!
//! Columns may appear in any order and extra columns are ignored. Scores are
//! any finite decimal (logits are fine, AUROC only looks at ranks).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const COLUMNS: [&str; 5] = ["example_id", "finding", "label", "score", "group"];

/// Maximum number of offending keys listed in an alignment error.
pub const MAX_REPORTED_KEYS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub example_id: String,
    pub finding: String,
    pub label: bool,
    pub score: f64,
    pub group: String,
}

impl PredictionRecord {
    pub fn new(
        example_id: impl Into<String>,
        finding: impl Into<String>,
        label: bool,
        score: f64,
        group: impl Into<String>,
    ) -> Self {
        Self {
            example_id: example_id.into(),
            finding: finding.into(),
            label,
            score,
            group: group.into(),
        }
    }

    fn key(&self) -> (&str, &str) {
        (&self.example_id, &self.finding)
    }
}

/// Minimum per-class counts a subgroup needs before its AUROC is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionPolicy {
    pub min_positives: usize,
    pub min_negatives: usize,
}

impl Default for InclusionPolicy {
    fn default() -> Self {
        Self {
            min_positives: 5,
            min_negatives: 5,
        }
    }
}

impl InclusionPolicy {
    pub fn new(min_positives: usize, min_negatives: usize) -> Self {
        Self {
            min_positives,
            min_negatives,
        }
    }

    pub fn includes(&self, n_pos: usize, n_neg: usize) -> bool {
        n_pos >= self.min_positives && n_neg >= self.min_negatives
    }
}

/// Positive and negative record counts for one (finding, group) cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub n_pos: usize,
    pub n_neg: usize,
}

/// One model's scored test set.
///
/// Immutable after construction. `(example_id, finding)` is unique and every
/// finding has at least one positive and one negative record.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSet {
    model_id: String,
    records: Vec<PredictionRecord>,
    by_finding: BTreeMap<String, Vec<usize>>,
    groups: BTreeSet<String>,
}

impl PredictionSet {
    /// Validates and indexes records. Record order is preserved.
    pub fn from_records(model_id: impl Into<String>, records: Vec<PredictionRecord>) -> Result<Self> {
        let model_id = model_id.into();
        if records.is_empty() {
            return Err(Error::EmptyInput(format!("model `{model_id}` has no records")));
        }
        let mut seen: HashSet<(&str, &str)> = HashSet::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if !r.score.is_finite() {
                return Err(Error::MalformedRow {
                    line: i as u64 + 1,
                    message: format!("score is not finite: {}", r.score),
                });
            }
            if !seen.insert(r.key()) {
                return Err(Error::DuplicateKey {
                    line: i as u64 + 1,
                    example_id: r.example_id.clone(),
                    finding: r.finding.clone(),
                });
            }
        }
        drop(seen);
        Self::build(model_id, records)
    }

    fn build(model_id: String, records: Vec<PredictionRecord>) -> Result<Self> {
        let mut by_finding: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut groups = BTreeSet::new();
        for (i, r) in records.iter().enumerate() {
            by_finding.entry(r.finding.clone()).or_default().push(i);
            if !groups.contains(&r.group) {
                groups.insert(r.group.clone());
            }
        }
        for (finding, idx) in &by_finding {
            let pos = idx.iter().filter(|&&i| records[i].label).count();
            if pos == 0 {
                return Err(Error::DegenerateFinding {
                    finding: finding.clone(),
                    missing: "positive",
                });
            }
            if pos == idx.len() {
                return Err(Error::DegenerateFinding {
                    finding: finding.clone(),
                    missing: "negative",
                });
            }
        }
        Ok(Self {
            model_id,
            records,
            by_finding,
            groups,
        })
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn records(&self) -> &[PredictionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn findings(&self) -> impl Iterator<Item = &str> {
        self.by_finding.keys().map(String::as_str)
    }

    pub fn has_finding(&self, finding: &str) -> bool {
        self.by_finding.contains_key(finding)
    }

    pub fn groups(&self) -> &BTreeSet<String> {
        &self.groups
    }

    /// Records of one finding, in input order.
    pub fn finding_records(&self, finding: &str) -> Result<impl Iterator<Item = &PredictionRecord>> {
        let idx = self
            .by_finding
            .get(finding)
            .ok_or_else(|| Error::UnknownFinding(finding.to_string()))?;
        Ok(idx.iter().map(move |&i| &self.records[i]))
    }

    /// Per-group class counts for one finding.
    pub fn group_counts(&self, finding: &str) -> Result<BTreeMap<String, ClassCounts>> {
        let mut out: BTreeMap<String, ClassCounts> = BTreeMap::new();
        for r in self.finding_records(finding)? {
            let c = out.entry(r.group.clone()).or_default();
            if r.label {
                c.n_pos += 1;
            } else {
                c.n_neg += 1;
            }
        }
        Ok(out)
    }

    /// Same records under a different model id.
    pub fn renamed(mut self, model_id: impl Into<String>) -> Self {
        self.model_id = model_id.into();
        self
    }

    /// Writes the set in the ingest format; `ingest` of the output yields an equal set.
    pub fn write_delimited<W: Write>(&self, writer: W, delimiter: u8) -> Result<()> {
        let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(writer);
        w.write_record(COLUMNS)?;
        for r in &self.records {
            w.write_record([
                r.example_id.as_str(),
                r.finding.as_str(),
                if r.label { "1" } else { "0" },
                // `Display` for f64 is the shortest string that round-trips.
                &r.score.to_string(),
                r.group.as_str(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Reads one model's predictions from delimited text with a header row.
///
/// Blank lines are skipped. Errors carry the 1-based line number of the
/// offending row.
pub fn ingest<R: Read>(source: R, model_id: impl Into<String>, delimiter: u8) -> Result<PredictionSet> {
    let model_id = model_id.into();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let header = reader.headers()?.clone();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(Error::EmptyInput(format!("model `{model_id}`: no header row")));
    }
    let mut cols = [0usize; 5];
    for (slot, name) in cols.iter_mut().zip(COLUMNS) {
        *slot = header
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::MissingColumn(name.to_string()))?;
    }
    let arity = header.len();

    let mut records = Vec::new();
    let mut seen: HashMap<(String, String), u64> = HashMap::new();
    let mut row = csv::StringRecord::new();
    while reader.read_record(&mut row)? {
        let line = row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        if row.len() != arity {
            return Err(Error::MalformedRow {
                line,
                message: format!("expected {arity} fields, found {}", row.len()),
            });
        }
        let [ex, fi, la, sc, gr] = cols.map(|c| &row[c]);
        if ex.is_empty() || fi.is_empty() || gr.is_empty() {
            return Err(Error::MalformedRow {
                line,
                message: "example_id, finding and group must be non-empty".into(),
            });
        }
        let label = match la {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::MalformedRow {
                    line,
                    message: format!("label not binary: `{other}`"),
                })
            }
        };
        let score: f64 = sc.parse().map_err(|_| Error::MalformedRow {
            line,
            message: format!("score is not a number: `{sc}`"),
        })?;
        if !score.is_finite() {
            return Err(Error::MalformedRow {
                line,
                message: format!("score is not finite: `{sc}`"),
            });
        }
        if seen.insert((ex.to_string(), fi.to_string()), line).is_some() {
            return Err(Error::DuplicateKey {
                line,
                example_id: ex.to_string(),
                finding: fi.to_string(),
            });
        }
        records.push(PredictionRecord::new(ex, fi, label, score, gr));
    }
    if records.is_empty() {
        return Err(Error::EmptyInput(format!("model `{model_id}`: no data rows")));
    }
    PredictionSet::build(model_id, records)
}

/// A baseline and candidates scored on the same test set.
///
/// Candidate records are re-indexed into the baseline's record order, so
/// `candidate.records()[i]` and `baseline.records()[i]` share a key.
#[derive(Debug, Clone)]
pub struct AlignedStudy {
    baseline: PredictionSet,
    candidates: Vec<PredictionSet>,
}

impl AlignedStudy {
    pub fn baseline(&self) -> &PredictionSet {
        &self.baseline
    }

    pub fn candidates(&self) -> &[PredictionSet] {
        &self.candidates
    }

    pub fn candidate(&self, model_id: &str) -> Result<&PredictionSet> {
        self.candidates
            .iter()
            .find(|c| c.model_id == model_id)
            .ok_or_else(|| Error::UnknownCandidate(model_id.to_string()))
    }

    /// Shared `(example_id, finding, label, group)` tuples in baseline order.
    pub fn key_set(&self) -> impl Iterator<Item = (&str, &str, bool, &str)> {
        self.baseline
            .records
            .iter()
            .map(|r| (r.example_id.as_str(), r.finding.as_str(), r.label, r.group.as_str()))
    }

    /// The study with baseline and one candidate swapped.
    pub fn swapped(&self, candidate_id: &str) -> Result<AlignedStudy> {
        let cand = self.candidate(candidate_id)?.clone();
        align(cand, vec![self.baseline.clone()])
    }
}

/// Checks that every candidate covers exactly the baseline's keys with the
/// same label and group, and re-indexes candidate scores by key.
pub fn align(baseline: PredictionSet, candidates: Vec<PredictionSet>) -> Result<AlignedStudy> {
    let mut ids = HashSet::new();
    for c in &candidates {
        if !ids.insert(c.model_id.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "candidate id `{}` appears more than once",
                c.model_id
            )));
        }
    }

    let aligned = candidates
        .into_iter()
        .map(|c| reindex(&baseline, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlignedStudy {
        baseline,
        candidates: aligned,
    })
}

fn reindex(baseline: &PredictionSet, candidate: PredictionSet) -> Result<PredictionSet> {
    let index: HashMap<(&str, &str), usize> = candidate
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.key(), i))
        .collect();

    let mut offending = Vec::new();
    let mut found = 0usize;
    let mut order = Vec::with_capacity(baseline.records.len());
    for b in &baseline.records {
        match index.get(&b.key()) {
            None => offending.push(format!("{}/{}: missing", b.example_id, b.finding)),
            Some(&i) => {
                found += 1;
                let c = &candidate.records[i];
                if c.label != b.label {
                    offending.push(format!("{}/{}: label differs", b.example_id, b.finding));
                } else if c.group != b.group {
                    offending.push(format!(
                        "{}/{}: group `{}` != `{}`",
                        b.example_id, b.finding, c.group, b.group
                    ));
                } else {
                    order.push(i);
                }
            }
        }
    }
    if candidate.records.len() > found {
        let base_keys: HashSet<(&str, &str)> = baseline.records.iter().map(PredictionRecord::key).collect();
        for r in &candidate.records {
            if !base_keys.contains(&r.key()) {
                offending.push(format!("{}/{}: not in baseline", r.example_id, r.finding));
            }
        }
    }
    if !offending.is_empty() {
        let total = offending.len();
        offending.truncate(MAX_REPORTED_KEYS);
        return Err(Error::Alignment {
            model_id: candidate.model_id,
            total,
            keys: offending,
        });
    }

    let PredictionSet { model_id, records, .. } = candidate;
    let mut slots: Vec<Option<PredictionRecord>> = records.into_iter().map(Some).collect();
    let records = order
        .into_iter()
        .map(|i| slots[i].take().expect("index visited once"))
        .collect();
    PredictionSet::build(model_id, records)
}

/// Groups with enough positives and negatives for `finding` under `policy`.
pub fn eligible_groups(set: &PredictionSet, finding: &str, policy: &InclusionPolicy) -> Result<BTreeSet<String>> {
    Ok(set
        .group_counts(finding)?
        .into_iter()
        .filter(|(_, c)| policy.includes(c.n_pos, c.n_neg))
        .map(|(g, _)| g)
        .collect())
}
