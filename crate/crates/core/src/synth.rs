//! Synthetic cohorts under the unit-variance binormal score model, scenario
//! presets, and the brute-force AUROC oracle.
//!
//! Negatives score `N(0, 1)` and positives `N(μ, 1)`, whose AUROC is
//! `Φ(μ / √2)`; a target AUROC therefore maps to `μ = √2 · Φ⁻¹(target)`.
//!
//! Scores are `z + μ·label`, where the latent `z` of each record is drawn from
//! a substream keyed by `(seed, group, class)` at the record's index. The
//! latent draws do not depend on the model, so a candidate differs from the
//! baseline only through the shifts of the groups it overrides; every other
//! group keeps baseline-identical scores.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cohort::{align, AlignedStudy, PredictionRecord, PredictionSet};
use crate::error::{Error, Result};
use crate::normal;
use crate::rng::{open_unit, stream_key, substream};

/// Combined score count above which [`oracle_auroc`] refuses to run.
pub const ORACLE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecipe {
    pub group: String,
    pub n_pos: usize,
    pub n_neg: usize,
    pub target_auc: f64,
}

impl GroupRecipe {
    pub fn new(group: impl Into<String>, n_pos: usize, n_neg: usize, target_auc: f64) -> Self {
        Self {
            group: group.into(),
            n_pos,
            n_neg,
            target_auc,
        }
    }

    pub fn prevalence(&self) -> f64 {
        self.n_pos as f64 / (self.n_pos + self.n_neg) as f64
    }

    fn validate(&self) -> Result<()> {
        if self.n_pos == 0 || self.n_neg == 0 {
            return Err(Error::InvalidScenario(format!(
                "group `{}` needs at least one positive and one negative",
                self.group
            )));
        }
        binormal_shift(self.target_auc).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateSpec {
    pub id: String,
    /// Target AUROC per overridden group; other groups keep the baseline target.
    #[serde(default)]
    pub overrides: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    pub seed: u64,
    #[serde(default = "default_finding")]
    pub finding: String,
    #[serde(default = "default_baseline_id")]
    pub baseline_id: String,
    pub groups: Vec<GroupRecipe>,
    #[serde(default)]
    pub candidates: Vec<CandidateSpec>,
}

fn default_finding() -> String {
    "finding".into()
}

fn default_baseline_id() -> String {
    "baseline".into()
}

/// Names accepted by [`ScenarioSpec::preset`].
pub const PRESETS: [&str; 4] = ["identity", "m2_like", "m3_like", "m4_like"];

/// Records per group in the presets (600 positives, 1400 negatives).
const PRESET_POS: usize = 600;
const PRESET_NEG: usize = 1400;
const PRESET_BASELINE: [(&str, f64); 5] = [("A", 0.82), ("B", 0.78), ("C", 0.76), ("D", 0.74), ("E", 0.70)];

impl ScenarioSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ScenarioSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario specs always serialize")
    }

    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::InvalidScenario("no groups declared".into()));
        }
        let mut names = BTreeSet::new();
        for g in &self.groups {
            if !names.insert(g.group.as_str()) {
                return Err(Error::InvalidScenario(format!("group `{}` declared twice", g.group)));
            }
            g.validate()?;
        }
        let mut ids = BTreeSet::from([self.baseline_id.as_str()]);
        for c in &self.candidates {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidScenario(format!("model id `{}` used twice", c.id)));
            }
            for (group, &auc) in &c.overrides {
                if !names.contains(group.as_str()) {
                    return Err(Error::InvalidScenario(format!(
                        "candidate `{}` overrides unknown group `{group}`",
                        c.id
                    )));
                }
                binormal_shift(auc)?;
            }
        }
        Ok(())
    }

    /// Built-in scenarios. Magnitudes are fixture choices; only the direction
    /// of each change is meaningful.
    ///
    /// * `identity`: the candidate equals the baseline.
    /// * `m2_like`: every group gains, the best group gains most, so the gap widens.
    /// * `m3_like`: most groups lose a little, overall performance drops.
    /// * `m4_like`: targets are compressed; the worst group gains, the best
    ///   group loses, the gap narrows.
    pub fn preset(name: &str, seed: u64) -> Option<Self> {
        let shifts: [f64; 5] = match name {
            "identity" => [0.0; 5],
            "m2_like" => [0.06, 0.03, 0.03, 0.03, 0.03],
            "m3_like" => [-0.02, -0.01, -0.01, 0.01, -0.01],
            "m4_like" => [-0.03, 0.01, 0.02, 0.03, 0.06],
            _ => return None,
        };
        let groups = PRESET_BASELINE
            .iter()
            .map(|&(g, auc)| GroupRecipe::new(g, PRESET_POS, PRESET_NEG, auc))
            .collect();
        let overrides = PRESET_BASELINE
            .iter()
            .zip(shifts)
            .filter(|(_, s)| *s != 0.0)
            .map(|(&(g, auc), s)| (g.to_string(), round6(auc + s)))
            .collect();
        let candidate = name.strip_suffix("_like").unwrap_or(name).to_string();
        Some(Self {
            name: name.to_string(),
            seed,
            finding: default_finding(),
            baseline_id: default_baseline_id(),
            groups,
            candidates: vec![CandidateSpec {
                id: candidate,
                overrides,
            }],
        })
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Positive-class mean giving the target AUROC under unit-variance binormal scores.
pub fn binormal_shift(target_auc: f64) -> Result<f64> {
    if !(target_auc > 0.0 && target_auc < 1.0) {
        return Err(Error::InvalidScenario(format!(
            "target AUROC must lie in (0, 1), got {target_auc}"
        )));
    }
    Ok(std::f64::consts::SQRT_2 * normal::inverse_cdf(target_auc))
}

/// Standard normal latents for `n` records of one (group, class) cell.
/// Record `i` always takes the `i`-th draw of its substream.
fn latents(seed: u64, group: &str, positive: bool, n: usize) -> Vec<f64> {
    let class = if positive { "pos" } else { "neg" };
    let mut rng = substream(seed, stream_key(&["binormal", group, class]), 0);
    (0..n).map(|_| normal::inverse_cdf(open_unit(rng.next_u64()))).collect()
}

fn group_records(recipe: &GroupRecipe, target_auc: f64, finding: &str, seed: u64) -> Result<Vec<PredictionRecord>> {
    let mu = binormal_shift(target_auc)?;
    let pos = latents(seed, &recipe.group, true, recipe.n_pos);
    let neg = latents(seed, &recipe.group, false, recipe.n_neg);
    let mut out = Vec::with_capacity(pos.len() + neg.len());
    for (i, z) in pos.into_iter().enumerate() {
        out.push(PredictionRecord::new(
            format!("{}-p{i:06}", recipe.group),
            finding,
            true,
            z + mu,
            &recipe.group,
        ));
    }
    for (i, z) in neg.into_iter().enumerate() {
        out.push(PredictionRecord::new(
            format!("{}-n{i:06}", recipe.group),
            finding,
            false,
            z,
            &recipe.group,
        ));
    }
    Ok(out)
}

/// Records for one group at the recipe's target AUROC.
pub fn gen_binormal(recipe: &GroupRecipe, finding: &str, seed: u64) -> Result<Vec<PredictionRecord>> {
    recipe.validate()?;
    group_records(recipe, recipe.target_auc, finding, seed)
}

/// Baseline plus one prediction set per candidate over a shared test set.
pub fn build_study(spec: &ScenarioSpec) -> Result<AlignedStudy> {
    spec.validate()?;
    let model = |overrides: &BTreeMap<String, f64>| -> Result<Vec<PredictionRecord>> {
        let mut recs = Vec::new();
        for g in &spec.groups {
            let target = overrides.get(&g.group).copied().unwrap_or(g.target_auc);
            recs.extend(group_records(g, target, &spec.finding, spec.seed)?);
        }
        Ok(recs)
    };
    let baseline = PredictionSet::from_records(&spec.baseline_id, model(&BTreeMap::new())?)?;
    let candidates = spec
        .candidates
        .iter()
        .map(|c| PredictionSet::from_records(&c.id, model(&c.overrides)?))
        .collect::<Result<Vec<_>>>()?;
    align(baseline, candidates)
}

/// Exhaustive pair count with ties credited one half.
pub fn oracle_auroc(pos: &[f64], neg: &[f64]) -> Result<f64> {
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::UndefinedAuroc("oracle needs both classes"));
    }
    let n = pos.len() + neg.len();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge(n, ORACLE_LIMIT));
    }
    let mut wins: u64 = 0;
    let mut ties: u64 = 0;
    for p in pos {
        for q in neg {
            if p > q {
                wins += 1;
            } else if p == q {
                ties += 1;
            }
        }
    }
    Ok((wins as f64 + 0.5 * ties as f64) / (pos.len() as f64 * neg.len() as f64))
}
