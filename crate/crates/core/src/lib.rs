//! Subgroup fairness auditing relative to a baseline model.
//!
//! The crate scores binary classifiers by AUROC overall and per protected
//! subgroup, and compares candidates with a baseline on two gains: the
//! overall AUROC change and the smallest subgroup AUROC change. A candidate
//! that widens the gap between subgroups is still acceptable when nobody
//! loses; one that narrows the gap by pulling a subgroup down is not.
//!
//! Modules:
//! - [`cohort`]: ingestion, validation, alignment, inclusion rule
//! - [`metrics`]: AUROC, bootstrap intervals, traditional fairness score
//! - [`positive_sum`]: comparison, classification, gate, narratives, Pareto selection
//! - [`synth`]: binormal cohorts, scenario presets, brute-force oracle
//! - [`report`]: JSON/CSV report assembly

pub mod cohort;
pub mod error;
pub mod metrics;
pub mod normal;
pub mod positive_sum;
pub mod report;
pub mod rng;
pub mod synth;

pub use cohort::{align, eligible_groups, ingest, AlignedStudy, InclusionPolicy, PredictionRecord, PredictionSet};
pub use error::{Error, Result};
pub use metrics::{
    auroc, group_performance, macro_average, summarize, BootstrapConfig, FairnessSummary, SubgroupPerformance,
};
pub use positive_sum::{
    classify, compare, decompose_disparity_change, gate, pareto_select, plot_coordinates, ChangeKind, ChangeNarrative,
    Classification, CompareOptions, GatePolicy, PositiveSumComparison, Verdict,
};
pub use synth::{build_study, gen_binormal, oracle_auroc, GroupRecipe, ScenarioSpec};
