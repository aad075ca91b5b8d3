use std::collections::BTreeMap;

use possum::cohort::InclusionPolicy;
use possum::metrics::{split_by_label, summarize, BootstrapConfig};
use possum::positive_sum::{
    compare, decompose_disparity_change, gate, plot_coordinates, ChangeKind, Classification, CompareOptions,
    GatePolicy, RejectReason, Verdict,
};
use possum::synth::{build_study, oracle_auroc, CandidateSpec, GroupRecipe, ScenarioSpec};

fn run(name: &str, seed: u64) -> possum::PositiveSumComparison {
    let spec = ScenarioSpec::preset(name, seed).unwrap();
    let study = build_study(&spec).unwrap();
    compare(
        &study,
        &spec.finding,
        &spec.candidates[0].id,
        &CompareOptions::default(),
    )
    .unwrap()
}

#[test]
fn m2_like_widens_gap_without_harm() {
    for seed in 0..5 {
        let c = run("m2_like", seed);
        assert_eq!(c.classification, Classification::NonHarmful, "seed {seed}");
        assert!(c.disparity_change > 0.0);
        let p = &plot_coordinates(std::slice::from_ref(&c))[0];
        assert!(p.x > 0.0 && p.y >= 0.0);
        assert_eq!(gate(&c, &GatePolicy::default()), Verdict::Promote);
    }
}

#[test]
fn m4_like_narrows_gap_by_harming_a_group() {
    for seed in 0..5 {
        let c = run("m4_like", seed);
        assert_eq!(c.classification, Classification::HarmfulToSubgroup, "seed {seed}");
        assert!(c.disparity_change < 0.0);
        assert!(c.min_group_delta < 0.0);
        assert_eq!(c.min_group, "A");
    }
}

#[test]
fn m3_like_loses_overall() {
    let c = run("m3_like", 2);
    assert!(c.overall_delta < 0.0);
    assert_eq!(c.classification, Classification::HarmfulBoth);
}

#[test]
fn identity_is_no_change() {
    let c = run("identity", 8);
    assert_eq!(c.overall_delta, 0.0);
    assert!(c.group_deltas.iter().all(|g| g.delta == Some(0.0)));
    assert_eq!(decompose_disparity_change(&c).unwrap().kind, ChangeKind::NoChange);
    let p = &plot_coordinates(&[c])[0];
    assert_eq!((p.x, p.y), (0.0, 0.0));
}

#[test]
fn subgroup_harm_deltas_match_oracle() {
    let spec = ScenarioSpec {
        name: "harm".into(),
        seed: 21,
        finding: "f".into(),
        baseline_id: "base".into(),
        groups: vec![
            GroupRecipe::new("A", 1500, 2500, 0.7),
            GroupRecipe::new("B", 1500, 2500, 0.7),
        ],
        candidates: vec![CandidateSpec {
            id: "cand".into(),
            overrides: BTreeMap::from([("A".to_string(), 0.8), ("B".to_string(), 0.65)]),
        }],
    };
    let study = build_study(&spec).unwrap();
    let c = compare(&study, "f", "cand", &CompareOptions::default()).unwrap();
    assert!(c.overall_delta > 0.0);
    assert_eq!(c.classification, Classification::HarmfulToSubgroup);
    assert!((c.min_group_delta + 0.05).abs() < 0.02, "{}", c.min_group_delta);

    for g in &c.group_deltas {
        let pick = |set: &possum::PredictionSet| split_by_label(set.records().iter().filter(|r| r.group == g.group));
        let (bp, bn) = pick(study.baseline());
        let (cp, cn) = pick(study.candidate("cand").unwrap());
        let want = oracle_auroc(&cp, &cn).unwrap() - oracle_auroc(&bp, &bn).unwrap();
        assert_eq!(g.delta, Some(want));
    }
    match gate(&c, &GatePolicy::default()) {
        Verdict::Reject(r) => assert!(matches!(&r[..], [RejectReason::GroupLoss { group, .. }] if group == "B")),
        v => panic!("{v:?}"),
    }
}

#[test]
fn conservative_gate_on_paired_intervals() {
    let spec = ScenarioSpec::preset("m4_like", 3).unwrap();
    let study = build_study(&spec).unwrap();
    let opts = CompareOptions {
        delta_ci: true,
        boot: BootstrapConfig {
            n_resamples: 100,
            ..Default::default()
        },
        ..Default::default()
    };
    let c = compare(&study, &spec.finding, "m4", &opts).unwrap();
    let ci = c.overall_delta_ci.unwrap();
    assert!(ci.contains(c.overall_delta));
    for g in c.group_deltas.iter() {
        assert!(g.delta_ci.unwrap().contains(g.delta.unwrap()));
    }
    // Shared latent scores make the loss of the top group unambiguous.
    let cons = GatePolicy {
        conservative_ci: true,
        ..Default::default()
    };
    assert!(!gate(&c, &cons).is_promote());
}

#[test]
fn bootstrap_identical_serial_and_parallel() {
    let spec = ScenarioSpec::preset("m2_like", 6).unwrap();
    let study = build_study(&spec).unwrap();
    let boot = BootstrapConfig {
        n_resamples: 64,
        seed: 17,
        ..Default::default()
    };
    let policy = InclusionPolicy::default();
    let parallel = summarize(study.baseline(), "finding", &policy, &boot).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| summarize(study.baseline(), "finding", &policy, &boot).unwrap());
    assert_eq!(
        serde_json::to_string(&parallel).unwrap(),
        serde_json::to_string(&serial).unwrap()
    );
}
