use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use possum::metrics::{auroc, bootstrap_auroc_ci, split_by_label, BootstrapConfig};
use possum::positive_sum::{compare, pareto_select, CompareOptions, GroupDelta, PositiveSumComparison};
use possum::rng::stream_key;
use possum::synth::{build_study, gen_binormal, GroupRecipe, ScenarioSpec};

fn scores(n: usize) -> (Vec<f64>, Vec<f64>) {
    let recs = gen_binormal(&GroupRecipe::new("g", n, n, 0.75), "f", 1).unwrap();
    split_by_label(&recs)
}

fn bench_auroc(c: &mut Criterion) {
    let mut group = c.benchmark_group("auroc");
    for n in [1_000, 10_000, 100_000] {
        let (pos, neg) = scores(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| auroc(black_box(&pos), black_box(&neg)))
        });
    }
    group.finish();
}

fn bench_bootstrap(c: &mut Criterion) {
    let (pos, neg) = scores(2_000);
    let cfg = BootstrapConfig::default();
    let key = stream_key(&["bench"]);
    c.bench_function("bootstrap_ci/2000x2000/300", |b| {
        b.iter(|| bootstrap_auroc_ci(black_box(&pos), black_box(&neg), &cfg, key))
    });
}

fn bench_pareto(c: &mut Criterion) {
    let cmps: Vec<PositiveSumComparison> = (0..200)
        .map(|i| {
            let x = ((i * 37) % 101) as f64 / 1000.0 - 0.05;
            let y = ((i * 53) % 97) as f64 / 1000.0 - 0.05;
            let gd = vec![GroupDelta::new("g", 0.0, y, true)];
            PositiveSumComparison::from_parts("f", "b", format!("c{i:03}"), 0.0, x, gd, 0.0).unwrap()
        })
        .collect();
    c.bench_function("pareto_select/200", |b| b.iter(|| pareto_select(black_box(&cmps))));
}

fn bench_compare(c: &mut Criterion) {
    let spec = ScenarioSpec::preset("m4_like", 0).unwrap();
    let study = build_study(&spec).unwrap();
    let id = spec.candidates[0].id.clone();
    let mut group = c.benchmark_group("compare/m4_like");
    group.sample_size(10);
    group.bench_function("point", |b| {
        b.iter(|| compare(&study, &spec.finding, &id, &CompareOptions::default()))
    });
    let with_ci = CompareOptions {
        delta_ci: true,
        ..Default::default()
    };
    group.bench_function("paired_ci", |b| {
        b.iter(|| compare(&study, &spec.finding, &id, &with_ci))
    });
    group.finish();
}

criterion_group!(benches, bench_auroc, bench_bootstrap, bench_pareto, bench_compare);
criterion_main!(benches);
