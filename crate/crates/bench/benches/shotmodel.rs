use criterion::{criterion_group, criterion_main, Criterion};
use kickout::analytics::pass_origin_table;
use kickout::court::CourtSpec;
use kickout::data::synthesize_dataset;
use kickout::shotmodel::{efficiency_summary, fit_logistic};
use kickout::SyntheticConfig;
use std::hint::black_box;

fn shotmodel(c: &mut Criterion) {
    let cfg = SyntheticConfig {
        n_windows: 0,
        ..SyntheticConfig::bundled()
    };
    let shots = synthesize_dataset(&cfg).unwrap().shots;
    let court = CourtSpec::nba();
    c.bench_function("fit_logistic 20k", |b| b.iter(|| fit_logistic(black_box(&shots)).unwrap()));
    c.bench_function("efficiency_summary 20k", |b| {
        b.iter(|| efficiency_summary(black_box(&shots), &court).unwrap())
    });
    c.bench_function("pass_origin_table 20k", |b| {
        b.iter(|| pass_origin_table(black_box(&shots), &court).unwrap())
    });
}

criterion_group!(benches, shotmodel);
criterion_main!(benches);
