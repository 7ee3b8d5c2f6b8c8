//! Compares the data-parallel execution path against the sequential fallback
//! on the two workloads that dominate real runs: the soundness sweep over the
//! dominant catalogue and a trial batch on a representative case. On a single
//! hardware thread the parallel path should track the sequential one to within
//! scheduling overhead; with more cores it should pull ahead roughly linearly.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use subordlab::batch::soundness_suite;
use subordlab::config::Config;
use subordlab::exec::ExecMode;
use subordlab::harness::{find_case, run_trials};

fn modes() -> [(&'static str, ExecMode); 2] {
    [
        ("sequential", ExecMode::Sequential),
        ("parallel", ExecMode::Parallel),
    ]
}

fn bench_soundness(c: &mut Criterion) {
    let cfg = Config::with_order(32);
    let mut group = c.benchmark_group("soundness_sweep");
    group.sample_size(10);
    for (label, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| soundness_suite(24, 11, mode, &cfg).unwrap());
        });
    }
    group.finish();
}

fn bench_case_trials(c: &mut Criterion) {
    // run_trials picks its mode from the compiled feature set, so the
    // sequential leg of this comparison comes from building the crate with
    // `--no-default-features`. Benchmarked here as-built.
    let cfg = Config::with_order(32);
    let case = find_case("cor-ez").unwrap();
    let mut group = c.benchmark_group("case_trials");
    group.sample_size(10);
    group.bench_function("cor-ez_x20", |b| {
        b.iter(|| {
            let report = run_trials(&case, 20, 7, &cfg);
            assert_eq!(report.failures, 0);
            report
        });
    });
    group.finish();
}

criterion_group!(benches, bench_soundness, bench_case_trials);
criterion_main!(benches);
