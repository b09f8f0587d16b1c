use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use swduality::aff::FixtureSpec;
use swduality::glue::{verify_lie_hom, GluedAction, LoopSystem};
use swduality::induced::{verify_toroidal_relations, BalancedModule};
use swduality::lie::Decomposition;
use swduality::Exec;

fn strategies() -> Vec<Exec> {
    if cfg!(feature = "parallel") {
        vec![Exec::Sequential, Exec::Parallel]
    } else {
        vec![Exec::Sequential]
    }
}

fn toroidal_relations(c: &mut Criterion) {
    let m = FixtureSpec::parse("jordan:2,3;5,7", 2).unwrap().build().unwrap();
    let mut group = c.benchmark_group("toroidal_relations");
    group.sample_size(10);
    for exec in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| {
                // Fresh module each time so operator construction is measured too.
                let f = BalancedModule::build(&m, 3).unwrap();
                black_box(verify_toroidal_relations(&f, 2, exec).unwrap());
            });
        });
    }
    group.finish();
}

fn lie_hom_three_loops(c: &mut Criterion) {
    let m = FixtureSpec::parse("eval:2,3;5,7;1/2,3/2", 2).unwrap().build().unwrap();
    let sys = LoopSystem::from_module(&m, 2, 2, Exec::default()).unwrap();
    let mut group = c.benchmark_group("lie_hom_m3");
    group.sample_size(10);
    for exec in strategies() {
        let glued = GluedAction::build(&sys, Decomposition::Standard, exec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| black_box(verify_lie_hom(&glued, 1, exec).unwrap()));
        });
    }
    group.finish();
}

fn glue_build(c: &mut Criterion) {
    let m = FixtureSpec::parse("eval:2,3;5,7;1/2,3/2", 2).unwrap().build().unwrap();
    let sys = LoopSystem::from_module(&m, 3, 2, Exec::default()).unwrap();
    let mut group = c.benchmark_group("glue_build_m3");
    group.sample_size(10);
    for exec in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| black_box(GluedAction::build(&sys, Decomposition::Standard, exec).unwrap()));
        });
    }
    group.finish();
}

criterion_group!(benches, toroidal_relations, lie_hom_three_loops, glue_build);
criterion_main!(benches);
