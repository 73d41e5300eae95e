//! Parallel against sequential execution of the data-parallel kernels.

use apery::arith::int;
use apery::catalog::named;
use apery::exec;
use apery::limits::solve_vanishing_init;
use apery::recognize::Constant;
use apery::recurrence::{guess_recurrence, required_terms, SolutionTable};
use apery::sums::{eval_family, FamilySpec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn run<R>(parallel: bool, f: impl FnOnce() -> R) -> R {
    if parallel {
        f()
    } else {
        exec::sequential(f)
    }
}

fn family_terms(c: &mut Criterion) {
    let spec = FamilySpec::franel(5).unwrap();
    let mut g = c.benchmark_group("franel5_terms_0_400");
    for (label, parallel) in modes() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run(parallel, || exec::map_range(401, |n| eval_family(&spec, n as i64).unwrap())))
        });
    }
    g.finish();
}

fn guessing(c: &mut Criterion) {
    let spec = FamilySpec::franel(6).unwrap();
    let terms = spec.terms(required_terms(3, 9) as i64 - 1).unwrap();
    let mut g = c.benchmark_group("guess_franel6");
    g.sample_size(10);
    for (label, parallel) in modes() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run(parallel, || guess_recurrence(&terms, 3, 9).unwrap().unwrap()))
        });
    }
    g.finish();
}

fn vanishing_init(c: &mut Criterion) {
    let n = named("franel:d=7").unwrap();
    let a = SolutionTable::new(n.rec, n.primary).unwrap();
    let kill = [Constant::Zeta(2), Constant::Zeta(6)];
    let mut g = c.benchmark_group("zeta4_solution_franel7");
    g.sample_size(10);
    for (label, parallel) in modes() {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| {
                let sol = run(parallel, || solve_vanishing_init(&a, &Constant::Zeta(4), &kill, 60).unwrap());
                assert_eq!(sol.coefficient.denom(), &int(240).to_integer());
            })
        });
    }
    g.finish();
}

criterion_group!(benches, family_terms, guessing, vanishing_init);
criterion_main!(benches);
