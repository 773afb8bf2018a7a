use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spinplan::explorer::deg1_conjecture_scan;
use spinplan::frakp::expand_p_in_frak;
use spinplan::plancherel::average_bruteforce;
use spinplan::schurq::q;
use spinplan::{GammaElement, OddPartition, StrictPartition};

fn q_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("q");
    for shape in ["5,3,1", "7,4,2,1"] {
        let lambda: StrictPartition = shape.parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(shape), &lambda, |b, l| b.iter(|| q(black_box(l))));
    }
    group.finish();
}

fn frak_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_p_in_frak");
    for shape in ["3,1,1", "5,3,1", "7,3,1,1"] {
        let rho: OddPartition = shape.parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(shape), &rho, |b, r| {
            b.iter(|| expand_p_in_frak(black_box(r)))
        });
    }
    group.finish();
}

fn brute_force_average(c: &mut Criterion) {
    let f = GammaElement::p("3,1".parse().unwrap());
    let mut group = c.benchmark_group("average_bruteforce");
    for n in [10u32, 20] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| average_bruteforce(&f, n)));
    }
    group.finish();
}

fn conjecture_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("deg1_scan");
    group.sample_size(10);
    group.bench_function("max 6", |b| b.iter(|| deg1_conjecture_scan(black_box(6))));
    group.finish();
}

criterion_group!(benches, q_functions, frak_expansion, brute_force_average, conjecture_scan);
criterion_main!(benches);
