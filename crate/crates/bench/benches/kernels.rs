use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use keller_core::analysis::{d_table, ModulusSelection};
use keller_core::mpnum::{consts, root_of_unity};
use keller_core::primes::nth_prime;
use keller_core::recursion::{estimate, l_partial_sum, required_precision};
use keller_core::{enumerate_characters, keller_one, BigFloat, PrecisionContext};

fn transcendental(c: &mut Criterion) {
    let mut g = c.benchmark_group("transcendental");
    let x = BigFloat::from_f64(1.2345).unwrap();
    for bits in [256u32, 1024, 4096] {
        let ctx = PrecisionContext::new(bits).unwrap();
        g.bench_with_input(BenchmarkId::new("exp", bits), &ctx, |b, ctx| {
            b.iter(|| black_box(&x).exp(ctx).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("ln", bits), &ctx, |b, ctx| {
            b.iter(|| black_box(&x).ln(ctx).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("pi_uncached", bits), &ctx, |b, ctx| {
            b.iter(|| consts::pi_machin(ctx))
        });
        g.bench_with_input(BenchmarkId::new("root_of_unity_7", bits), &ctx, |b, ctx| {
            b.iter(|| root_of_unity(black_box(3), 7, ctx).unwrap())
        });
    }
    g.finish();
}

fn recursion(c: &mut Criterion) {
    let mut g = c.benchmark_group("recursion");
    let one = keller_one();
    let chi = enumerate_characters(5).unwrap().get(2).unwrap().clone();
    for (n, s) in [(2usize, 50u32), (8, 150), (20, 150), (2, 500)] {
        let ctx = required_precision(n, s).unwrap();
        let j_max = 2 * nth_prime(n).unwrap() - 1;
        g.bench_function(BenchmarkId::new("l_partial_sum", format!("n{n}_s{s}")), |b| {
            b.iter(|| l_partial_sum(&chi, s, j_max, &ctx).unwrap())
        });
        g.bench_function(BenchmarkId::new("estimate_one", format!("n{n}_s{s}")), |b| {
            b.iter(|| estimate(n, s, &one).unwrap())
        });
        g.bench_function(BenchmarkId::new("estimate_mod5", format!("n{n}_s{s}")), |b| {
            b.iter(|| estimate(n, s, &chi).unwrap())
        });
    }
    g.finish();
}

fn table(c: &mut Criterion) {
    let sel: Vec<ModulusSelection> = ["4", "5", "8", "9:complex"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    c.bench_function("d_table_s50", |b| {
        b.iter(|| d_table(&[3, 4, 5, 6, 7, 8], 50, &sel).unwrap())
    });
}

criterion_group!(benches, transcendental, recursion, table);
criterion_main!(benches);
