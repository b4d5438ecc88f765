use criterion::{black_box, criterion_group, criterion_main, Criterion};

use rgc_bench::{complex, scrambled};
use rgc_core::frobenius::{hochschild, PDAlgebra};
use rgc_core::linalg::{cohomology_dims_with, Coefficients, PRIME_A, PRIME_B};
use rgc_core::properad::twist_differential;
use rgc_core::BiDegree;

fn canonical_form(c: &mut Criterion) {
    let graphs = scrambled(2, BiDegree::new(1, 1, 2, 1));
    c.bench_function("canonical form (1;1,2) k=1", |b| {
        b.iter(|| graphs.iter().map(|g| black_box(g.canonicalize()).1 as i64).sum::<i64>())
    });
}

fn differential(c: &mut Criterion) {
    let graphs = scrambled(1, BiDegree::new(0, 2, 2, 1));
    c.bench_function("twisted differential (0;2,2) k=1", |b| {
        b.iter(|| graphs.iter().map(|g| twist_differential(black_box(g)).len()).sum::<usize>())
    });
}

fn rank(c: &mut Criterion) {
    let cx = complex(1, 0, 2, 0, 7);
    let mut group = c.benchmark_group("cohomology (0;2,0) k<=7");
    group.sample_size(10);
    group.bench_function("rational", |b| b.iter(|| cohomology_dims_with(black_box(&cx.complex), Coefficients::Rational).unwrap()));
    group.bench_function("two primes", |b| {
        b.iter(|| cohomology_dims_with(black_box(&cx.complex), Coefficients::TwoPrimes(PRIME_A, PRIME_B)).unwrap())
    });
    group.finish();
}

fn hochschild_complex(c: &mut Criterion) {
    let a = PDAlgebra::cp(2).unwrap();
    let mut group = c.benchmark_group("hochschild");
    group.sample_size(10);
    group.bench_function("cp(2) reduced, length <= 6", |b| b.iter(|| hochschild(black_box(&a), true, 6).unwrap().2.complex.dims.len()));
    group.finish();
}

criterion_group!(kernels, canonical_form, differential, rank, hochschild_complex);
criterion_main!(kernels);
