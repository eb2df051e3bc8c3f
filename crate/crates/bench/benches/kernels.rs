use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hmf_core::fourier::FourierExpansion;
use hmf_core::kernels::{coset_reps, eisenstein_numeric, lipschitz_check};
use hmf_core::modforms::{eisenstein, rc_bracket, rc_bracket_via_derivatives};
use hmf_core::FieldContext;
use num_complex::Complex64;
use std::hint::black_box;

fn series(ctx: &FieldContext, k: i64, n: i64) -> FourierExpansion {
    eisenstein(ctx, k, n).unwrap().expansion
}

fn brackets(c: &mut Criterion) {
    let ctx = FieldContext::new(5).unwrap();
    let mut g = c.benchmark_group("bracket");
    for n in [12, 20, 24] {
        let (f, h) = (series(&ctx, 4, n), series(&ctx, 4, n));
        g.bench_with_input(BenchmarkId::new("convolution_E4_E4_nu2", n), &n, |b, _| {
            b.iter(|| rc_bracket(black_box(&f), black_box(&h), 2).unwrap())
        });
    }
    let (f, h) = (series(&ctx, 2, 12), series(&ctx, 4, 12));
    g.bench_function("derivatives_E2_E4_nu1_N12", |b| b.iter(|| rc_bracket_via_derivatives(&f, &h, 1).unwrap()));
    g.finish();
}

fn coset_sums(c: &mut Criterion) {
    let ctx = FieldContext::new(5).unwrap();
    let z = (Complex64::new(0.1, 1.0), Complex64::new(-0.2, 1.2));
    let mut g = c.benchmark_group("cosets");
    g.sample_size(20);
    for bound in [10.0, 20.0, 40.0] {
        g.bench_with_input(BenchmarkId::new("enumerate", bound), &bound, |b, &bd| b.iter(|| coset_reps(&ctx, bd)));
        g.bench_with_input(BenchmarkId::new("eisenstein_k6", bound), &bound, |b, &bd| {
            b.iter(|| eisenstein_numeric(&ctx, 6, z, bd).unwrap())
        });
    }
    g.bench_function("lipschitz_s3_box100", |b| {
        b.iter(|| lipschitz_check(&ctx, Complex64::new(3.0, 0.0), z, 100, 40).unwrap())
    });
    g.finish();
}

criterion_group!(benches, brackets, coset_sums);
criterion_main!(benches);
