use criterion::{black_box, criterion_group, criterion_main, Criterion};
use horolab_bench::{cubic_phase, eisenstein, headline_measure, middle_thirds};
use horolab_core::automorphic::bessel_k_imag;
use horolab_core::diophantine::convergents;
use horolab_core::measures::DEFAULT_TAIL_TOL;
use horolab_core::modular::{reduce, ModularPoint};
use horolab_core::oscillatory::oscillatory_integral;

fn fourier(c: &mut Criterion) {
    let cantor = middle_thirds();
    let headline = headline_measure();
    c.bench_function("fourier/cantor_xi_1e4", |b| {
        b.iter(|| cantor.fourier_transform(black_box(1.0e4 + 0.3), DEFAULT_TAIL_TOL))
    });
    c.bench_function("fourier/headline_xi_1e4", |b| {
        b.iter(|| headline.fourier_transform(black_box(1.0e4 + 0.3), DEFAULT_TAIL_TOL))
    });
}

fn modular(c: &mut Criterion) {
    c.bench_function("reduce/deep_point", |b| {
        b.iter(|| reduce(black_box(ModularPoint { x: 0.318_309_886, y: 1e-5 })))
    });
    let p = eisenstein();
    c.bench_function("eisenstein/value_near_cusp", |b| {
        b.iter(|| p.value(black_box(ModularPoint { x: 0.2, y: 0.9 })))
    });
    c.bench_function("bessel/k_i1_at_2", |b| b.iter(|| bessel_k_imag(black_box(1.0), black_box(2.0))));
}

fn oscillatory(c: &mut Criterion) {
    let (f, w) = cubic_phase();
    c.bench_function("oscillatory/cubic_xi_1e3", |b| {
        b.iter(|| oscillatory_integral(&f, &w, black_box(1.0e3), 1e-10))
    });
}

fn diophantine(c: &mut Criterion) {
    c.bench_function("convergents/pi_1e12", |b| {
        b.iter(|| convergents(black_box(std::f64::consts::PI), 1_000_000_000_000))
    });
}

criterion_group!(kernels, fourier, modular, oscillatory, diophantine);
criterion_main!(kernels);
