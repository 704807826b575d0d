//! Timings for the exact linear-algebra kernels: tensor assembly, matrix
//! multiplication, rank/kernel elimination, and integer spectra, all on
//! 16x16 Gaussian-rational matrices.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use kscheck_bench::{four_particle_matrix, four_particle_projector_sum, shifted_sum};

fn bench_algebra(c: &mut Criterion) {
    c.bench_function("tensor_assemble_16x16", |b| {
        b.iter(|| four_particle_matrix(black_box("XZXZ")))
    });

    let x = four_particle_matrix("XXXX");
    let z = four_particle_matrix("ZZZZ");
    c.bench_function("matrix_multiply_16x16", |b| b.iter(|| black_box(&x) * black_box(&z)));

    let shifted = shifted_sum();
    c.bench_function("kernel_dimension_16x16", |b| {
        b.iter(|| black_box(&shifted).kernel_dimension())
    });

    let sum = four_particle_projector_sum();
    c.bench_function("integer_spectrum_16x16", |b| {
        b.iter(|| black_box(&sum).integer_spectrum(0..=3))
    });
}

criterion_group!(algebra, bench_algebra);
criterion_main!(algebra);
