use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gw_core::degeneration::{solve_relative, CutSpec};
use gw_core::quantum::{rim_hook_product, wdvv_table};
use gw_core::ring::Space;

fn wdvv(c: &mut Criterion) {
    c.bench_function("wdvv N_d up to 10", |b| b.iter(|| wdvv_table(black_box(10)).unwrap()));
}

fn rim_hook(c: &mut Criterion) {
    let g = Space::grassmannian(3, 7).unwrap();
    c.bench_function("rim hook σ_{4,2,1} ⋆ σ_{3,3} in Gr(3,7)", |b| {
        b.iter(|| rim_hook_product(black_box(&[4, 2, 1]), black_box(&[3, 3]), &g).unwrap())
    });
}

fn solve(c: &mut Criterion) {
    let cut = CutSpec::testbed("p1-pt").unwrap();
    let one = cut.base().unit();
    let alphas = vec![cut.ambient().point_class(); 2];
    let betas = vec![one; 3];
    c.bench_function("solve relative p1-pt, three divisor classes", |b| {
        b.iter(|| solve_relative(&cut, 1, black_box(&alphas), black_box(&betas)).unwrap())
    });
}

criterion_group!(benches, wdvv, rim_hook, solve);
criterion_main!(benches);
