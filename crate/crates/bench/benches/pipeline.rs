use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wfca_core::algkit::{iso_search, radical, socle_quotient, Side};
use wfca_core::fusion::{FusionSystem, OrbitCategory};
use wfca_core::matgrp::build_gl2;
use wfca_core::qschur::{image_algebra, principal_block, schur_image};
use wfca_core::verify::{run_verify, Stages, VerifyConfig};
use wfca_core::wfca::build_wfca;
use wfca_core::{make_field, Fe};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0)
}

fn field(c: &mut Criterion) {
    let f = make_field(2, 8).unwrap();
    c.bench_function("gf256_mul_inv", |b| {
        b.iter(|| {
            let mut acc = Fe::ONE;
            for x in 1..f.order() {
                acc = f.mul(acc, f.inv(Fe(x)).unwrap());
            }
            black_box(acc)
        })
    });
}

fn fusion(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_category");
    for q in [5u64, 9, 13] {
        let g = build_gl2(q).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, _| {
            b.iter(|| {
                let fs = FusionSystem::new(&g).unwrap();
                let classes = fs.centric_classes(&g);
                black_box(OrbitCategory::build(&fs, &g, &classes).unwrap())
            })
        });
    }
    group.finish();
    let k = make_field(2, 1).unwrap();
    c.bench_function("build_wfca_q7", |b| b.iter(|| black_box(build_wfca(7, k.clone(), &mut rng()).unwrap())));
}

fn schur(c: &mut Criterion) {
    let k = make_field(2, 1).unwrap();
    let mut group = c.benchmark_group("schur_image");
    group.sample_size(10);
    for q in [5u64, 9, 13] {
        let g = build_gl2(q).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, _| {
            b.iter(|| black_box(schur_image(&g, k.clone(), &mut rng()).unwrap()))
        });
    }
    group.finish();

    let g = build_gl2(11).unwrap();
    let img = image_algebra(&g, k.clone()).unwrap();
    c.bench_function("radical_image_q11", |b| b.iter(|| black_box(radical(&img.algebra).unwrap())));
    c.bench_function("principal_block_q11", |b| {
        b.iter(|| black_box(principal_block(&g, k.clone(), &mut rng()).unwrap()))
    });

    let s = schur_image(&build_gl2(5).unwrap(), k.clone(), &mut rng()).unwrap();
    let w = build_wfca(5, k, &mut rng()).unwrap();
    let (_, quot) = socle_quotient(&s.basic.algebra, &s.basic.radical, Side::Left).unwrap();
    c.bench_function("iso_search_dim3", |b| {
        b.iter(|| black_box(iso_search(&w.basic.algebra, &quot.algebra, &mut rng()).unwrap()))
    });
}

fn end_to_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_verify");
    group.sample_size(10);
    for q in [3u64, 9, 13] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| {
                black_box(run_verify(q, &VerifyConfig { stages: Stages::ALL, ..VerifyConfig::default() }).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, field, fusion, schur, end_to_end);
criterion_main!(benches);
