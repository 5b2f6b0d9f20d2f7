use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use normalis_bench::{planar_inputs, sphere_inputs};
use normalis_core::spherical::{delaunay_tiling, sphere_double_normals, weak_gabriel};
use normalis_core::verify::{oracle_double_normals, random_search};
use normalis_core::{double_normal_graph, DnMode, Space};

fn double_normals(c: &mut Criterion) {
    let mut g = c.benchmark_group("double_normals");
    for (name, v) in planar_inputs().iter().chain(sphere_inputs().iter()) {
        g.bench_function(format!("fast/{name}"), |b| b.iter(|| double_normal_graph(black_box(v), DnMode::Weak)));
        g.bench_function(format!("oracle/{name}"), |b| b.iter(|| oracle_double_normals(black_box(v), DnMode::Weak)));
    }
    g.finish();
}

fn sphere_graphs(c: &mut Criterion) {
    let mut g = c.benchmark_group("sphere");
    for (name, v) in &sphere_inputs() {
        g.bench_function(format!("gabriel/{name}"), |b| b.iter(|| weak_gabriel(black_box(v))));
        g.bench_function(format!("delaunay/{name}"), |b| b.iter(|| delaunay_tiling(black_box(v))));
        g.bench_function(format!("lift/{name}"), |b| b.iter(|| sphere_double_normals(black_box(v), DnMode::Weak)));
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("plane-8-2000", |b| b.iter(|| random_search(Space::Plane, 8, black_box(2000), 1)));
    g.finish();
}

criterion_group!(benches, double_normals, sphere_graphs, search);
criterion_main!(benches);
