use bending_core::{compute_functionals, make_field, make_surface, FieldSpec, ParameterGrid, SurfaceSpec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn functionals(c: &mut Criterion) {
    let cases = [
        (SurfaceSpec::Sphere { radius: 1.0 }, FieldSpec::Hopf),
        (SurfaceSpec::Ellipsoid { axes: [2.0, 1.0, 1.0, 1.0] }, FieldSpec::PerturbedHopf { epsilon: 0.3 }),
        (SurfaceSpec::BumpySphere { amplitude: 0.1, mode: 1 }, FieldSpec::RandomSmooth { seed: 0, smoothness: 2 }),
    ];
    let mut group = c.benchmark_group("compute_functionals");
    group.sample_size(10);
    for (surface_spec, field_spec) in cases {
        let surface = make_surface(&surface_spec).unwrap();
        let field = make_field(&field_spec).unwrap();
        for res in [[12, 12, 24], [24, 24, 48]] {
            let grid = ParameterGrid::new(res, surface.parameter_box()).unwrap();
            let id = BenchmarkId::new(format!("{surface_spec}/{field_spec}"), format!("{}x{}x{}", res[0], res[1], res[2]));
            group.bench_with_input(id, &grid, |b, grid| b.iter(|| compute_functionals(&surface, &field, grid).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, functionals);
criterion_main!(benches);
