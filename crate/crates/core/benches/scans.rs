use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symtwist::admissibility::{admissible_on_with, fibonacci_sphere};
use symtwist::cpn::{deformed_form, nondegeneracy_scan, Action, GridSpec};
use symtwist::grassmann::verify_all;
use symtwist::quadrature::Settings;
use symtwist::rational::ratio;
use symtwist::volume::volume_sweep;
use symtwist::{Execution, LieAlgebra, Multivector};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn admissibility(c: &mut Criterion) {
    let g = LieAlgebra::su(2).unwrap();
    let t = Multivector::twist_from_lambdas(
        3,
        [
            ((0, 1), ratio(9, 20)),
            ((0, 2), ratio(-3, 10)),
            ((1, 2), ratio(2, 5)),
        ],
    )
    .unwrap();
    let mut group = c.benchmark_group("admissibility_sphere");
    for samples in [1_000, 10_000] {
        let points = fibonacci_sphere(samples, 0.5);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, samples), &points, |b, pts| {
                b.iter(|| admissible_on_with(exec, &g, &t, black_box(pts.clone()), 1e-6).unwrap())
            });
        }
    }
    group.finish();
}

fn nondegeneracy(c: &mut Criterion) {
    let action = Action::unitary(2).unwrap();
    let t = Multivector::twist_from_lambdas(8, [((3, 6), ratio(3, 10))]).unwrap();
    let form = deformed_form(&action, &t).unwrap();
    let grid = GridSpec {
        n: 2,
        half_width: 2.0,
        points_per_axis: 7,
    };
    let mut group = c.benchmark_group("nondegeneracy_cp2");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| nondegeneracy_scan(exec, &form, black_box(&grid), 1e-9).unwrap())
        });
    }
    group.finish();
}

fn volumes(c: &mut Criterion) {
    let lambdas: Vec<f64> = (-9..=9).map(|k| k as f64 / 10.0).collect();
    let mut group = c.benchmark_group("volume_sweep");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| volume_sweep(exec, black_box(&lambdas), Settings::default()).unwrap())
        });
    }
    group.finish();
}

fn grassmann(c: &mut Criterion) {
    let mut group = c.benchmark_group("grassmann_up_to_4");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| verify_all(exec, black_box(4)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, admissibility, nondegeneracy, volumes, grassmann);
criterion_main!(benches);
