use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sigma_rigidity::lattice::Lattice;
use sigma_rigidity::par::Execution;
use sigma_rigidity::sampling::{halton_disc, DEFAULT_CENTER, DEFAULT_RADIUS};
use sigma_rigidity::theta::{verify_translation, Sigma};
use sigma_rigidity::thomfix::{transfer_check_with, FixedPointModel, SpecialPointData};
use sigma_rigidity::Complex64;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sigma() -> Sigma {
    Sigma::new(Lattice::witten(Complex64::new(0.0, 1.0)).unwrap(), 60)
}

fn translation(c: &mut Criterion) {
    let th = sigma();
    let zs = halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, 2000, 0);
    let mut g = c.benchmark_group("verify_translation");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| verify_translation(&th, (1, 1), &zs, exec))
        });
    }
    g.finish();
}

fn transfer(c: &mut Criterion) {
    let th = sigma();
    let path = format!("{}/fixtures/nilpotent_two_gen.json", env!("CARGO_MANIFEST_DIR"));
    let model = FixedPointModel::from_path(path).unwrap();
    let f = &model.components[0];
    let sp = SpecialPointData::new(&th, (1.0 / 3.0, 1.0 / 3.0), 3).unwrap();
    let zs = halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, 200, 0);
    let mut g = c.benchmark_group("transfer_check");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| transfer_check_with(f, &sp, 0, 0, &th, &zs, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, translation, transfer);
criterion_main!(benches);
