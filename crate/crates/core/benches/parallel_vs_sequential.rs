use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lhqpf::hamiltonian::random_k_local;
use lhqpf::par::Mode;
use lhqpf::qpf::{approximate_qpf, QpfConfig};
use lhqpf::rng::seeded;
use lhqpf::C64;

const MODES: [(&str, Mode); 2] = [
    ("parallel", Mode::Parallel),
    ("sequential", Mode::Sequential),
];

fn apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply");
    for n in [12, 16] {
        let h = random_k_local(n, 3, 3 * n, &mut seeded(1)).unwrap();
        let v = vec![C64::new(1.0, 0.0); 1 << n];
        for (label, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, _| {
                b.iter(|| h.apply_with(mode, black_box(&v)).unwrap())
            });
        }
    }
    group.finish();
}

fn qpf(c: &mut Criterion) {
    let mut group = c.benchmark_group("approximate_qpf");
    group.sample_size(10);
    for n in [4, 6] {
        let h = random_k_local(n, 3, 2 * n, &mut seeded(2)).unwrap();
        for (label, mode) in MODES {
            let cfg = QpfConfig {
                mode,
                ..QpfConfig::default()
            };
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| approximate_qpf(&h, black_box(n as f64), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, apply, qpf);
criterion_main!(benches);
