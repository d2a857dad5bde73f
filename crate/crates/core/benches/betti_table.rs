use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use phcalc_core::random::{random_filtration, FiltrationParams};
use phcalc_core::{BettiTable, Gf2Matrix};

fn table_benchmarks(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_table");
    group.sample_size(10);
    for &triangles in &[50usize, 100, 200] {
        let f = random_filtration(&FiltrationParams::new(triangles, 6, 7)).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", triangles), &f, |b, f| {
            b.iter(|| BettiTable::compute_sequential(black_box(f), 1))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", triangles), &f, |b, f| {
            b.iter(|| BettiTable::compute_parallel(black_box(f), 1))
        });
    }
    group.finish();
}

fn rank_benchmarks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for &n in &[64usize, 256, 1024] {
        let mut m = Gf2Matrix::zero(n, n);
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for r in 0..n {
            for col in 0..n {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                m.set(r, col, state & 1 == 1);
            }
        }
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m).rank())
        });
    }
    group.finish();
}

criterion_group!(benches, table_benchmarks, rank_benchmarks);
criterion_main!(benches);
