//! Wall-clock timings of Betti and persistent-Betti computations on random
//! filtrations of increasing size.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use phcalc_core::random::{random_filtration, FiltrationParams};
use phcalc_core::{barcode, persistent_betti, Filtration};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchColumn {
    pub triangles: usize,
    pub betti: Duration,
    pub persistent_betti: Duration,
}

pub fn generate(triangles: usize, levels: usize, seed: u64) -> Filtration {
    random_filtration(&FiltrationParams::new(triangles, levels, seed))
        .expect("generated levels are nested")
}

/// Times `betti(K^m, n)` for `n ≤ 2`, then `β_1^{0,m}` plus the full
/// dimension-1 barcode.
pub fn time_one(f: &Filtration) -> (Duration, Duration) {
    let top = f.level(f.last_level());
    let start = Instant::now();
    for n in 0..=2 {
        std::hint::black_box(top.betti(n));
    }
    let betti = start.elapsed();

    let start = Instant::now();
    std::hint::black_box(persistent_betti(f, 1, 0, f.last_level()).expect("levels in range"));
    std::hint::black_box(barcode(f, 1).expect("multiplicities are non-negative"));
    (betti, start.elapsed())
}

pub fn run(triangles: &[usize], levels: usize, seed: u64) -> Vec<BenchColumn> {
    triangles
        .iter()
        .map(|&t| {
            let f = generate(t, levels, seed);
            let (betti, persistent_betti) = time_one(&f);
            BenchColumn {
                triangles: t,
                betti,
                persistent_betti,
            }
        })
        .collect()
}

/// Two rows (`Betti`, `Persistent Betti`) by one column per triangle count,
/// in seconds.
pub fn format_table(columns: &[BenchColumn]) -> String {
    const LABEL: usize = 18;
    const CELL: usize = 11;
    let mut out = String::new();
    let _ = write!(out, "{:<LABEL$}", "triangles");
    for c in columns {
        let _ = write!(out, "{:>CELL$}", c.triangles);
    }
    out.push('\n');
    for (name, pick) in [
        ("Betti", (|c: &BenchColumn| c.betti) as fn(&BenchColumn) -> Duration),
        ("Persistent Betti", |c: &BenchColumn| c.persistent_betti),
    ] {
        let _ = write!(out, "{name:<LABEL$}");
        for c in columns {
            let _ = write!(out, "{:>CELL$.6}", pick(c).as_secs_f64());
        }
        out.push('\n');
    }
    out
}
