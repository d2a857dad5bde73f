//! Persistent Betti numbers, interval multiplicities and barcodes.
//!
//! With `D_f = D_n(K^j)`, `D_g = D_{n+1}(K^p)`, `I` the inclusion of
//! `n`-chains of `K^j` into `K^p` and `K` a kernel basis of `D_f`, the image
//! `I·K` spans the cycles of `K^j` seen inside `K^p`. The persistent Betti
//! number is the dimension of that span modulo the boundaries of `K^p`:
//!
//! ```text
//! β_n^{j,p} = rank [D_g | I·K] − rank D_g
//! ```
//!
//! The multiplicity of the interval `[j, p)` is
//! `(β^{j,p−1} − β^{j,p}) − (β^{j−1,p−1} − β^{j−1,p})` with `β^{−1,·} = 0`,
//! and of `[j, ∞)` it is `β^{j,m} − β^{j−1,m}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::gf2::Gf2Matrix;

/// The matrices both persistent-Betti formulas are evaluated on.
#[derive(Debug, Clone)]
pub struct PersistenceInputs {
    /// `D_n(K^j)`
    pub d_f: Gf2Matrix,
    /// `D_{n+1}(K^p)`
    pub d_g: Gf2Matrix,
    /// Inclusion of `n`-chains, `|S_n(K^p)| × |S_n(K^j)|`.
    pub inclusion: Gf2Matrix,
    /// Kernel basis of `d_f`.
    pub kernel: Gf2Matrix,
}

impl PersistenceInputs {
    pub fn new(f: &Filtration, n: usize, j: usize, p: usize) -> Result<Self> {
        f.check_levels(j, p)?;
        let d_f = f.level(j).boundary_matrix(n);
        let kernel = d_f.kernel_basis();
        Ok(Self {
            d_g: f.level(p).boundary_matrix(n + 1),
            inclusion: f.inclusion_matrix(n, j, p)?,
            d_f,
            kernel,
        })
    }

    fn stacked_rank(&self) -> usize {
        let cycles = self
            .inclusion
            .multiply(&self.kernel)
            .expect("inclusion columns match kernel rows");
        self.d_g
            .hstack(&cycles)
            .expect("inclusion rows match boundary rows")
            .rank()
    }

    /// `z − (rank D_g + z − rank [D_g | I·K])` where `z = |S_n(K^j)| − rank D_f`.
    pub fn rank_formula(&self) -> usize {
        let z = self.d_f.cols() - self.d_f.rank();
        z - (self.d_g.rank() + z - self.stacked_rank())
    }

    /// `rank [D_g | I·K] − rank D_g`.
    pub fn rank_difference(&self) -> usize {
        self.stacked_rank() - self.d_g.rank()
    }
}

/// `β_n^{j,p}`: classes of `K^j` still alive in `K^p`.
pub fn persistent_betti(f: &Filtration, n: usize, j: usize, p: usize) -> Result<usize> {
    Ok(PersistenceInputs::new(f, n, j, p)?.rank_formula())
}

/// `β_n^{j,p}` with `β_n^{−1,p} = 0`.
fn shifted_betti(f: &Filtration, n: usize, j: Option<usize>, p: usize) -> Result<i64> {
    match j {
        Some(j) => persistent_betti(f, n, j, p).map(|b| b as i64),
        None => Ok(0),
    }
}

/// Signed multiplicity of the interval `[j, p)`; requires `j < p ≤ m`.
pub fn mu(f: &Filtration, n: usize, j: usize, p: usize) -> Result<i64> {
    check_interval(f, j, p)?;
    let prev = j.checked_sub(1);
    Ok(
        (shifted_betti(f, n, Some(j), p - 1)? - shifted_betti(f, n, Some(j), p)?)
            - (shifted_betti(f, n, prev, p - 1)? - shifted_betti(f, n, prev, p)?),
    )
}

/// Signed multiplicity of the interval `[j, ∞)`.
pub fn mu_infinity(f: &Filtration, n: usize, j: usize) -> Result<i64> {
    let m = f.last_level();
    f.check_levels(j, m)?;
    Ok(shifted_betti(f, n, Some(j), m)? - shifted_betti(f, n, j.checked_sub(1), m)?)
}

fn check_interval(f: &Filtration, j: usize, p: usize) -> Result<()> {
    if j >= p || p > f.last_level() {
        return Err(Error::LevelRange {
            j,
            p,
            last: f.last_level(),
            constraint: "0 <= j < p <= m",
        });
    }
    Ok(())
}

/// All `β_n^{j,p}` for `0 ≤ j ≤ p ≤ m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    dimension: usize,
    last: usize,
    /// Row `j` holds `p = j..=m`, rows concatenated.
    values: Vec<usize>,
}

/// Per-level pieces shared by every entry of a table.
struct LevelData {
    kernel: Gf2Matrix,
    d_g: Gf2Matrix,
    d_g_rank: usize,
}

impl LevelData {
    fn new(f: &Filtration, n: usize, level: usize) -> Self {
        let k = f.level(level);
        let d_g = k.boundary_matrix(n + 1);
        Self {
            kernel: k.boundary_matrix(n).kernel_basis(),
            d_g_rank: d_g.rank(),
            d_g,
        }
    }
}

fn table_entry(f: &Filtration, n: usize, data: &[LevelData], j: usize, p: usize) -> usize {
    let cycles = f
        .inclusion_matrix(n, j, p)
        .expect("table indices are in range")
        .multiply(&data[j].kernel)
        .expect("inclusion columns match kernel rows");
    let stacked = data[p]
        .d_g
        .hstack(&cycles)
        .expect("inclusion rows match boundary rows");
    stacked.rank() - data[p].d_g_rank
}

fn grid(last: usize) -> Vec<(usize, usize)> {
    (0..=last)
        .flat_map(|j| (j..=last).map(move |p| (j, p)))
        .collect()
}

impl BettiTable {
    /// Uses the parallel path when the `parallel` feature is on.
    pub fn compute(f: &Filtration, n: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            Self::compute_parallel(f, n)
        }
        #[cfg(not(feature = "parallel"))]
        {
            Self::compute_sequential(f, n)
        }
    }

    pub fn compute_sequential(f: &Filtration, n: usize) -> Self {
        let last = f.last_level();
        let data: Vec<LevelData> = (0..=last).map(|l| LevelData::new(f, n, l)).collect();
        let values = grid(last)
            .into_iter()
            .map(|(j, p)| table_entry(f, n, &data, j, p))
            .collect();
        Self {
            dimension: n,
            last,
            values,
        }
    }

    /// Evaluates the `(j, p)` grid on the rayon pool. Entries are independent,
    /// so the result is identical to [`BettiTable::compute_sequential`].
    #[cfg(feature = "parallel")]
    pub fn compute_parallel(f: &Filtration, n: usize) -> Self {
        use rayon::prelude::*;

        let last = f.last_level();
        let data: Vec<LevelData> = (0..=last)
            .into_par_iter()
            .map(|l| LevelData::new(f, n, l))
            .collect();
        let values = grid(last)
            .into_par_iter()
            .map(|(j, p)| table_entry(f, n, &data, j, p))
            .collect();
        Self {
            dimension: n,
            last,
            values,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn last_level(&self) -> usize {
        self.last
    }

    fn offset(&self, j: usize) -> usize {
        // rows 0..j hold (m+1) + m + … + (m+2−j) entries
        j * (self.last + 1) - j * j.saturating_sub(1) / 2
    }

    /// `β^{j,p}`; panics unless `j ≤ p ≤ m`.
    pub fn get(&self, j: usize, p: usize) -> usize {
        assert!(j <= p && p <= self.last, "({j}, {p}) outside 0 <= j <= p <= {}", self.last);
        self.values[self.offset(j) + (p - j)]
    }

    /// Row `j`: `β^{j,p}` for `p = j..=m`.
    pub fn row(&self, j: usize) -> &[usize] {
        let start = self.offset(j);
        &self.values[start..start + (self.last + 1 - j)]
    }

    fn shifted(&self, j: Option<usize>, p: usize) -> i64 {
        j.map_or(0, |j| self.get(j, p) as i64)
    }

    /// Signed multiplicity of `[j, p)`; panics unless `j < p ≤ m`.
    pub fn mu(&self, j: usize, p: usize) -> i64 {
        assert!(j < p && p <= self.last);
        let prev = j.checked_sub(1);
        (self.shifted(Some(j), p - 1) - self.shifted(Some(j), p))
            - (self.shifted(prev, p - 1) - self.shifted(prev, p))
    }

    /// Signed multiplicity of `[j, ∞)`.
    pub fn mu_infinity(&self, j: usize) -> i64 {
        self.shifted(Some(j), self.last) - self.shifted(j.checked_sub(1), self.last)
    }

    /// The barcode encoded by this table; fails on the first negative
    /// multiplicity.
    pub fn barcode(&self) -> Result<Barcode> {
        let n = self.dimension;
        let mut pairs = Vec::new();
        for j in 0..=self.last {
            for p in j + 1..=self.last {
                push_interval(&mut pairs, n, j, Death::Finite(p), self.mu(j, p))?;
            }
            push_interval(&mut pairs, n, j, Death::Infinite, self.mu_infinity(j))?;
        }
        pairs.sort();
        Ok(Barcode {
            dimension: n,
            pairs,
        })
    }
}

fn push_interval(
    pairs: &mut Vec<PersistencePair>,
    n: usize,
    birth: usize,
    death: Death,
    value: i64,
) -> Result<()> {
    match value.cmp(&0) {
        Ordering::Less => Err(Error::NegativeMultiplicity {
            n,
            j: birth,
            death: death.to_string(),
            value,
        }),
        Ordering::Equal => Ok(()),
        Ordering::Greater => {
            pairs.push(PersistencePair {
                birth,
                death,
                multiplicity: value as usize,
            });
            Ok(())
        }
    }
}

/// The level at which an interval ends. `Finite` sorts before `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(usize),
    Infinite,
}

impl Death {
    /// True iff a class with this death is still alive at level `l`.
    pub fn outlives(self, l: usize) -> bool {
        match self {
            Death::Finite(p) => p > l,
            Death::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Death::Finite(p) => Some(p),
            Death::Infinite => None,
        }
    }
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::Finite(p) => write!(f, "{p}"),
            Death::Infinite => f.write_str("inf"),
        }
    }
}

/// An interval `[birth, death)` occurring `multiplicity` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersistencePair {
    pub birth: usize,
    pub death: Death,
    pub multiplicity: usize,
}

impl fmt::Display for PersistencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.birth, self.death)?;
        if self.multiplicity != 1 {
            write!(f, "x{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// The intervals of one homology dimension, sorted by birth then death.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Barcode {
    pub dimension: usize,
    pub pairs: Vec<PersistencePair>,
}

impl Barcode {
    /// Sorts `pairs` and merges repeated intervals.
    pub fn new(dimension: usize, mut pairs: Vec<PersistencePair>) -> Self {
        pairs.retain(|p| p.multiplicity > 0);
        pairs.sort();
        let mut merged: Vec<PersistencePair> = Vec::with_capacity(pairs.len());
        for p in pairs {
            match merged.last_mut() {
                Some(q) if q.birth == p.birth && q.death == p.death => q.multiplicity += p.multiplicity,
                _ => merged.push(p),
            }
        }
        Self {
            dimension,
            pairs: merged,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Number of intervals (with multiplicity) born at or before `k` and
    /// alive at `l`.
    pub fn spanning_count(&self, k: usize, l: usize) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.birth <= k && p.death.outlives(l))
            .map(|p| p.multiplicity)
            .sum()
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}: {{", self.dimension)?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// `barcode(f, n)` via a full table of persistent Betti numbers.
pub fn barcode(f: &Filtration, n: usize) -> Result<Barcode> {
    BettiTable::compute(f, n).barcode()
}

/// One failed identity found by [`check_fundamental_lemma`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaViolation {
    /// `β^{k,l}` differs from `Σ_{i≤k} Σ_{l<j≤m} μ^{i,j} + β^{k,m}`.
    Formula {
        k: usize,
        l: usize,
        betti: usize,
        mu_sum: i64,
    },
    /// `β^{k,l}` differs from the number of bars spanning `[k, l]`.
    Spanning {
        k: usize,
        l: usize,
        betti: usize,
        spanning: usize,
    },
    /// The barcode could not be formed.
    NegativeMultiplicity { birth: usize, death: Death, value: i64 },
}

impl fmt::Display for LemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaViolation::Formula { k, l, betti, mu_sum } => {
                write!(f, "beta^({k},{l}) = {betti} but the mu sum gives {mu_sum}")
            }
            LemmaViolation::Spanning {
                k,
                l,
                betti,
                spanning,
            } => write!(f, "beta^({k},{l}) = {betti} but {spanning} bars span [{k},{l}]"),
            LemmaViolation::NegativeMultiplicity { birth, death, value } => {
                write!(f, "mu for [{birth},{death}) is {value}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub dimension: usize,
    /// Number of `(k, l)` pairs examined.
    pub pairs_checked: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every `0 ≤ k ≤ l ≤ m`, both
/// `β^{k,l} = Σ_{i≤k} Σ_{l<j≤m} μ^{i,j} + β^{k,m}` and that `β^{k,l}`
/// equals the number of barcode intervals spanning `[k, l]`.
pub fn check_fundamental_lemma(f: &Filtration, n: usize) -> LemmaReport {
    check_fundamental_lemma_with(&BettiTable::compute(f, n))
}

pub fn check_fundamental_lemma_with(table: &BettiTable) -> LemmaReport {
    let m = table.last_level();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    let barcode = table.barcode();
    if barcode.is_err() {
        for birth in 0..=m {
            let deaths = (birth + 1..=m)
                .map(|p| (Death::Finite(p), table.mu(birth, p)))
                .chain(std::iter::once((Death::Infinite, table.mu_infinity(birth))));
            for (death, value) in deaths.filter(|&(_, v)| v < 0) {
                violations.push(LemmaViolation::NegativeMultiplicity { birth, death, value });
            }
        }
    }
    for k in 0..=m {
        for l in k..=m {
            pairs_checked += 1;
            let betti = table.get(k, l);
            let mu_sum: i64 = (0..=k)
                .flat_map(|i| (l + 1..=m).map(move |j| (i, j)))
                .map(|(i, j)| table.mu(i, j))
                .sum::<i64>()
                + table.get(k, m) as i64;
            if mu_sum != betti as i64 {
                violations.push(LemmaViolation::Formula { k, l, betti, mu_sum });
            }
            if let Ok(bc) = &barcode {
                let spanning = bc.spanning_count(k, l);
                if spanning != betti {
                    violations.push(LemmaViolation::Spanning {
                        k,
                        l,
                        betti,
                        spanning,
                    });
                }
            }
        }
    }
    LemmaReport {
        dimension: table.dimension(),
        pairs_checked,
        violations,
    }
}
