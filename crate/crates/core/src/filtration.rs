//! Nested sequences of simplicial complexes and the inclusion matrices
//! between their chain bases.

use std::fmt;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// The first place where a level sequence fails to be a filtration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationViolation {
    /// `simplex` belongs to level `level` but not to level `level + 1`.
    #[error("not nested: {simplex} is in level {level} but missing from level {}", level + 1)]
    NotNested { level: usize, simplex: Simplex },

    /// Level `level` contains `simplex` without its face `missing`.
    #[error("level {level} is not a complex: {simplex} is present but its face {missing} is not")]
    NotAComplex {
        level: usize,
        simplex: Simplex,
        missing: Simplex,
    },
}

/// Checks that every level is face-closed and that each level is contained in
/// the next. Adjacent pairs suffice since inclusion is transitive. A nesting
/// violation names the highest-dimensional missing simplex.
pub fn validate(levels: &[SimplicialComplex]) -> Result<(), FiltrationViolation> {
    for (level, k) in levels.iter().enumerate() {
        if let Some((simplex, missing)) = k
            .iter()
            .find_map(|s| s.faces().find(|f| !k.contains(f)).map(|f| (s.clone(), f)))
        {
            return Err(FiltrationViolation::NotAComplex {
                level,
                simplex,
                missing,
            });
        }
    }
    for (level, pair) in levels.windows(2).enumerate() {
        let top = pair[0].top_dimension().unwrap_or(0);
        let missing = (0..=top)
            .rev()
            .flat_map(|d| pair[0].n_simplices(d))
            .find(|s| !pair[1].contains(s));
        if let Some(simplex) = missing {
            return Err(FiltrationViolation::NotNested {
                level,
                simplex: simplex.clone(),
            });
        }
    }
    Ok(())
}

/// A validated filtration `K^0 ⊆ K^1 ⊆ … ⊆ K^m`, with every level stored
/// in full.
#[derive(Clone, PartialEq, Eq)]
pub struct Filtration {
    levels: Vec<SimplicialComplex>,
}

impl Filtration {
    pub fn new(levels: Vec<SimplicialComplex>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyFiltration);
        }
        validate(&levels)?;
        Ok(Self { levels })
    }

    /// Level `j` is the closure of `level_facets[j]`; the lists are cumulative.
    pub fn from_level_facets<L, F>(level_facets: L) -> Result<Self>
    where
        L: IntoIterator<Item = F>,
        F: IntoIterator<Item = Simplex>,
    {
        Self::new(
            level_facets
                .into_iter()
                .map(SimplicialComplex::closure_of_facets)
                .collect(),
        )
    }

    /// Accumulates per-level facet deltas: level `j` is the closure of every
    /// facet listed at levels `0..=j`.
    pub fn from_incremental_facets<L, F>(deltas: L) -> Result<Self>
    where
        L: IntoIterator<Item = F>,
        F: IntoIterator<Item = Simplex>,
    {
        let mut acc: Vec<Simplex> = Vec::new();
        let mut levels = Vec::new();
        for delta in deltas {
            acc.extend(delta);
            levels.push(SimplicialComplex::closure_of_facets(acc.iter().cloned()));
            acc = levels.last().map(SimplicialComplex::facets).unwrap_or_default();
        }
        Self::new(levels)
    }

    pub fn levels(&self) -> &[SimplicialComplex] {
        &self.levels
    }

    pub fn level(&self, j: usize) -> &SimplicialComplex {
        &self.levels[j]
    }

    /// `m`, the index of the last level.
    pub fn last_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// Top dimension of `K^m`.
    pub fn top_dimension(&self) -> Option<usize> {
        self.levels[self.last_level()].top_dimension()
    }

    /// Checks `j ≤ p ≤ m`.
    pub fn check_levels(&self, j: usize, p: usize) -> Result<()> {
        if j > p || p > self.last_level() {
            return Err(Error::LevelRange {
                j,
                p,
                last: self.last_level(),
                constraint: "0 <= j <= p <= m",
            });
        }
        Ok(())
    }

    /// The matrix of the inclusion `C_n(K^j) → C_n(K^p)`, shape
    /// `|S_n(K^p)| × |S_n(K^j)|`, with exactly one one per column.
    pub fn inclusion_matrix(&self, n: usize, j: usize, p: usize) -> Result<Gf2Matrix> {
        self.check_levels(j, p)?;
        let target = &self.levels[p];
        let rows = target.n_simplices(n).len();
        Ok(Gf2Matrix::from_column_supports(
            rows,
            self.levels[j].n_simplices(n).iter().map(|s| {
                let r = target
                    .index_of(s)
                    .expect("filtration levels are nested by construction");
                [r]
            }),
        ))
    }
}

impl fmt::Debug for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.levels).finish()
    }
}
