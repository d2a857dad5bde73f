//! Brute-force homology by exhaustive enumeration of chains.
//!
//! Every subspace is materialized as its full list of elements, so the
//! quotient dimensions are read off as base-2 logarithms of set sizes. Nothing
//! here uses elimination; only matrix-vector products.

use std::collections::BTreeSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::gf2::Gf2Matrix;

/// Default cap on the number of enumerated coordinates: `2^20` vectors.
pub const DEFAULT_MAX_BITS: usize = 20;

/// A subspace of `GF(2)^ambient_dim` given by all of its elements, each a
/// packed bit-vector, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSet {
    ambient_dim: usize,
    members: Vec<Vec<u64>>,
}

impl ChainSet {
    fn from_set(ambient_dim: usize, members: BTreeSet<Vec<u64>>) -> Self {
        let set = Self {
            ambient_dim,
            members: members.into_iter().collect(),
        };
        debug_assert!(set.len().is_power_of_two());
        set
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn members(&self) -> &[Vec<u64>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.members.binary_search_by(|m| m.as_slice().cmp(v)).is_ok()
    }

    /// `log2 |members|`.
    pub fn dimension(&self) -> usize {
        self.len().trailing_zeros() as usize
    }

    /// True iff the members are closed under XOR and include zero.
    pub fn is_subspace(&self) -> bool {
        let zero = vec![0u64; self.ambient_dim.div_ceil(64)];
        self.contains(&zero)
            && self.members.iter().all(|a| {
                self.members.iter().all(|b| {
                    let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| x ^ y).collect();
                    self.contains(&s)
                })
            })
    }

    /// Sorted-merge intersection.
    pub fn intersect(&self, other: &ChainSet) -> ChainSet {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let (mut i, mut k) = (0, 0);
        let mut out = Vec::new();
        while i < self.members.len() && k < other.members.len() {
            match self.members[i].cmp(&other.members[k]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => k += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i].clone());
                    i += 1;
                    k += 1;
                }
            }
        }
        ChainSet {
            ambient_dim: self.ambient_dim,
            members: out,
        }
    }

    /// `{ m·x : x ∈ self }`.
    pub fn map(&self, m: &Gf2Matrix) -> ChainSet {
        assert_eq!(m.cols(), self.ambient_dim);
        ChainSet::from_set(m.rows(), self.members.iter().map(|x| m.apply(x)).collect())
    }

    pub fn is_subset_of(&self, other: &ChainSet) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

/// Enumeration limits; `max_bits` bounds the number of free coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_bits: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// Every `x ∈ {0,1}^bits` as a packed vector.
fn all_vectors(bits: usize) -> impl Iterator<Item = Vec<u64>> {
    let words = bits.div_ceil(64);
    (0u64..1 << bits).map(move |i| {
        let mut v = vec![0u64; words];
        if words > 0 {
            v[0] = i;
        }
        v
    })
}

impl Oracle {
    pub fn new(max_bits: usize) -> Self {
        Self { max_bits }
    }

    fn check(&self, what: &'static str, bits: usize) -> Result<()> {
        if bits > self.max_bits || bits >= 64 {
            return Err(Error::EnumerationBound {
                what,
                bits,
                limit: self.max_bits.min(63),
            });
        }
        Ok(())
    }

    /// `{ x : D·x = 0 }` by testing every `x`.
    pub fn enumerate_kernel(&self, d: &Gf2Matrix) -> Result<ChainSet> {
        self.check("kernel", d.cols())?;
        let members = all_vectors(d.cols())
            .filter(|x| d.apply(x).iter().all(|&w| w == 0))
            .collect();
        Ok(ChainSet::from_set(d.cols(), members))
    }

    /// `{ D·x }` over every `x`.
    pub fn enumerate_image(&self, d: &Gf2Matrix) -> Result<ChainSet> {
        self.check("image", d.cols())?;
        let members = all_vectors(d.cols()).map(|x| d.apply(&x)).collect();
        Ok(ChainSet::from_set(d.rows(), members))
    }

    /// `dim Z_n − dim B_n`, after checking `B_n ⊆ Z_n`.
    pub fn betti(&self, c: &SimplicialComplex, n: usize) -> Result<usize> {
        let cycles = self.enumerate_kernel(&c.boundary_matrix(n))?;
        let boundaries = self.enumerate_image(&c.boundary_matrix(n + 1))?;
        if !boundaries.is_subset_of(&cycles) {
            return Err(Error::BoundaryNotCycle(n));
        }
        Ok(cycles.dimension() - boundaries.dimension())
    }

    /// `dim i(Z_n^j) − dim (i(Z_n^j) ∩ B_n^p)`.
    pub fn persistent_betti(&self, f: &Filtration, n: usize, j: usize, p: usize) -> Result<usize> {
        let inclusion = f.inclusion_matrix(n, j, p)?;
        let cycles = self.enumerate_kernel(&f.level(j).boundary_matrix(n))?;
        let boundaries = self.enumerate_image(&f.level(p).boundary_matrix(n + 1))?;
        let included = cycles.map(&inclusion);
        let dead = included.intersect(&boundaries);
        Ok(included.dimension() - dead.dimension())
    }

    /// Whether every enumeration needed for `betti(c, n)` is within bounds.
    pub fn fits_complex(&self, c: &SimplicialComplex, n: usize) -> bool {
        c.n_simplices(n).len() <= self.max_bits && c.n_simplices(n + 1).len() <= self.max_bits
    }

    /// Whether every enumeration needed for any query on `f` in dimension `n`
    /// is within bounds.
    pub fn fits_filtration(&self, f: &Filtration, n: usize) -> bool {
        f.levels().iter().all(|k| self.fits_complex(k, n))
    }
}

pub fn enumerate_kernel(d: &Gf2Matrix) -> Result<ChainSet> {
    Oracle::default().enumerate_kernel(d)
}

pub fn enumerate_image(d: &Gf2Matrix) -> Result<ChainSet> {
    Oracle::default().enumerate_image(d)
}

pub fn oracle_betti(c: &SimplicialComplex, n: usize) -> Result<usize> {
    Oracle::default().betti(c, n)
}

pub fn oracle_persistent_betti(f: &Filtration, n: usize, j: usize, p: usize) -> Result<usize> {
    Oracle::default().persistent_betti(f, n, j, p)
}
