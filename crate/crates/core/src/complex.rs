//! Simplices, simplicial complexes and their boundary matrices.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

pub type Vertex = u64;

/// A non-empty set of vertices, stored as a strictly increasing sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Self(v))
    }

    pub fn vertex(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// `|vertices| - 1`.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// The simplex with its `i`-th vertex removed.
    pub fn face(&self, i: usize) -> Result<Simplex> {
        if self.0.len() < 2 {
            return Err(Error::FaceOfVertex(self.clone()));
        }
        if i > self.dimension() {
            return Err(Error::FaceIndexOutOfRange {
                simplex: self.clone(),
                dimension: self.dimension(),
                index: i,
            });
        }
        let mut v = self.0.clone();
        v.remove(i);
        Ok(Simplex(v))
    }

    /// All codimension-one faces in face-index order (empty for a vertex).
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() < 2 { 0 } else { self.0.len() };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;

    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl TryFrom<&[Vertex]> for Simplex {
    type Error = Error;

    fn try_from(v: &[Vertex]) -> Result<Self> {
        Simplex::new(v.iter().copied())
    }
}

/// A face-closed finite set of simplices.
///
/// `by_dim[n]` holds the `n`-simplices in lexicographic order; that order is
/// the standard basis used by every boundary and inclusion matrix.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The smallest complex containing every facet.
    ///
    /// Faces are generated one dimension at a time from the top down, so each
    /// simplex is produced once per coface rather than once per facet subset.
    pub fn closure_of_facets<I>(facets: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut layers: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in facets {
            let d = s.dimension();
            if layers.len() <= d {
                layers.resize_with(d + 1, BTreeSet::new);
            }
            layers[d].insert(s);
        }
        for d in (1..layers.len()).rev() {
            let (lower, upper) = layers.split_at_mut(d);
            let below = &mut lower[d - 1];
            for s in &upper[0] {
                below.extend(s.faces());
            }
        }
        Self {
            by_dim: layers.into_iter().map(|l| l.into_iter().collect()).collect(),
        }
    }

    /// Builds a complex from an explicit simplex set, rejecting sets that are
    /// not face-closed.
    pub fn from_simplices(simplices: &BTreeSet<Simplex>) -> Result<Self> {
        if let Some((simplex, missing)) = missing_face(simplices) {
            return Err(Error::NotFaceClosed { simplex, missing });
        }
        Ok(Self::closure_of_facets(simplices.iter().cloned()))
    }

    /// The `n`-simplices in basis order; empty when there are none.
    pub fn n_simplices(&self, n: usize) -> &[Simplex] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    /// Position of `s` in the basis of its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.n_simplices(s.dimension()).binary_search(s).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Highest dimension with at least one simplex, `None` when empty.
    pub fn top_dimension(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|l| !l.is_empty())
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All simplices, by dimension then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn to_set(&self) -> BTreeSet<Simplex> {
        self.iter().cloned().collect()
    }

    /// The maximal simplices, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut faces_of_upper: BTreeSet<Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for d in (0..self.by_dim.len()).rev() {
            let next: BTreeSet<Simplex> = self.by_dim[d].iter().flat_map(|s| s.faces()).collect();
            out.extend(
                self.by_dim[d]
                    .iter()
                    .filter(|s| !faces_of_upper.contains(*s))
                    .cloned(),
            );
            faces_of_upper = next;
        }
        out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then(a.cmp(b)));
        out
    }

    /// The matrix of the boundary map `C_n → C_{n-1}`: `|S_{n-1}| × |S_n|`,
    /// with a one at `(r, k)` iff the `r`-th `(n-1)`-simplex is a face of the
    /// `k`-th `n`-simplex. `D_0` has no rows.
    pub fn boundary_matrix(&self, n: usize) -> Gf2Matrix {
        let cols = self.n_simplices(n);
        if n == 0 {
            return Gf2Matrix::zero(0, cols.len());
        }
        let rows = self.n_simplices(n - 1);
        Gf2Matrix::from_column_supports(
            rows.len(),
            cols.iter().map(|s| {
                s.faces()
                    .map(|f| {
                        rows.binary_search(&f)
                            .expect("complex is face-closed by construction")
                    })
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// `|S_n| − rank(D_n) − rank(D_{n+1})`.
    pub fn betti(&self, n: usize) -> usize {
        let simplices = self.n_simplices(n).len();
        if simplices == 0 {
            return 0;
        }
        let cycles = simplices - self.boundary_matrix(n).rank();
        cycles - self.boundary_matrix(n + 1).rank()
    }

    /// Betti numbers for dimensions `0..=top_dimension`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        match self.top_dimension() {
            Some(top) => (0..=top).map(|n| self.betti(n)).collect(),
            None => Vec::new(),
        }
    }

    /// `Σ (−1)^n |S_n|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(n, l)| if n % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// True iff every codimension-one face of every member is a member, which
/// by induction means every non-empty subset is.
pub fn is_complex(simplices: &BTreeSet<Simplex>) -> bool {
    missing_face(simplices).is_none()
}

fn missing_face(simplices: &BTreeSet<Simplex>) -> Option<(Simplex, Simplex)> {
    simplices.iter().find_map(|s| {
        s.faces()
            .find(|f| !simplices.contains(f))
            .map(|f| (s.clone(), f))
    })
}
