//! Seeded random complexes and filtrations.
//!
//! Filtrations are built from triangles: each facet is a uniformly drawn
//! 3-subset of `{0, …, V−1}` assigned a uniform level in `0..L`, and level `j`
//! lists every facet whose level is at most `j`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::Result;
use crate::filtration::Filtration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiltrationParams {
    pub triangles: usize,
    pub levels: usize,
    pub vertices: usize,
    pub seed: u64,
}

impl FiltrationParams {
    /// Uses `3·⌈√T⌉` vertices.
    pub fn new(triangles: usize, levels: usize, seed: u64) -> Self {
        Self {
            triangles,
            levels,
            vertices: default_vertices(triangles),
            seed,
        }
    }
}

/// `3·⌈√T⌉`, and never fewer than 3.
pub fn default_vertices(triangles: usize) -> usize {
    let mut root = (triangles as f64).sqrt().ceil() as usize;
    while root * root < triangles {
        root += 1;
    }
    while root > 0 && (root - 1) * (root - 1) >= triangles {
        root -= 1;
    }
    (3 * root).max(3)
}

fn random_facet(rng: &mut impl Rng, vertices: usize, size: usize) -> Simplex {
    Simplex::new(sample(rng, vertices, size).into_iter().map(|v| v as u64))
        .expect("sampled vertices are distinct")
}

/// Cumulative per-level facet lists. Panics if `vertices < 3` or `levels == 0`.
pub fn random_level_facets(params: &FiltrationParams) -> Vec<Vec<Simplex>> {
    assert!(params.vertices >= 3, "need at least 3 vertices");
    assert!(params.levels >= 1, "need at least one level");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let drawn: Vec<(usize, Simplex)> = (0..params.triangles)
        .map(|_| {
            let facet = random_facet(&mut rng, params.vertices, 3);
            (rng.gen_range(0..params.levels), facet)
        })
        .collect();
    (0..params.levels)
        .map(|j| {
            drawn
                .iter()
                .filter(|(level, _)| *level <= j)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect()
}

pub fn random_filtration(params: &FiltrationParams) -> Result<Filtration> {
    Filtration::from_level_facets(random_level_facets(params))
}

/// Closure of `facets` random facets over `vertices` vertices, each with a
/// uniform size in `1..=max_size`.
pub fn random_complex(vertices: usize, facets: usize, max_size: usize, seed: u64) -> SimplicialComplex {
    assert!(max_size >= 1 && max_size <= vertices);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SimplicialComplex::closure_of_facets(
        (0..facets)
            .map(|_| {
                let size = rng.gen_range(1..=max_size);
                random_facet(&mut rng, vertices, size)
            })
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_vertex_budget() {
        assert_eq!(default_vertices(1), 3);
        assert_eq!(default_vertices(4), 6);
        assert_eq!(default_vertices(10), 12);
        assert_eq!(default_vertices(500), 69);
    }

    #[test]
    fn single_triangle_is_forced() {
        let f = random_filtration(&FiltrationParams {
            triangles: 1,
            levels: 1,
            vertices: 3,
            seed: 99,
        })
        .unwrap();
        assert_eq!(f.last_level(), 0);
        assert_eq!(f.level(0).len(), 7);
        assert_eq!(f.level(0).n_simplices(2), &[Simplex::new([0, 1, 2]).unwrap()]);
    }

    #[test]
    fn seeded_and_cumulative() {
        let p = FiltrationParams::new(10, 5, 42);
        assert_eq!(p.vertices, 12);
        let a = random_level_facets(&p);
        assert_eq!(a, random_level_facets(&p));
        assert_eq!(a.len(), 5);
        assert_eq!(a[4].len(), 10);
        for w in a.windows(2) {
            assert!(w[0].iter().all(|s| w[1].contains(s)));
        }
        assert_ne!(a, random_level_facets(&FiltrationParams { seed: 43, ..p }));
        assert!(random_filtration(&p).is_ok());
    }

    #[test]
    fn random_complex_respects_size() {
        let c = random_complex(8, 6, 4, 1);
        assert!(c.top_dimension().unwrap() <= 3);
        assert_eq!(c, random_complex(8, 6, 4, 1));
    }
}
