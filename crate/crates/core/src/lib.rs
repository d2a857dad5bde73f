//! Exact persistent homology over GF(2).
//!
//! Complexes are built from facets, filtrations are nested sequences of
//! complexes, and every homological quantity is computed from ranks of
//! bit-packed GF(2) matrices:
//!
//! - [`gf2`]: dense GF(2) matrices (rank, kernel basis, products, stacking)
//! - [`complex`]: simplices, face closure, boundary matrices, Betti numbers
//! - [`filtration`]: validated filtrations and inclusion matrices
//! - [`persistence`]: persistent Betti numbers, multiplicities, barcodes and
//!   the fundamental-lemma checker
//! - [`oracle`]: brute-force enumeration of cycles and boundaries, used for
//!   differential testing
//! - [`random`]: seeded random complexes and filtrations
//!
//! ```
//! use phcalc_core::{Simplex, SimplicialComplex};
//!
//! let facets = [vec![2, 3], vec![3, 4], vec![3, 5], vec![4, 5], vec![0, 1, 2]]
//!     .into_iter()
//!     .map(|v| Simplex::new(v).unwrap());
//! let k = SimplicialComplex::closure_of_facets(facets);
//! assert_eq!(k.betti(0), 1);
//! assert_eq!(k.betti(1), 1);
//! ```
//!
//! The `parallel` feature (on by default) evaluates persistent-Betti tables
//! on the rayon thread pool.

pub mod complex;
mod error;
pub mod filtration;
pub mod gf2;
pub mod oracle;
pub mod persistence;
pub mod random;

pub use complex::{is_complex, Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use filtration::{Filtration, FiltrationViolation};
pub use gf2::Gf2Matrix;
pub use oracle::{oracle_betti, oracle_persistent_betti, ChainSet, Oracle};
pub use persistence::{
    barcode, check_fundamental_lemma, mu, mu_infinity, persistent_betti, Barcode, BettiTable, Death,
    LemmaReport, LemmaViolation, PersistenceInputs, PersistencePair,
};
