//! Exact linear algebra over Z, Q and F_p.

pub mod cohomology;
pub mod field;
pub mod fprank;
pub mod qrank;
pub mod ring;
pub mod smith;
pub mod sparse;

pub use cohomology::{cohomology_at, CohomologyGroup};
pub use field::rank_and_kernel;
pub use ring::{is_prime, prime_factors, Ring};
pub use smith::{smith_normal_form, SmithForm};
pub use sparse::SparseMatrix;

use crate::error::{Error, Result};

/// Rank over a field. `Q` uses exact fraction-free elimination.
pub fn rank(m: &SparseMatrix, ring: Ring) -> Result<usize> {
    rank_of_columns(m.rows(), m.column_vectors(), ring)
}

/// Rank of the span of integer vectors in `ring^dim`.
pub fn rank_of_columns(dim: usize, cols: Vec<Vec<(usize, i64)>>, ring: Ring) -> Result<usize> {
    match ring {
        Ring::Integers => Err(Error::NeedsField { op: "rank" }),
        Ring::Rationals => Ok(qrank::rank_of_vectors(dim, cols)),
        Ring::PrimeField(p) => {
            let v = cols
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|(i, x)| (i, x.rem_euclid(p as i64) as u64))
                        .filter(|e| e.1 != 0)
                        .collect()
                })
                .collect();
            Ok(fprank::rank_of_vectors(dim, v, p))
        }
    }
}
