use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, smith, Ring, SparseMatrix};

/// Cohomology of `C_in --d_in--> C --d_out--> C_out` at the middle term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CohomologyGroup {
    Field { dim: usize },
    Integral { free_rank: usize, torsion: Vec<BigInt> },
}

impl CohomologyGroup {
    /// Dimension (field) or free rank (Z).
    pub fn rank(&self) -> usize {
        match self {
            CohomologyGroup::Field { dim } => *dim,
            CohomologyGroup::Integral { free_rank, .. } => *free_rank,
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        match self {
            CohomologyGroup::Field { .. } => &[],
            CohomologyGroup::Integral { torsion, .. } => torsion,
        }
    }
}

/// Checks shapes and `d_out ∘ d_in = 0`; `block` names the term in errors.
pub fn check_pair(d_in: &SparseMatrix, d_out: &SparseMatrix, ring: Ring, block: &str) -> Result<()> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Shape(format!(
            "at {block}: d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in, if ring.is_field() { ring } else { Ring::Integers })?;
    if !comp.is_zero() {
        return Err(Error::NonzeroComposition { block: block.to_string() });
    }
    Ok(())
}

pub fn cohomology_at(d_in: &SparseMatrix, d_out: &SparseMatrix, ring: Ring) -> Result<CohomologyGroup> {
    cohomology_at_named(d_in, d_out, ring, "middle term")
}

pub fn cohomology_at_named(
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    ring: Ring,
    block: &str,
) -> Result<CohomologyGroup> {
    check_pair(d_in, d_out, ring, block)?;
    let n = d_out.cols();
    match ring {
        Ring::Integers => {
            let (free_rank, torsion) = integral(d_in, d_out);
            Ok(CohomologyGroup::Integral { free_rank, torsion })
        }
        _ => {
            let r_out = rank(d_out, ring)?;
            let r_in = rank(d_in, ring)?;
            Ok(CohomologyGroup::Field { dim: n - r_out - r_in })
        }
    }
}

/// Free rank and torsion via the saturated cocycle lattice: the image of
/// `d_in` is written in a Z-basis of `ker d_out` and its Smith form read off.
fn integral(d_in: &SparseMatrix, d_out: &SparseMatrix) -> (usize, Vec<BigInt>) {
    let (_, coords) = smith::saturated_kernel(d_out);
    let k = coords.len();
    let cols = d_in.column_vectors();
    let mut img = vec![vec![BigInt::zero(); cols.len()]; k];
    for (j, col) in cols.iter().enumerate() {
        for (i, crow) in coords.iter().enumerate() {
            let mut s = BigInt::zero();
            for &(r, v) in col {
                s += &crow[r] * v;
            }
            img[i][j] = s;
        }
    }
    let snf = smith::smith_dense(img, k, cols.len());
    (k - snf.rank, snf.torsion())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_field_case() {
        let h = cohomology_at(&SparseMatrix::zeros(3, 0), &SparseMatrix::zeros(0, 3), Ring::Rationals).unwrap();
        assert_eq!(h, CohomologyGroup::Field { dim: 3 });
    }

    #[test]
    fn multiplication_by_two() {
        let d_in = SparseMatrix::from_dense(&[vec![2]]);
        let d_out = SparseMatrix::zeros(0, 1);
        let h = cohomology_at(&d_in, &d_out, Ring::Integers).unwrap();
        assert_eq!(h, CohomologyGroup::Integral { free_rank: 0, torsion: vec![BigInt::from(2)] });
        let h5 = cohomology_at(&d_in, &d_out, Ring::PrimeField(2)).unwrap();
        assert_eq!(h5, CohomologyGroup::Field { dim: 1 });
    }

    #[test]
    fn nonzero_composition_is_reported() {
        let d = SparseMatrix::identity(2);
        let err = cohomology_at_named(&d, &d, Ring::Rationals, "(1,2)").unwrap_err();
        assert!(matches!(err, Error::NonzeroComposition { ref block } if block == "(1,2)"));
    }

    #[test]
    fn torsion_needs_saturation() {
        // C = Z², d_out = (1 1): kernel lattice spanned by (1,-1).
        // d_in sends 1 ↦ (2,-2): H = Z/2.
        let d_in = SparseMatrix::from_dense(&[vec![2], vec![-2]]);
        let d_out = SparseMatrix::from_dense(&[vec![1, 1]]);
        let h = cohomology_at(&d_in, &d_out, Ring::Integers).unwrap();
        assert_eq!(h, CohomologyGroup::Integral { free_rank: 0, torsion: vec![BigInt::from(2)] });
    }
}
