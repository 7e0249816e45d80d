//! Smith normal form over Z by elementary operations, pivoting on the entry
//! of least absolute value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    /// Nonzero invariant factors d₁ | d₂ | …, all positive.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn dense(m: &SparseMatrix) -> Dense {
    let mut d = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for &(r, c, v) in m.entries() {
        d[r][c] = BigInt::from(v);
    }
    d
}

/// Column-operation bookkeeping: maintains `V` and `V⁻¹` with `A·V` the
/// current matrix (up to row operations).
struct ColTransform {
    v: Dense,
    v_inv: Dense,
}

impl ColTransform {
    fn new(n: usize) -> Self {
        let id: Dense = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        ColTransform { v: id.clone(), v_inv: id }
    }
    fn swap(&mut self, i: usize, j: usize) {
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }
    /// col_j += q * col_i
    fn add(&mut self, j: usize, i: usize, q: &BigInt) {
        for row in self.v.iter_mut() {
            let t = &row[i] * q;
            row[j] += t;
        }
        // inverse: row_i -= q * row_j
        let rj = self.v_inv[j].clone();
        for (x, y) in self.v_inv[i].iter_mut().zip(rj) {
            *x -= q * y;
        }
    }
    fn negate(&mut self, j: usize) {
        for row in self.v.iter_mut() {
            row[j] = -row[j].clone();
        }
        for x in self.v_inv[j].iter_mut() {
            *x = -x.clone();
        }
    }
}

/// Core reduction. Returns the diagonal (not yet divisibility-normalised)
/// and, when requested, the column transform.
fn reduce(mut a: Dense, rows: usize, cols: usize, mut ct: Option<&mut ColTransform>) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // pivot: minimal nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero() {
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            if let Some(t) = ct.as_deref_mut() {
                t.swap(k, pj);
            }
        }
        loop {
            let mut dirty = false;
            // clear column k below the pivot
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&a[k][k]);
                let pivot_row = a[k].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                    *x -= &q * y;
                }
                if !a[i][k].is_zero() {
                    dirty = true;
                }
            }
            // clear row k right of the pivot
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = a[k][j].div_floor(&a[k][k]);
                let mq = -q.clone();
                for row in a.iter_mut().skip(k) {
                    let t = &row[k] * &mq;
                    row[j] += t;
                }
                if let Some(t) = ct.as_deref_mut() {
                    t.add(j, k, &mq);
                }
                if !a[k][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility: every trailing entry must be a multiple of the pivot
                let mut bad = None;
                'scan: for i in k + 1..rows {
                    for j in k + 1..cols {
                        if !a[i][j].is_zero() && !(&a[i][j] % &a[k][k]).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        // row_k += row_i brings a non-multiple into row k
                        let ri = a[i].clone();
                        for (x, y) in a[k].iter_mut().zip(ri) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/col k into the pivot position
            let mut best = (k, k);
            for i in k..rows {
                if !a[i][k].is_zero() && a[i][k].abs() < a[best.0][best.1].abs() {
                    best = (i, k);
                }
            }
            for j in k..cols {
                if !a[k][j].is_zero() && a[k][j].abs() < a[best.0][best.1].abs() {
                    best = (k, j);
                }
            }
            if best.0 != k {
                a.swap(k, best.0);
            } else if best.1 != k {
                for row in a.iter_mut() {
                    row.swap(k, best.1);
                }
                if let Some(t) = ct.as_deref_mut() {
                    t.swap(k, best.1);
                }
            }
        }
        if a[k][k].is_negative() {
            for row in a.iter_mut().skip(k) {
                row[k] = -row[k].clone();
            }
            if let Some(t) = ct.as_deref_mut() {
                t.negate(k);
            }
        }
        diag.push(a[k][k].clone());
        k += 1;
    }
    diag
}

/// Normalises any diagonal to the divisibility chain (gcd/lcm exchange).
fn normalise(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let diag = normalise(reduce(dense(m), m.rows(), m.cols(), None));
    SmithForm { rank: diag.len(), diagonal: diag }
}

/// Saturated Z-basis of `ker m` together with the coordinate map onto it:
/// returns `(basis, coords)` where `basis` is `cols × k` (columns span the
/// kernel lattice) and `coords` is a `k × cols` integer matrix with
/// `coords · basis = I` and `coords · x` the coordinates of any kernel
/// vector `x`.
pub fn saturated_kernel(m: &SparseMatrix) -> (Dense, Dense) {
    let n = m.cols();
    let mut ct = ColTransform::new(n);
    let rank = reduce(dense(m), m.rows(), n, Some(&mut ct)).len();
    let basis: Dense = ct.v.iter().map(|row| row[rank..].to_vec()).collect();
    let coords: Dense = ct.v_inv[rank..].to_vec();
    (basis, coords)
}

/// Smith form of a dense integer matrix.
pub fn smith_dense(a: Dense, rows: usize, cols: usize) -> SmithForm {
    let diag = normalise(reduce(a, rows, cols, None));
    SmithForm { rank: diag.len(), diagonal: diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseMatrix::from_dense(rows))
            .diagonal
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn basic_forms() {
        assert_eq!(snf(&[vec![2, 0], vec![0, 0]]), vec![2]);
        assert_eq!(snf(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_normal_form(&SparseMatrix::zeros(0, 0)).diagonal.len(), 0);
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[vec![4, 6]]), vec![2]);
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2 4) over Z is spanned by (-2, 1), not (-4, 2)
        let m = SparseMatrix::from_dense(&[vec![2, 4]]);
        let (basis, coords) = saturated_kernel(&m);
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].len(), 1);
        let v: Vec<i64> = basis.iter().map(|r| i64::try_from(&r[0]).unwrap()).collect();
        assert_eq!(2 * v[0] + 4 * v[1], 0);
        assert_eq!(v[0].abs().gcd(&v[1].abs()), 1);
        let dot: BigInt = coords[0].iter().zip(&basis).map(|(c, r)| c * &r[0]).sum();
        assert!(dot.is_one());
    }
}
