use serde::{Deserialize, Serialize};

use crate::lie::{InvariantPolynomial, LieAlgebra};
use crate::linalg::Ring;

/// Symmetric bilinear form on the algebra, as a matrix in its basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearForm {
    pub matrix: Vec<Vec<i64>>,
}

impl BilinearForm {
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.matrix[a][b]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    /// Exact determinant (Bareiss), as `i128`.
    pub fn determinant(&self) -> i128 {
        let n = self.matrix.len();
        let mut a: Vec<Vec<i128>> = self.matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * a[n - 1][n - 1]
        }
    }

    /// The quadratic function `X ↦ K(X, X)` as an element of `S²(g*)`.
    pub fn quadratic(&self, ring: Ring) -> InvariantPolynomial {
        let n = self.matrix.len();
        let mut p = InvariantPolynomial::zero(n, 2);
        for a in 0..n {
            for b in 0..n {
                let mut e = vec![0u32; n];
                e[a] += 1;
                e[b] += 1;
                p.add_term(e, self.matrix[a][b], ring);
            }
        }
        p
    }
}

/// `K(a, b) = trace(ad a ∘ ad b)`, reduced in the algebra's ring.
pub fn killing_form(l: &LieAlgebra) -> BilinearForm {
    let n = l.dim();
    let c = l.structure_tensor();
    let ring = l.ring();
    let mut m = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in 0..n {
            // (ad a ∘ ad b)(x_k) = [a, [b, x_k]]; trace picks the x_k coefficient
            let mut tr = 0i128;
            for k in 0..n {
                for l2 in 0..n {
                    tr += c[b][k][l2] as i128 * c[a][l2][k] as i128;
                }
            }
            m[a][b] = ring.reduce_wide(tr);
        }
    }
    BilinearForm { matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;

    #[test]
    fn sl2_values() {
        let k = killing_form(&builtin("sl2", Ring::Integers).unwrap());
        assert_eq!((k.get(0, 0), k.get(1, 2), k.get(2, 1), k.get(0, 1)), (8, 4, 4, 0));
        assert!(k.is_symmetric());
    }

    #[test]
    fn nonabelian2_and_abelian() {
        let k = killing_form(&builtin("nonabelian2", Ring::Integers).unwrap());
        assert_eq!(k.matrix, vec![vec![1, 0], vec![0, 0]]);
        assert!(killing_form(&builtin("abelian3", Ring::Integers).unwrap()).is_zero());
    }

    #[test]
    fn sl_n_nondegenerate() {
        for n in 2..=4 {
            let l = crate::lie::builtins::sl(n, 16).unwrap();
            assert_ne!(killing_form(&l).determinant(), 0, "sl{n}");
        }
    }

    #[test]
    fn sl2_quadratic_is_eight_casimir() {
        let q = killing_form(&builtin("sl2", Ring::Integers).unwrap()).quadratic(Ring::Integers);
        // 8(H² + EF)
        assert_eq!(q.coefficient(&[2, 0, 0]), 8);
        assert_eq!(q.coefficient(&[0, 1, 1]), 8);
        assert_eq!(q.terms().count(), 2);
    }
}
