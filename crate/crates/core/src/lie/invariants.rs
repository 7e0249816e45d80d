use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Ring;

/// Element of `Sˢ(g*)`: exponent vector (length n, total degree s) ↦ scalar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPolynomial {
    pub n: usize,
    pub degree: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl InvariantPolynomial {
    pub fn zero(n: usize, degree: usize) -> Self {
        InvariantPolynomial { n, degree, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: i64, ring: Ring) {
        assert_eq!(exps.len(), self.n);
        assert_eq!(exps.iter().sum::<u32>() as usize, self.degree, "inhomogeneous term");
        let e = self.terms.entry(exps).or_insert(0);
        *e = ring.reduce(*e + c);
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reduce(&self, ring: Ring) -> InvariantPolynomial {
        let mut p = InvariantPolynomial::zero(self.n, self.degree);
        for (e, c) in self.terms() {
            p.add_term(e.clone(), c, ring);
        }
        p
    }
}

type Poly = BTreeMap<Vec<u32>, i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        // insert k-1 at each position; sign flips with each transposition
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// `σ_i` on `sl(n)`: the sum of principal `i × i` minors of the generic
/// trace-zero matrix `Σ_b y_b M_b`, written in the dual basis coordinates
/// `y_b` of the built-in basis.
pub fn sigma_invariant(n: usize, i: usize) -> Result<InvariantPolynomial> {
    if n < 2 || i < 2 || i > n {
        return Err(Error::OutOfRange(format!("sigma_{i} on sl({n}) needs 2 ≤ i ≤ n")));
    }
    let dim = n * n - 1;
    // generic matrix entries as linear polynomials, in the order used by
    // `builtins::sl`: Cartan first, then (E_ij, E_ji) pairs
    let mut x: Vec<Vec<Poly>> = vec![vec![Poly::new(); n]; n];
    let lin = |b: usize| {
        let mut e = vec![0u32; dim];
        e[b] = 1;
        e
    };
    for h in 0..n - 1 {
        *x[h][h].entry(lin(h)).or_insert(0) += 1;
        *x[h + 1][h + 1].entry(lin(h)).or_insert(0) -= 1;
    }
    let mut b = n - 1;
    for r in 0..n {
        for c in r + 1..n {
            x[r][c].insert(lin(b), 1);
            x[c][r].insert(lin(b + 1), 1);
            b += 2;
        }
    }
    debug_assert_eq!(b, dim);
    let perms = permutations(i);
    let mut total = Poly::new();
    for subset in subsets(n, i) {
        for (perm, sign) in &perms {
            let mut term: Poly = [(vec![0u32; dim], *sign)].into_iter().collect();
            for (r, &pc) in perm.iter().enumerate() {
                term = poly_mul(&term, &x[subset[r]][subset[pc]]);
                if term.is_empty() {
                    break;
                }
            }
            for (e, c) in term {
                *total.entry(e).or_insert(0) += c;
            }
        }
    }
    total.retain(|_, v| *v != 0);
    Ok(InvariantPolynomial { n: dim, degree: i, terms: total })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma2_on_sl2() {
        let s = sigma_invariant(2, 2).unwrap();
        assert_eq!(s.coefficient(&[2, 0, 0]), -1);
        assert_eq!(s.coefficient(&[0, 1, 1]), -1);
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn range_checked() {
        assert!(sigma_invariant(3, 1).is_err());
        assert!(sigma_invariant(3, 4).is_err());
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i64>(), 0);
        assert!(p.contains(&(vec![0, 1, 2], 1)));
        assert!(p.contains(&(vec![1, 0, 2], -1)));
        assert!(p.contains(&(vec![1, 2, 0], 1)));
    }
}
