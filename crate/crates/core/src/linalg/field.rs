//! Generic Gauss–Jordan elimination over an exact field. Used where kernels
//! or particular solutions are needed; pure rank queries go through the
//! faster specialised engines in `fprank` and `qrank`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Ring, SparseMatrix};

/// Arithmetic of a field with an explicit context (the modulus for `F_p`).
pub trait FieldOps: Sync {
    type E: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn one(&self) -> Self::E {
        self.from_i64(1)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl FieldOps for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

/// Reduced row echelon form of a matrix given by sparse rows.
#[derive(Debug, Clone)]
pub struct Rref<E> {
    pub cols: usize,
    /// Pivot rows, each with leading coefficient one at `pivots[i]`.
    pub rows: Vec<Vec<(usize, E)>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn axpy<F: FieldOps>(f: &F, x: &[(usize, F::E)], c: &F::E, y: &[(usize, F::E)]) -> Vec<(usize, F::E)> {
    // x - c*y, both sorted by column
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, f.sub(&f.zero(), &f.mul(c, &y[j].1))));
            j += 1;
        } else {
            let v = f.sub(&x[i].1, &f.mul(c, &y[j].1));
            if !f.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gauss–Jordan elimination. Rows must be sorted by column with no zeros.
pub fn rref<F: FieldOps>(f: &F, cols: usize, input: Vec<Vec<(usize, F::E)>>) -> Rref<F::E> {
    let mut rows: Vec<Vec<(usize, F::E)>> = Vec::new();
    let mut pivot_row: Vec<Option<usize>> = vec![None; cols];
    for mut r in input {
        // forward reduce against existing pivots
        let mut k = 0;
        while k < r.len() {
            let c = r[k].0;
            if let Some(pi) = pivot_row[c] {
                let coef = r[k].1.clone();
                r = axpy(f, &r, &coef, &rows[pi]);
                // entries before k are untouched; position k was eliminated
            } else {
                k += 1;
            }
        }
        if r.is_empty() {
            continue;
        }
        // choose the first column as pivot; normalise
        let lead = r[0].0;
        let inv = f.inv(&r[0].1);
        for e in r.iter_mut() {
            e.1 = f.mul(&e.1, &inv);
        }
        // back-substitute into existing rows
        let idx = rows.len();
        for row in rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&lead, |e| e.0) {
                let coef = row[pos].1.clone();
                *row = axpy(f, row, &coef, &r);
            }
        }
        rows.push(r);
        pivot_row[lead] = Some(idx);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| rows[i][0].0);
    let rows: Vec<_> = order.into_iter().map(|i| rows[i].clone()).collect();
    let pivots = rows.iter().map(|r| r[0].0).collect();
    Rref { cols, rows, pivots }
}

/// Kernel basis from an RREF: one vector per free column.
pub fn kernel_from_rref<F: FieldOps>(f: &F, r: &Rref<F::E>) -> Vec<Vec<(usize, F::E)>> {
    let mut is_pivot = vec![false; r.cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![(free, f.one())];
        for (row, &pc) in r.rows.iter().zip(&r.pivots) {
            if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                v.push((pc, f.sub(&f.zero(), &row[pos].1)));
            }
        }
        v.sort_by_key(|e| e.0);
        basis.push(v);
    }
    basis
}

pub fn rows_in<F: FieldOps>(f: &F, m: &SparseMatrix) -> Vec<Vec<(usize, F::E)>> {
    m.row_vectors()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| (c, f.from_i64(v)))
                .filter(|(_, v)| !f.is_zero(v))
                .collect()
        })
        .collect()
}

/// Rank and kernel basis over a field. Rational kernel vectors are scaled to
/// primitive integer vectors; `F_p` vectors use residues in `[0, p)`.
pub fn rank_and_kernel(m: &SparseMatrix, ring: Ring) -> Result<(usize, Vec<Vec<(usize, BigInt)>>)> {
    match ring {
        Ring::Integers => Err(Error::NeedsField { op: "rank_and_kernel" }),
        Ring::PrimeField(p) => {
            let f = PrimeField { p };
            let r = rref(&f, m.cols(), rows_in(&f, m));
            let ker = kernel_from_rref(&f, &r)
                .into_iter()
                .map(|v| v.into_iter().map(|(c, x)| (c, BigInt::from(x))).collect())
                .collect();
            Ok((r.rank(), ker))
        }
        Ring::Rationals => {
            let f = Rationals;
            let r = rref(&f, m.cols(), rows_in(&f, m));
            let ker = kernel_from_rref(&f, &r).into_iter().map(primitive_integer_vector).collect();
            Ok((r.rank(), ker))
        }
    }
}

/// Clears denominators and removes content; the first entry is made positive.
pub fn primitive_integer_vector(v: Vec<(usize, BigRational)>) -> Vec<(usize, BigInt)> {
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut ints: Vec<(usize, BigInt)> = v
        .into_iter()
        .map(|(c, x)| (c, x.numer() * (&lcm / x.denom())))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() {
        let sign = if ints[0].1.is_negative() { -BigInt::one() } else { BigInt::one() };
        for e in ints.iter_mut() {
            e.1 = &e.1 / &g * &sign;
        }
    }
    ints
}

/// Solves `A · x = b` for `A` given by sparse rows; `None` if inconsistent.
pub fn solve<F: FieldOps>(
    f: &F,
    cols: usize,
    mut rows: Vec<Vec<(usize, F::E)>>,
    b: &[(usize, F::E)],
) -> Option<Vec<(usize, F::E)>> {
    // augment with b as the last column; inconsistent iff it becomes a pivot
    for (r, v) in b {
        if !f.is_zero(v) {
            rows[*r].push((cols, v.clone()));
        }
    }
    let red = rref(f, cols + 1, rows);
    if red.pivots.contains(&cols) {
        return None;
    }
    let mut x = Vec::new();
    for (row, &pc) in red.rows.iter().zip(&red.pivots) {
        if let Some((c, v)) = row.last() {
            if *c == cols {
                x.push((pc, v.clone()));
            }
        }
    }
    x.sort_by_key(|e| e.0);
    Some(x)
}

/// Solves `m · x = b` over `F_p`; `None` if inconsistent.
pub fn solve_mod_p(m: &SparseMatrix, b: &[(usize, i64)], p: u64) -> Option<Vec<(usize, u64)>> {
    let f = PrimeField { p };
    let b: Vec<_> = b.iter().map(|&(r, v)| (r, f.from_i64(v))).collect();
    solve(&f, m.cols(), rows_in(&f, m), &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_kernel(m: &SparseMatrix, ring: Ring, ker: &[Vec<(usize, BigInt)>]) {
        for v in ker {
            for row in m.row_vectors() {
                let mut s = BigInt::zero();
                for (c, a) in row {
                    if let Some((_, x)) = v.iter().find(|e| e.0 == c) {
                        s += BigInt::from(a) * x;
                    }
                }
                if let Ring::PrimeField(p) = ring {
                    s %= BigInt::from(p);
                }
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let (r, k) = rank_and_kernel(&SparseMatrix::identity(2), Ring::PrimeField(5)).unwrap();
        assert_eq!((r, k.len()), (2, 0));
        let (r, k) = rank_and_kernel(&SparseMatrix::zeros(3, 4), Ring::Rationals).unwrap();
        assert_eq!((r, k.len()), (0, 4));
    }

    #[test]
    fn rank_one_mod_five() {
        let m = SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]]);
        let (r, k) = rank_and_kernel(&m, Ring::PrimeField(5)).unwrap();
        assert_eq!(r, 1);
        // (-2, 1) ≡ (3, 1) mod 5
        assert_eq!(k, vec![vec![(0, BigInt::from(3)), (1, BigInt::from(1))]]);
        check_kernel(&m, Ring::PrimeField(5), &k);
    }

    #[test]
    fn integers_rejected() {
        assert!(rank_and_kernel(&SparseMatrix::identity(1), Ring::Integers).is_err());
    }

    #[test]
    fn rational_kernel_is_primitive() {
        let m = SparseMatrix::from_dense(&[vec![2, 3, 0], vec![0, 6, 4]]);
        let (r, k) = rank_and_kernel(&m, Ring::Rationals).unwrap();
        assert_eq!(r, 2);
        assert_eq!(k.len(), 1);
        check_kernel(&m, Ring::Rationals, &k);
        let g = k[0].iter().fold(BigInt::zero(), |a, (_, x)| a.gcd(x));
        assert!(g.is_one());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = SparseMatrix::from_dense(&[vec![1, 1], vec![2, 2]]);
        assert!(solve_mod_p(&m, &[(0, 1), (1, 2)], 7).is_some());
        assert!(solve_mod_p(&m, &[(0, 1)], 7).is_none());
    }
}
