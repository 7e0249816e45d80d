//! Exact rank over Q by fraction-free elimination on integer vectors.
//!
//! Pivots are kept primitive (content divided out). The fast path runs in
//! `i128` with checked arithmetic; on overflow the whole computation is
//! restarted with `BigInt`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

trait Coef: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// `a*x - b*y`, `None` on overflow.
    fn comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

struct Overflow;

fn rank_generic<C: Coef>(dim: usize, vecs: &[Vec<(usize, i64)>]) -> Result<usize, Overflow> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; dim];
    let mut pivots: Vec<Vec<(usize, C)>> = Vec::new();
    let mut acc: Vec<C> = vec![C::zero(); dim];
    let mut live: Vec<bool> = vec![false; dim];
    let mut touched: Vec<usize> = Vec::new();
    let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    let mut queued = vec![false; dim];

    for v in vecs {
        for &(c, x) in v {
            if x == 0 {
                continue;
            }
            acc[c] = C::from_i64(x);
            if !live[c] {
                live[c] = true;
                touched.push(c);
            }
            if !queued[c] {
                queued[c] = true;
                heap.push(Reverse(c));
            }
        }
        while let Some(Reverse(c)) = heap.pop() {
            queued[c] = false;
            if acc[c].is_zero() {
                continue;
            }
            if let Some(k) = pivot_of[c] {
                let piv = &pivots[k];
                let a = piv[0].1.clone();
                let b = acc[c].clone();
                if a.is_unit() {
                    // a = ±1, so a⁻¹ = a and acc -= (b·a)·piv needs no rescaling
                    let zero = C::zero();
                    let one = C::from_i64(1);
                    let f = C::comb(&b, &a, &zero, &zero).ok_or(Overflow)?;
                    for (j, y) in piv {
                        acc[*j] = C::comb(&one, &acc[*j], &f, y).ok_or(Overflow)?;
                        if !live[*j] {
                            live[*j] = true;
                            touched.push(*j);
                        }
                        if !queued[*j] && !acc[*j].is_zero() {
                            queued[*j] = true;
                            heap.push(Reverse(*j));
                        }
                    }
                } else {
                    // acc = a*acc - b*piv
                    let zero = C::zero();
                    for &j in &touched {
                        if !acc[j].is_zero() {
                            acc[j] = C::comb(&a, &acc[j], &zero, &zero).ok_or(Overflow)?;
                        }
                    }
                    let one = C::from_i64(1);
                    for (j, y) in piv {
                        acc[*j] = C::comb(&one, &acc[*j], &b, y).ok_or(Overflow)?;
                        if !live[*j] {
                            live[*j] = true;
                            touched.push(*j);
                        }
                        if !queued[*j] && !acc[*j].is_zero() {
                            queued[*j] = true;
                            heap.push(Reverse(*j));
                        }
                    }
                    // keep the accumulator primitive
                    let mut g = C::zero();
                    for &j in &touched {
                        if !acc[j].is_zero() {
                            g = g.gcd(&acc[j]);
                            if g.is_unit() {
                                break;
                            }
                        }
                    }
                    if !g.is_zero() && !g.is_unit() {
                        for &j in &touched {
                            if !acc[j].is_zero() {
                                acc[j] = acc[j].div_exact(&g);
                            }
                        }
                    }
                }
            } else {
                let mut row = vec![(c, acc[c].clone())];
                let mut rest: Vec<usize> = heap.drain().map(|Reverse(j)| j).collect();
                rest.sort_unstable();
                for j in rest {
                    queued[j] = false;
                    if !acc[j].is_zero() {
                        row.push((j, acc[j].clone()));
                    }
                }
                let g = row.iter().fold(C::zero(), |g, (_, x)| g.gcd(x));
                if !g.is_unit() {
                    for e in row.iter_mut() {
                        e.1 = e.1.div_exact(&g);
                    }
                }
                pivot_of[c] = Some(pivots.len());
                pivots.push(row);
                break;
            }
        }
        for &j in &touched {
            acc[j] = C::zero();
            live[j] = false;
        }
        touched.clear();
        for Reverse(j) in heap.drain() {
            queued[j] = false;
        }
    }
    Ok(pivots.len())
}

/// Exact rank over Q of the span of integer vectors in `Q^dim`.
pub fn rank_of_vectors(dim: usize, mut vecs: Vec<Vec<(usize, i64)>>) -> usize {
    vecs.sort_by_key(Vec::len);
    match rank_generic::<i128>(dim, &vecs) {
        Ok(r) => r,
        Err(Overflow) => match rank_generic::<BigInt>(dim, &vecs) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
        },
    }
}

/// Forces the `BigInt` path; used to cross-check the fast path in tests.
pub fn rank_of_vectors_bigint(dim: usize, mut vecs: Vec<Vec<(usize, i64)>>) -> usize {
    vecs.sort_by_key(Vec::len);
    rank_generic::<BigInt>(dim, &vecs).unwrap_or_else(|_| unreachable!())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_q_differs_from_mod_p() {
        let v = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 4)]];
        assert_eq!(rank_of_vectors(2, v), 2);
        let v = vec![vec![(0, 2), (1, 4)], vec![(0, 3), (1, 6)], vec![(2, 5)]];
        assert_eq!(rank_of_vectors(3, v), 2);
    }

    #[test]
    fn fast_and_big_paths_agree() {
        let v: Vec<Vec<(usize, i64)>> = (0..6)
            .map(|i| (0..6).map(|j| (j, ((i * 7 + j * 3) % 11) as i64 - 5)).filter(|e| e.1 != 0).collect())
            .collect();
        assert_eq!(rank_of_vectors(6, v.clone()), rank_of_vectors_bigint(6, v));
    }

    #[test]
    fn overflow_falls_back() {
        let big = 1i64 << 62;
        let v = vec![
            vec![(0, big), (1, big - 1), (2, 3)],
            vec![(0, big - 1), (1, big), (2, 5)],
            vec![(0, big - 3), (1, 7), (2, big)],
        ];
        assert_eq!(rank_of_vectors(3, v.clone()), rank_of_vectors_bigint(3, v));
    }
}
