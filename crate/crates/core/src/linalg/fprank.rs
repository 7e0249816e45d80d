//! Sparse rank over `F_p` by left-looking elimination with a dense
//! accumulator. Vectors are fed shortest-first, which keeps fill-in low on
//! the Koszul matrices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::linalg::field::inv_mod;

const NONE: u32 = u32::MAX;

/// Incremental echelon basis over `F_p`. Every inserted vector is reduced
/// against the stored pivots; independent ones become new pivots.
#[derive(Debug, Clone)]
pub struct EchelonFp {
    p: u64,
    pivot_of: Vec<u32>,
    pivots: Vec<Vec<(u32, u64)>>,
    acc: Vec<u64>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl EchelonFp {
    pub fn new(dim: usize, p: u64) -> Self {
        EchelonFp {
            p,
            pivot_of: vec![NONE; dim],
            pivots: Vec::new(),
            acc: vec![0; dim],
            queued: vec![false; dim],
            heap: BinaryHeap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a vector (entries already reduced mod p, any order, no
    /// duplicates required). Returns true if it was independent.
    pub fn insert(&mut self, v: &[(usize, u64)]) -> bool {
        let p = self.p;
        for &(c, x) in v {
            let x = x % p;
            if x == 0 {
                continue;
            }
            self.acc[c] = (self.acc[c] + x) % p;
            if !self.queued[c] {
                self.queued[c] = true;
                self.heap.push(Reverse(c as u32));
            }
        }
        while let Some(Reverse(c)) = self.heap.pop() {
            let c = c as usize;
            self.queued[c] = false;
            let a = self.acc[c];
            if a == 0 {
                continue;
            }
            let k = self.pivot_of[c];
            if k != NONE {
                let f = p - a;
                for &(j, x) in &self.pivots[k as usize] {
                    let j = j as usize;
                    self.acc[j] = (self.acc[j] + f * x) % p;
                    if !self.queued[j] && self.acc[j] != 0 {
                        self.queued[j] = true;
                        self.heap.push(Reverse(j as u32));
                    }
                }
                debug_assert_eq!(self.acc[c], 0);
            } else {
                let inv = inv_mod(a, p);
                let mut row = vec![(c as u32, 1u64)];
                self.acc[c] = 0;
                let mut rest: Vec<u32> = self.heap.drain().map(|Reverse(j)| j).collect();
                rest.sort_unstable();
                for j in rest {
                    let ju = j as usize;
                    self.queued[ju] = false;
                    let x = self.acc[ju];
                    if x != 0 {
                        row.push((j, x * inv % p));
                        self.acc[ju] = 0;
                    }
                }
                self.pivot_of[c] = self.pivots.len() as u32;
                self.pivots.push(row);
                return true;
            }
        }
        false
    }
}

/// Rank over `F_p` of the span of the given vectors in `F_p^dim`.
pub fn rank_of_vectors(dim: usize, mut vecs: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    vecs.sort_by_key(Vec::len);
    let mut ech = EchelonFp::new(dim, p);
    for v in &vecs {
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let v = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(2, 1)]];
        assert_eq!(rank_of_vectors(3, v, 5), 2);
        let v = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)]];
        assert_eq!(rank_of_vectors(2, v.clone(), 7), 1);
        let v = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 4)]];
        assert_eq!(rank_of_vectors(2, v.clone(), 3), 1);
        assert_eq!(rank_of_vectors(2, v, 5), 2);
    }

    #[test]
    fn insert_reports_independence() {
        let mut e = EchelonFp::new(3, 7);
        assert!(e.insert(&[(1, 3), (2, 1)]));
        assert!(!e.insert(&[(1, 6), (2, 2)]));
        assert!(e.insert(&[(0, 1)]));
        assert!(!e.insert(&[]));
        assert_eq!(e.rank(), 2);
    }
}
