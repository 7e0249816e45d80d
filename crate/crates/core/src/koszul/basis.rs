//! Monomial bases of `E₀^{s,t} = Λᵗ(g*) ⊗ Sˢ(g*)`.
//!
//! Exterior parts are bitmasks over the `x_i`; polynomial parts are dense
//! exponent arrays over the `y_i`. Order: exterior subset first
//! (lexicographic on sorted index lists), then exponent vector
//! (descending lexicographic, so `y₀²` precedes `y₀y₁`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 16;
pub const MAX_HODGE: usize = 255;

pub type Mask = u32;
pub type Exps = [u8; MAX_DIM];

/// A basis monomial `x_S · y^α`, in public (index-list) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub exterior: Vec<usize>,
    pub poly: Vec<u32>,
}

impl BasisElement {
    pub fn mask(&self) -> Mask {
        self.exterior.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn exps(&self) -> Exps {
        let mut e = [0u8; MAX_DIM];
        for (i, &a) in self.poly.iter().enumerate() {
            e[i] = a as u8;
        }
        e
    }

    pub fn from_parts(mask: Mask, exps: &Exps, n: usize) -> Self {
        BasisElement {
            exterior: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
            poly: exps[..n].iter().map(|&a| a as u32).collect(),
        }
    }

    pub fn hodge(&self) -> usize {
        self.poly.iter().sum::<u32>() as usize
    }

    /// Renders e.g. `x0 x2 y1^2` using the given generator names.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts: Vec<String> = self.exterior.iter().map(|&i| format!("x_{}", names[i])).collect();
        for (i, &a) in self.poly.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("y_{}", names[i])),
                _ => parts.push(format!("y_{}^{a}", names[i])),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Index tables shared by all blocks of one algebra dimension.
#[derive(Debug, Clone)]
pub struct BasisTables {
    pub n: usize,
    /// `binom[a][b] = C(a, b)` for `a ≤ MAX_HODGE + MAX_DIM`.
    binom: Vec<Vec<u64>>,
    /// Rank of each mask among masks of the same popcount.
    subset_rank: Vec<u32>,
    /// Masks of each size in lexicographic order.
    subsets: Vec<Vec<Mask>>,
}

impl BasisTables {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::SizeCap { dim: n, cap: MAX_DIM });
        }
        let top = MAX_HODGE + MAX_DIM + 1;
        let mut binom = vec![vec![0u64; MAX_DIM + 2]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            for b in 1..=(MAX_DIM + 1).min(a) {
                binom[a][b] = binom[a - 1][b - 1].saturating_add(binom[a - 1][b]);
            }
        }
        let mut subsets = vec![Vec::new(); n + 1];
        fn rec(start: usize, n: usize, cur: Mask, size: usize, out: &mut [Vec<Mask>]) {
            out[size].push(cur);
            for i in start..n {
                rec(i + 1, n, cur | 1 << i, size + 1, out);
            }
        }
        rec(0, n, 0, 0, &mut subsets);
        // `rec` visits subsets in lexicographic order of their sorted lists
        let mut subset_rank = vec![0u32; 1 << n];
        for list in &subsets {
            for (r, &m) in list.iter().enumerate() {
                subset_rank[m as usize] = r as u32;
            }
        }
        Ok(BasisTables { n, binom, subset_rank, subsets })
    }

    pub fn binomial(&self, a: usize, b: usize) -> u64 {
        if b > a {
            0
        } else if b <= MAX_DIM + 1 {
            self.binom[a][b]
        } else {
            self.binom[a][a - b]
        }
    }

    /// Number of degree-`s` monomials in `n` variables.
    pub fn num_monos(&self, s: usize) -> usize {
        if self.n == 0 {
            return usize::from(s == 0);
        }
        self.binomial(s + self.n - 1, self.n - 1) as usize
    }

    pub fn num_subsets(&self, t: usize) -> usize {
        if t > self.n {
            0
        } else {
            self.subsets[t].len()
        }
    }

    pub fn block_dim(&self, s: usize, t: usize) -> usize {
        self.num_subsets(t) * self.num_monos(s)
    }

    pub fn subsets(&self, t: usize) -> &[Mask] {
        &self.subsets[t]
    }

    pub fn subset_rank(&self, m: Mask) -> usize {
        self.subset_rank[m as usize] as usize
    }

    /// Position of `α` among degree-`s` exponent vectors in descending
    /// lexicographic order.
    pub fn mono_rank(&self, e: &Exps, s: usize) -> usize {
        let n = self.n;
        let mut rank = 0u64;
        let mut rem = s;
        for i in 0..n.saturating_sub(1) {
            let a = e[i] as usize;
            let m = n - i - 1;
            if rem > a {
                rank += self.binomial(rem - a - 1 + m, m);
            }
            rem -= a;
        }
        rank as usize
    }

    /// All degree-`s` exponent vectors in basis order.
    pub fn monos(&self, s: usize) -> Vec<Exps> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.num_monos(s));
        if n == 0 {
            if s == 0 {
                out.push([0; MAX_DIM]);
            }
            return out;
        }
        let mut cur = [0u8; MAX_DIM];
        fn rec(i: usize, rem: usize, n: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
            if i == n - 1 {
                cur[i] = rem as u8;
                out.push(*cur);
                return;
            }
            for a in (0..=rem).rev() {
                cur[i] = a as u8;
                rec(i + 1, rem - a, n, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, s, n, &mut cur, &mut out);
        out
    }

    /// Global index of `x_mask · y^e` inside its block.
    pub fn index(&self, mask: Mask, e: &Exps, s: usize) -> usize {
        self.subset_rank(mask) * self.num_monos(s) + self.mono_rank(e, s)
    }

    /// Ordered basis of the block.
    pub fn block_basis(&self, s: usize, t: usize) -> Result<Vec<BasisElement>> {
        if t > self.n {
            return Err(Error::OutOfRange(format!("exterior degree {t} exceeds dimension {}", self.n)));
        }
        check_hodge(s)?;
        let monos = self.monos(s);
        let mut out = Vec::with_capacity(self.block_dim(s, t));
        for &m in self.subsets(t) {
            for e in &monos {
                out.push(BasisElement::from_parts(m, e, self.n));
            }
        }
        Ok(out)
    }
}

pub fn check_hodge(s: usize) -> Result<()> {
    if s > MAX_HODGE {
        Err(Error::OutOfRange(format!("Hodge degree {s} exceeds {MAX_HODGE}")))
    } else {
        Ok(())
    }
}

/// Sign of `x_A ∧ x_B` relative to `x_{A∪B}` (0 if they overlap).
#[inline]
pub fn wedge_sign(a: Mask, b: Mask) -> i64 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (i ∈ A, j ∈ B) with i > j
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> j).count_ones();
        bb &= bb - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_sizes() {
        let t = BasisTables::new(3).unwrap();
        assert_eq!(t.block_dim(0, 3), 1);
        assert_eq!(t.block_dim(1, 1), 9);
        assert_eq!(t.block_dim(2, 0), 6);
        assert!(t.block_basis(0, 4).is_err());
    }

    #[test]
    fn order_and_ranks_agree() {
        for n in 1..=5 {
            let t = BasisTables::new(n).unwrap();
            for s in 0..=5 {
                let monos = t.monos(s);
                assert_eq!(monos.len(), t.num_monos(s));
                for (i, e) in monos.iter().enumerate() {
                    assert_eq!(t.mono_rank(e, s), i);
                }
            }
            for k in 0..=n {
                for (i, &m) in t.subsets(k).iter().enumerate() {
                    assert_eq!(t.subset_rank(m), i);
                    assert_eq!(m.count_ones() as usize, k);
                }
            }
        }
    }

    #[test]
    fn sl2_quadratic_order() {
        let t = BasisTables::new(3).unwrap();
        let b = t.block_basis(2, 0).unwrap();
        let polys: Vec<Vec<u32>> = b.into_iter().map(|e| e.poly).collect();
        assert_eq!(
            polys,
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
    }

    #[test]
    fn subset_order_is_lex() {
        let t = BasisTables::new(4).unwrap();
        assert_eq!(t.subsets(2), &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1); // x0 ∧ x1
        assert_eq!(wedge_sign(0b10, 0b01), -1); // x1 ∧ x0
        assert_eq!(wedge_sign(0b11, 0b01), 0);
        assert_eq!(wedge_sign(0b100, 0b011), 1); // x2 ∧ x0x1 = x0x1x2
    }
}
