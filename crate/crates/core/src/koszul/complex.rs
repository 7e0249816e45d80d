use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::koszul::basis::{check_hodge, wedge_sign, BasisElement, BasisTables, Exps, Mask, MAX_HODGE};
use crate::lie::LieAlgebra;
use crate::linalg::{Ring, SparseMatrix};

/// Which differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diff {
    /// Koszul differential, `(s, t) → (s, t+1)`.
    D0,
    /// Suspension `x_i ↦ y_i`, `(s, t) → (s+1, t−1)`.
    D1,
}

impl Diff {
    pub fn target(self, s: usize, t: usize) -> (usize, isize) {
        match self {
            Diff::D0 => (s, t as isize + 1),
            Diff::D1 => (s + 1, t as isize - 1),
        }
    }
}

/// One `(s, t)` block: its basis and the two differentials leaving it.
#[derive(Debug, Clone)]
pub struct CochainBlock {
    pub s: usize,
    pub t: usize,
    pub basis: Vec<BasisElement>,
    pub d0: SparseMatrix,
    pub d1: SparseMatrix,
}

/// The bigraded algebra `E₀ = Λ(g*) ⊗ S(g*)` of a Lie algebra with its two
/// differentials. Only generator images are tabulated; every column is
/// produced on demand by the derivation rule.
#[derive(Debug)]
pub struct KoszulComplex {
    alg: LieAlgebra,
    tables: BasisTables,
    /// `d₀(x_i) = Σ (x_j x_k, −c^i_{jk})`, `j < k`.
    dx: Vec<Vec<(Mask, i64)>>,
    /// `R_k: y_i ↦ Σ_j c^i_{jk} y_j` as `(i, j, c)` triples, indexed by `k`;
    /// `d₀(y_i) = Σ_{j,k} c^i_{jk} y_j x_k`.
    coad: Vec<Vec<(usize, usize, i64)>>,
    monos: Vec<OnceLock<Arc<Vec<Exps>>>>,
}

impl KoszulComplex {
    pub fn new(alg: &LieAlgebra) -> Result<Self> {
        let n = alg.dim();
        let tables = BasisTables::new(n)?;
        let mut dx = vec![Vec::new(); n];
        let mut coad = vec![Vec::new(); n];
        for &(j, k, i, c) in alg.constants() {
            // [x_j, x_k] = c x_i with j < k
            dx[i].push(((1 << j) | (1 << k), -c));
            coad[k].push((i, j, c));
            coad[j].push((i, k, -c));
        }
        Ok(KoszulComplex {
            alg: alg.clone(),
            tables,
            dx,
            coad,
            monos: (0..=MAX_HODGE + 1).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.tables.n
    }

    pub fn ring(&self) -> Ring {
        self.alg.ring()
    }

    pub fn tables(&self) -> &BasisTables {
        &self.tables
    }

    pub fn block_dim(&self, s: usize, t: usize) -> usize {
        self.tables.block_dim(s, t)
    }

    /// Block dimension with out-of-range `t` treated as zero.
    pub fn block_dim_i(&self, s: isize, t: isize) -> usize {
        if s < 0 || t < 0 {
            0
        } else {
            self.tables.block_dim(s as usize, t as usize)
        }
    }

    pub fn monos(&self, s: usize) -> Arc<Vec<Exps>> {
        self.monos[s].get_or_init(|| Arc::new(self.tables.monos(s))).clone()
    }

    pub fn block_basis(&self, s: usize, t: usize) -> Result<Vec<BasisElement>> {
        self.tables.block_basis(s, t)
    }

    /// `(mask, exponents)` of the basis element at `col` in block `(s, t)`.
    pub fn element(&self, s: usize, t: usize, col: usize) -> (Mask, Exps) {
        let monos = self.monos(s);
        let nm = monos.len();
        (self.tables.subsets(t)[col / nm], monos[col % nm])
    }

    /// Appends the terms of `d₀(x_mask y^e)` (integral, unmerged).
    pub fn d0_terms(&self, mask: Mask, e: &Exps, out: &mut Vec<(Mask, Exps, i64)>) {
        let t = mask.count_ones();
        // d₀(x_S) · y^α
        let mut rest = mask;
        let mut m = 0u32;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let below = mask & ((1 << i) - 1);
            let above = mask & !((1 << (i + 1)) - 1);
            let pos_sign = if m % 2 == 0 { 1 } else { -1 };
            for &(jk, c) in &self.dx[i] {
                let s1 = wedge_sign(below, jk);
                if s1 == 0 {
                    continue;
                }
                let s2 = wedge_sign(below | jk, above);
                if s2 == 0 {
                    continue;
                }
                out.push((below | jk | above, *e, pos_sign * s1 * s2 * c));
            }
            m += 1;
        }
        // (−1)^t x_S · d₀(y^α) = (−1)^t Σ_k (x_S ∧ x_k) R_k(y^α)
        let tsign = if t % 2 == 0 { 1 } else { -1 };
        for k in 0..self.tables.n {
            if mask >> k & 1 == 1 || self.coad[k].is_empty() {
                continue;
            }
            let ws = tsign * wedge_sign(mask, 1 << k);
            let nm = mask | 1 << k;
            for &(i, j, c) in &self.coad[k] {
                let a = e[i];
                if a == 0 {
                    continue;
                }
                let mut f = *e;
                f[i] -= 1;
                f[j] += 1;
                out.push((nm, f, ws * a as i64 * c));
            }
        }
    }

    /// Appends the terms of `d₁(x_mask y^e)`.
    pub fn d1_terms(&self, mask: Mask, e: &Exps, out: &mut Vec<(Mask, Exps, i64)>) {
        let mut rest = mask;
        let mut m = 0u32;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut f = *e;
            f[i] += 1;
            out.push((mask & !(1 << i), f, if m % 2 == 0 { 1 } else { -1 }));
            m += 1;
        }
    }

    pub fn terms(&self, d: Diff, mask: Mask, e: &Exps, out: &mut Vec<(Mask, Exps, i64)>) {
        match d {
            Diff::D0 => self.d0_terms(mask, e, out),
            Diff::D1 => self.d1_terms(mask, e, out),
        }
    }

    /// Image of one basis column as a merged sparse vector in the target
    /// block, reduced in `ring` (integers are kept as-is for Z and Q).
    pub fn column(&self, d: Diff, s: usize, t: usize, col: usize, ring: Ring, buf: &mut Vec<(Mask, Exps, i64)>) -> Vec<(usize, i64)> {
        let (mask, e) = self.element(s, t, col);
        buf.clear();
        self.terms(d, mask, &e, buf);
        let (ts, _) = d.target(s, t);
        let mut v: Vec<(usize, i64)> = buf.iter().map(|(m, f, c)| (self.tables.index(*m, f, ts), *c)).collect();
        merge(&mut v, ring);
        v
    }

    /// Columns of `d` on block `(s, t)` restricted to the listed columns.
    pub fn columns(&self, d: Diff, s: usize, t: usize, cols: impl IntoIterator<Item = usize>, ring: Ring) -> Vec<Vec<(usize, i64)>> {
        let mut buf = Vec::new();
        cols.into_iter().map(|c| self.column(d, s, t, c, ring, &mut buf)).collect()
    }

    /// Matrix of `d` leaving block `(s, t)`, reduced in the algebra's ring.
    pub fn matrix(&self, d: Diff, s: usize, t: usize) -> Result<SparseMatrix> {
        let n = self.n();
        if t > n {
            return Err(Error::OutOfRange(format!("exterior degree {t} exceeds dimension {n}")));
        }
        check_hodge(s + 1)?;
        let (ts, tt) = d.target(s, t);
        let rows = self.block_dim_i(ts as isize, tt);
        let cols = self.block_dim(s, t);
        if rows == 0 {
            return Ok(SparseMatrix::zeros(0, cols));
        }
        let ring = self.ring();
        let columns = self.columns(d, s, t, 0..cols, ring);
        Ok(SparseMatrix::from_columns(rows, &columns, ring))
    }

    pub fn d0(&self, s: usize, t: usize) -> Result<SparseMatrix> {
        self.matrix(Diff::D0, s, t)
    }

    pub fn d1(&self, s: usize, t: usize) -> Result<SparseMatrix> {
        self.matrix(Diff::D1, s, t)
    }

    pub fn block(&self, s: usize, t: usize) -> Result<CochainBlock> {
        Ok(CochainBlock { s, t, basis: self.block_basis(s, t)?, d0: self.d0(s, t)?, d1: self.d1(s, t)? })
    }

    /// Weight of a basis monomial: the sum of generator weights, `x_i` and
    /// `y_i` both carrying the weight of the `i`-th coordinate.
    pub fn weight_of(&self, mask: Mask, e: &Exps) -> Result<Vec<i64>> {
        let w = self.alg.weights().ok_or_else(|| Error::MissingWeights(self.alg.name().to_string()))?;
        let r = self.alg.weight_rank();
        let mut out = vec![0i64; r];
        for (i, wi) in w.iter().enumerate() {
            let mult = (mask >> i & 1) as i64 + e[i] as i64;
            if mult != 0 {
                for a in 0..r {
                    out[a] += mult * wi[a];
                }
            }
        }
        Ok(out)
    }

    pub fn weight_of_element(&self, b: &BasisElement) -> Result<Vec<i64>> {
        self.weight_of(b.mask(), &b.exps())
    }
}

/// Sorts by index, sums duplicates, reduces, drops zeros.
pub fn merge(v: &mut Vec<(usize, i64)>, ring: Ring) {
    v.sort_unstable_by_key(|e| e.0);
    let mut w = 0;
    let mut r = 0;
    while r < v.len() {
        let idx = v[r].0;
        let mut acc = 0i64;
        while r < v.len() && v[r].0 == idx {
            acc += v[r].1;
            r += 1;
        }
        let acc = ring.reduce(acc);
        if acc != 0 {
            v[w] = (idx, acc);
            w += 1;
        }
    }
    v.truncate(w);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::Cochain;
    use crate::lie::builtin;

    fn sl2() -> KoszulComplex {
        KoszulComplex::new(&builtin("sl2", Ring::Integers).unwrap()).unwrap()
    }

    #[test]
    fn sl2_generator_images() {
        let k = sl2();
        // indices: 0 = x₀ (h), 1 = x₋ (e), 2 = x₊ (f)
        let x = |i| Cochain::x(3, i);
        let y = |i| Cochain::y(3, i);
        assert_eq!(x(0).d0(&k), x(2).mul(&x(1)));
        assert_eq!(x(2).d0(&k), x(0).mul(&x(2)).scale(2));
        assert_eq!(y(0).d0(&k), y(1).mul(&x(2)).sub(&y(2).mul(&x(1))));
        assert_eq!(y(2).d0(&k), y(0).mul(&x(2)).scale(-2).add(&y(2).mul(&x(0)).scale(2)));
    }

    #[test]
    fn sl2_d1_of_top_class() {
        let k = sl2();
        let x = |i| Cochain::x(3, i);
        let y = |i| Cochain::y(3, i);
        let u = x(0).mul(&x(1)).mul(&x(2));
        let expect = y(0)
            .mul(&x(1))
            .mul(&x(2))
            .sub(&x(0).mul(&y(1)).mul(&x(2)))
            .add(&x(0).mul(&x(1)).mul(&y(2)));
        assert_eq!(u.d1(&k), expect);
    }

    #[test]
    fn abelian_d0_vanishes() {
        let k = KoszulComplex::new(&builtin("abelian3", Ring::Integers).unwrap()).unwrap();
        for s in 0..3 {
            for t in 0..=3 {
                assert!(k.d0(s, t).unwrap().is_zero());
            }
        }
        assert_eq!(k.d1(2, 0).unwrap().rows(), 0);
    }

    #[test]
    fn nonabelian2_d0_of_e() {
        let k = KoszulComplex::new(&builtin("nonabelian2", Ring::Integers).unwrap()).unwrap();
        let x = |i| Cochain::x(2, i);
        let y = |i| Cochain::y(2, i);
        // d₀(e) = h e, d₀(E) = E h − H e
        assert_eq!(x(1).d0(&k), x(0).mul(&x(1)));
        assert_eq!(y(1).d0(&k), y(1).mul(&x(0)).sub(&y(0).mul(&x(1))));
    }

    #[test]
    fn squares_vanish_small() {
        for name in ["sl2", "nonabelian2", "so3", "sl2+nonabelian2"] {
            let k = KoszulComplex::new(&builtin(name, Ring::Integers).unwrap()).unwrap();
            let n = k.n();
            for s in 0..4 {
                for t in 0..=n {
                    let a = k.d0(s, t).unwrap();
                    if t < n {
                        assert!(k.d0(s, t + 1).unwrap().mul(&a, Ring::Integers).unwrap().is_zero());
                    }
                    if t >= 2 {
                        let b = k.d1(s, t).unwrap();
                        assert!(k.d1(s + 1, t - 1).unwrap().mul(&b, Ring::Integers).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
