use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::koszul::basis::{wedge_sign, Exps, Mask, MAX_DIM};
use crate::koszul::{Diff, KoszulComplex};
use crate::linalg::Ring;

/// A finite linear combination of basis monomials `x_S y^α` with integer
/// coefficients (reduced in `ring`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    ring: Ring,
    terms: BTreeMap<(Mask, Exps), i64>,
}

impl Cochain {
    pub fn zero(n: usize) -> Self {
        Cochain { n, ring: Ring::Integers, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, mask: Mask, e: Exps, c: i64) -> Self {
        let mut z = Cochain::zero(n);
        z.add_term(mask, e, c);
        z
    }

    pub fn one(n: usize) -> Self {
        Cochain::monomial(n, 0, [0; MAX_DIM], 1)
    }

    /// Exterior generator `x_i`.
    pub fn x(n: usize, i: usize) -> Self {
        Cochain::monomial(n, 1 << i, [0; MAX_DIM], 1)
    }

    /// Polynomial generator `y_i`.
    pub fn y(n: usize, i: usize) -> Self {
        let mut e = [0; MAX_DIM];
        e[i] = 1;
        Cochain::monomial(n, 0, e, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn in_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(k, v)| (k, ring.reduce(v)))
            .filter(|e| e.1 != 0)
            .collect();
        self
    }

    pub fn add_term(&mut self, mask: Mask, e: Exps, c: i64) {
        let ring = self.ring;
        let entry = self.terms.entry((mask, e)).or_insert(0);
        *entry = ring.reduce(*entry + c);
        if *entry == 0 {
            self.terms.remove(&(mask, e));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &Exps, i64)> {
        self.terms.iter().map(|((m, e), c)| (*m, e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (m, e, c) in other.terms() {
            out.add_term(m, *e, c);
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let mut out = Cochain { n: self.n, ring: self.ring, terms: BTreeMap::new() };
        for (m, e, c) in self.terms() {
            out.add_term(m, *e, c * k);
        }
        out
    }

    /// Product in `E₀`. The `y`'s are even, so only exterior reordering
    /// contributes a sign.
    pub fn mul(&self, other: &Cochain) -> Cochain {
        let mut out = Cochain { n: self.n, ring: self.ring, terms: BTreeMap::new() };
        for (ma, ea, ca) in self.terms() {
            for (mb, eb, cb) in other.terms() {
                let sign = wedge_sign(ma, mb);
                if sign == 0 {
                    continue;
                }
                let mut e = *ea;
                for i in 0..self.n {
                    e[i] += eb[i];
                }
                out.add_term(ma | mb, e, sign * ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Cochain {
        let mut out = Cochain::one(self.n).in_ring(self.ring);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn apply(&self, kc: &KoszulComplex, d: Diff) -> Cochain {
        let mut out = Cochain { n: self.n, ring: self.ring, terms: BTreeMap::new() };
        let mut buf = Vec::new();
        for (m, e, c) in self.terms() {
            buf.clear();
            kc.terms(d, m, e, &mut buf);
            for &(m2, e2, c2) in &buf {
                out.add_term(m2, e2, c * c2);
            }
        }
        out
    }

    pub fn d0(&self, kc: &KoszulComplex) -> Cochain {
        self.apply(kc, Diff::D0)
    }

    pub fn d1(&self, kc: &KoszulComplex) -> Cochain {
        self.apply(kc, Diff::D1)
    }

    /// `(s, t)` if homogeneous; `None` for zero or mixed bidegree.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms();
        let (m, e, _) = it.next()?;
        let bd = |m: Mask, e: &Exps| (e.iter().map(|&a| a as usize).sum::<usize>(), m.count_ones() as usize);
        let first = bd(m, e);
        it.all(|(m, e, _)| bd(m, e) == first).then_some(first)
    }

    /// Coordinates in the basis of its block `(s, t)`.
    pub fn to_block_vector(&self, kc: &KoszulComplex, s: usize, t: usize) -> Result<Vec<(usize, i64)>> {
        let mut v = Vec::with_capacity(self.len());
        for (m, e, c) in self.terms() {
            let es: usize = e.iter().map(|&a| a as usize).sum();
            if es != s || m.count_ones() as usize != t {
                return Err(Error::Shape(format!("cochain term outside block ({s}, {t})")));
            }
            v.push((kc.tables().index(m, e, s), c));
        }
        v.sort_unstable_by_key(|x| x.0);
        Ok(v)
    }

    /// Inverse of [`Cochain::to_block_vector`].
    pub fn from_block_vector(kc: &KoszulComplex, s: usize, t: usize, v: &[(usize, i64)], ring: Ring) -> Cochain {
        let mut out = Cochain::zero(kc.n()).in_ring(ring);
        for &(i, c) in v {
            let (m, e) = kc.element(s, t, i);
            out.add_term(m, e, c);
        }
        out
    }

    /// Weight, when all terms share one.
    pub fn weight(&self, kc: &KoszulComplex) -> Result<Option<Vec<i64>>> {
        let mut w: Option<Vec<i64>> = None;
        for (m, e, _) in self.terms() {
            let wt = kc.weight_of(m, e)?;
            match &w {
                None => w = Some(wt),
                Some(prev) if *prev != wt => return Ok(None),
                _ => {}
            }
        }
        Ok(w)
    }

    /// Divides by `y_i` when every term is divisible by it.
    pub fn divide_by_y(&self, i: usize) -> Option<Cochain> {
        let mut out = Cochain { n: self.n, ring: self.ring, terms: BTreeMap::new() };
        for (m, e, c) in self.terms() {
            if e[i] == 0 {
                return None;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(m, f, c);
        }
        Some(out)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, e, c)) in self.terms().enumerate() {
            let mono = crate::koszul::BasisElement::from_parts(m, e, self.n).render(names);
            let sign = match (k, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                out.push_str(&format!("{sign}{mono}"));
            } else {
                out.push_str(&format!("{sign}{mag} {mono}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;

    #[test]
    fn exterior_anticommutes() {
        let a = Cochain::x(3, 0).mul(&Cochain::x(3, 1));
        let b = Cochain::x(3, 1).mul(&Cochain::x(3, 0));
        assert_eq!(a, b.scale(-1));
        assert!(Cochain::x(3, 1).mul(&Cochain::x(3, 1)).is_zero());
    }

    #[test]
    fn block_vector_roundtrip() {
        let kc = KoszulComplex::new(&builtin("sl2", Ring::Integers).unwrap()).unwrap();
        let c = Cochain::x(3, 2).mul(&Cochain::y(3, 0)).scale(3).add(&Cochain::x(3, 0).mul(&Cochain::y(3, 1)));
        let v = c.to_block_vector(&kc, 1, 1).unwrap();
        assert_eq!(Cochain::from_block_vector(&kc, 1, 1, &v, Ring::Integers), c);
        assert!(c.to_block_vector(&kc, 2, 1).is_err());
        assert_eq!(c.bidegree(), Some((1, 1)));
    }

    #[test]
    fn reduction_mod_p() {
        let c = Cochain::y(3, 0).scale(5).in_ring(Ring::PrimeField(5));
        assert!(c.is_zero());
    }
}
