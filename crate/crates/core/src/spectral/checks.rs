//! Independent cross-checks on computed pages.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::koszul::{Cochain, KoszulComplex};
use crate::linalg::field::{rows_in, solve, PrimeField, Rationals};
use crate::linalg::Ring;
use crate::spectral::engine::{Grid, StratumPages};
use crate::spectral::report::PageReport;

/// Solves `d₀ x = k · rhs` in block `(s, t)` for some nonzero integer `k`
/// (always `k = 1` over `F_p`). Returns `(x, k)`.
fn solve_d0(kc: &KoszulComplex, s: usize, t: usize, rhs: &Cochain) -> Result<Option<(Cochain, i64)>> {
    let m = kc.d0(s, t)?;
    let b = rhs.to_block_vector(kc, s, t + 1)?;
    match kc.ring() {
        Ring::PrimeField(p) => {
            let f = PrimeField { p };
            let b: Vec<_> = b.iter().map(|&(i, v)| (i, v.rem_euclid(p as i64) as u64)).collect();
            Ok(solve(&f, m.cols(), rows_in(&f, &m), &b).map(|x| {
                let v: Vec<(usize, i64)> = x.into_iter().map(|(i, c)| (i, c as i64)).collect();
                (Cochain::from_block_vector(kc, s, t, &v, kc.ring()), 1)
            }))
        }
        Ring::Rationals => {
            let f = Rationals;
            let b: Vec<_> = b.iter().map(|&(i, v)| (i, BigRational::from_integer(v.into()))).collect();
            let Some(x) = solve(&f, m.cols(), rows_in(&f, &m), &b) else { return Ok(None) };
            let den = x.iter().fold(num_bigint::BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
            let k = den.to_i64().ok_or_else(|| Error::OutOfRange("zig-zag denominators overflow".into()))?;
            let mut v = Vec::with_capacity(x.len());
            for (i, c) in x {
                let num = (c * BigRational::from_integer(den.clone())).to_integer();
                v.push((i, num.to_i64().ok_or_else(|| Error::OutOfRange("zig-zag entries overflow".into()))?));
            }
            Ok(Some((Cochain::from_block_vector(kc, s, t, &v, kc.ring()), k)))
        }
        Ring::Integers => Err(Error::NeedsField { op: "zig-zag" }),
    }
}

/// Runs the zig-zag for a `d₀`-cocycle `ω ∈ E₀^{s,t}`: chooses
/// `x_s = ω, x_{s+1}, …, x_{s+r−1}` with `d₀ x_{s+k} = −d₁ x_{s+k−1}` and
/// returns `d₁ x_{s+r−1}`, a representative of `d_r(ω)` up to a nonzero
/// scalar. `None` if some step has no solution for the choices made.
pub fn zigzag(kc: &KoszulComplex, omega: &Cochain, r: usize) -> Result<Option<Cochain>> {
    let (s, t) = omega.bidegree().ok_or_else(|| Error::Shape("zig-zag needs a nonzero homogeneous cochain".into()))?;
    if !omega.d0(kc).is_zero() {
        return Ok(None);
    }
    let mut chain = vec![omega.clone()];
    for k in 1..r {
        let tk = t as isize - 2 * k as isize;
        let rhs = chain[k - 1].d1(kc).scale(-1);
        if rhs.is_zero() {
            chain.push(Cochain::zero(kc.n()).in_ring(kc.ring()));
            continue;
        }
        if tk < 0 {
            return Ok(None);
        }
        let Some((x, scale)) = solve_d0(kc, s + k, tk as usize, &rhs)? else { return Ok(None) };
        for c in chain.iter_mut() {
            *c = c.scale(scale);
        }
        chain.push(x);
    }
    Ok(Some(chain[r - 1].d1(kc)))
}

/// Bigraded convolution `Σ a(s₁,t₁) b(s−s₁, t−t₁)`: the page of a tensor
/// product of two sequences.
pub fn convolve(a: &PageReport, b: &PageReport) -> PageReport {
    let max_hodge = a.max_hodge.min(b.max_hodge);
    let mut out = PageReport::new(a.r, a.n + b.n, max_hodge);
    for (s1, t1, x) in a.nonzero() {
        for (s2, t2, y) in b.nonzero() {
            if s1 + s2 <= max_hodge {
                out.add(s1 + s2, t1 + t2, x * y);
            }
        }
    }
    out
}

/// The four-term `d₁` sequence
/// `E₁^{s,3} → E₁^{s+1,2} → E₁^{s+2,1} → E₁^{s+3,0}` of a 3-dimensional
/// algebra.
#[derive(Debug, Clone, Serialize)]
pub struct ExactnessCheck {
    pub s: usize,
    /// Dimensions of the four terms.
    pub dims: [usize; 4],
    /// Ranks of the three maps.
    pub ranks: [usize; 3],
}

impl ExactnessCheck {
    /// Injective at the start, exact in the middle, surjective at the end.
    pub fn exact(&self) -> bool {
        let [e0, e1, e2, e3] = self.dims;
        let [r0, r1, r2] = self.ranks;
        r0 == e0 && e1 == r0 + r1 && e2 == r1 + r2 && r2 == e3
    }
}

pub fn exact_sequence(kc: &KoszulComplex, s: usize) -> Result<ExactnessCheck> {
    if kc.n() != 3 {
        return Err(Error::Shape(format!("the four-term sequence needs dimension 3, got {}", kc.n())));
    }
    let grid = Grid::new(kc, s + 3, kc.algebra().weights().is_some())?;
    let mut dims = [0; 4];
    let mut ranks = [0; 3];
    for w in grid.weights() {
        let mut eng = StratumPages::new(&grid, w);
        for i in 0..4 {
            dims[i] += eng.page_dim(1, s + i, 3 - i);
        }
        for i in 0..3 {
            ranks[i] += eng.d_rank(1, s + i, 3 - i);
        }
    }
    Ok(ExactnessCheck { s, dims, ranks })
}

/// True if `c` is a `d₀`-coboundary, i.e. zero in `E₁`.
pub fn is_d0_exact(kc: &KoszulComplex, c: &Cochain) -> Result<bool> {
    if c.is_zero() {
        return Ok(true);
    }
    let (s, t) = c.bidegree().ok_or_else(|| Error::Shape("mixed bidegree".into()))?;
    if t == 0 {
        return Ok(false);
    }
    Ok(solve_d0(kc, s, t - 1, c)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::spectral::compute_e1;

    #[test]
    fn sl2_transgression() {
        let kc = KoszulComplex::new(&builtin("sl2", Ring::Rationals).unwrap()).unwrap();
        let u = Cochain::x(3, 0).mul(&Cochain::x(3, 1)).mul(&Cochain::x(3, 2));
        let img = zigzag(&kc, &u, 2).unwrap().unwrap();
        assert_eq!(img.bidegree(), Some((2, 0)));
        // a nonzero multiple of κ = y₀² + y₋y₊
        let kappa = Cochain::y(3, 0).pow(2).add(&Cochain::y(3, 1).mul(&Cochain::y(3, 2))).in_ring(Ring::Rationals);
        let (_, _, c) = img.terms().next().unwrap();
        assert_eq!(img, kappa.scale(c));
        assert!(!is_d0_exact(&kc, &img).unwrap());
    }

    #[test]
    fn abelian_tensor() {
        let a = KoszulComplex::new(&builtin("abelian(1)", Ring::Rationals).unwrap()).unwrap();
        let b = KoszulComplex::new(&builtin("nonabelian2", Ring::Rationals).unwrap()).unwrap();
        let ab = KoszulComplex::new(&builtin("abelian(1)+nonabelian2", Ring::Rationals).unwrap()).unwrap();
        let conv = convolve(&compute_e1(&a, 4).unwrap(), &compute_e1(&b, 4).unwrap());
        assert_eq!(conv, compute_e1(&ab, 4).unwrap());
    }

    #[test]
    fn sl2_mod5_exact() {
        let kc = KoszulComplex::new(&builtin("sl2", Ring::PrimeField(5)).unwrap()).unwrap();
        let c = exact_sequence(&kc, 3).unwrap();
        assert!(c.exact(), "{c:?}");
    }
}
