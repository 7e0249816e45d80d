//! The de Rham complex `P → P³ → P³ → P` of `sl₂` over `F_p`: matrices of
//! gradient, curl and divergence, the 0-line, and the weight checks.

use serde::Serialize;

use crate::error::Result;
use crate::koszul::{Cochain, KoszulComplex};
use crate::lie::builtin;
use crate::linalg::field::{inv_mod, kernel_from_rref, rows_in, rref, solve_mod_p, PrimeField};
use crate::linalg::{rank, Ring, SparseMatrix};
use crate::sl2::poly::{
    beta_ops, monomial_weight, monomials, Form, Identification, ScalarPoly, VectorPoly, WittOperators, MINUS, PLUS, ZERO,
};
use crate::spectral::{compute_pages, stratify};

pub fn sl2_complex(p: u64) -> Result<KoszulComplex> {
    KoszulComplex::new(&builtin("sl2", Ring::prime_field(p)?)?)
}

fn basis_vector(p: u64, id: Identification, d: u32, j: usize) -> VectorPoly {
    VectorPoly::from_coordinates(p, id, d, &[(j, 1)])
}

/// `grad: P_d → P_d³`.
pub fn grad_matrix(ops: &WittOperators, d: u32) -> SparseMatrix {
    let len = monomials(d).len();
    let cols: Vec<_> =
        monomials(d).into_iter().map(|e| ops.grad(&ScalarPoly::monomial(ops.p, e, 1)).coordinates(d)).collect();
    SparseMatrix::from_columns(3 * len, &cols, Ring::PrimeField(ops.p))
}

/// `curl: P_d³ → P_d³`.
pub fn curl_matrix(ops: &WittOperators, d: u32) -> SparseMatrix {
    let len = monomials(d).len();
    let cols: Vec<_> =
        (0..3 * len).map(|j| ops.curl(&basis_vector(ops.p, Identification::OneForm, d, j)).coordinates(d)).collect();
    SparseMatrix::from_columns(3 * len, &cols, Ring::PrimeField(ops.p))
}

/// `div: P_d³ → P_d`.
pub fn div_matrix(ops: &WittOperators, d: u32) -> SparseMatrix {
    let len = monomials(d).len();
    let cols: Vec<_> =
        (0..3 * len).map(|j| ops.div(&basis_vector(ops.p, Identification::TwoForm, d, j)).coordinates(d)).collect();
    SparseMatrix::from_columns(len, &cols, Ring::PrimeField(ops.p))
}

/// Some `ĝ` with `div ĝ = target`, or `None` if `target` is not a divergence.
pub fn solve_div(ops: &WittOperators, target: &ScalarPoly) -> Option<VectorPoly> {
    let d = match target.degree() {
        Some(d) => d,
        None => return target.is_zero().then(|| VectorPoly::zero(ops.p, Identification::TwoForm)),
    };
    let x = solve_mod_p(&div_matrix(ops, d), &target.coordinates(d), ops.p)?;
    let x: Vec<(usize, i64)> = x.into_iter().map(|(i, c)| (i, c as i64)).collect();
    Some(VectorPoly::from_coordinates(ops.p, Identification::TwoForm, d, &x))
}

/// Compares gradient, curl and divergence with the Koszul `d₀` on every
/// basis cochain of every block with `s ≤ max_hodge`. Returns the number of
/// basis elements checked, or the first disagreement `(s, t)`.
pub fn koszul_agreement(p: u64, max_hodge: usize) -> Result<std::result::Result<usize, (usize, usize)>> {
    let ops = beta_ops(p)?;
    let kc = sl2_complex(p)?;
    let ring = Ring::PrimeField(p);
    let mut checked = 0;
    for s in 0..=max_hodge {
        for t in 0..=3 {
            for j in 0..kc.block_dim(s, t) {
                let c = Cochain::from_block_vector(&kc, s, t, &[(j, 1)], ring);
                let form = Form::from_cochain(&c, t, p)?;
                if ops.d(&form).to_cochain() != c.d0(&kc) {
                    return Ok(Err((s, t)));
                }
                checked += 1;
            }
        }
    }
    Ok(Ok(checked))
}

#[derive(Debug, Clone, Serialize)]
pub struct H0Degree {
    pub degree: u32,
    /// `dim ker(grad)` on `P_d`.
    pub kernel_dim: usize,
    /// Hilbert function of `F_p[κ, s₀, s₋, s₊] / (κ^p − s₀² − s₋s₊)`.
    pub quotient_dim: usize,
    /// Rank of the standard monomials `κ^a s₀^b s₋^c s₊^e` (`a < p`) in `P_d`.
    pub span_rank: usize,
    /// Every standard monomial has zero gradient.
    pub closed: bool,
}

impl H0Degree {
    pub fn passed(&self) -> bool {
        self.closed && self.kernel_dim == self.quotient_dim && self.span_rank == self.quotient_dim
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct H0Structure {
    pub p: u64,
    pub degrees: Vec<H0Degree>,
    /// `κ^p = s₀² + s₋s₊` as polynomials.
    pub frobenius: bool,
}

impl H0Structure {
    pub fn passed(&self) -> bool {
        self.frobenius && self.degrees.iter().all(H0Degree::passed)
    }

    pub fn dim(&self, d: u32) -> Option<usize> {
        self.degrees.iter().find(|r| r.degree == d).map(|r| r.kernel_dim)
    }
}

/// Exponents `(a, b, c, e)` of the standard monomials of degree `d`.
fn standard_monomials(p: u64, d: u32) -> Vec<[u32; 4]> {
    let p32 = p as u32;
    let mut out = Vec::new();
    for a in 0..p32.min(d / 2 + 1) {
        let rest = d - 2 * a;
        if rest % p32 != 0 {
            continue;
        }
        let k = rest / p32;
        for b in 0..=k {
            for c in 0..=k - b {
                out.push([a, b, c, k - b - c]);
            }
        }
    }
    out
}

/// `H⁰_DR = ker(grad)` degree by degree, against the presentation by
/// `κ, s₀ = y₀^p, s₋ = y₋^p, s₊ = y₊^p` with the single relation
/// `κ^p = s₀² + s₋s₊`.
pub fn h0_structure(p: u64, max_degree: u32) -> Result<H0Structure> {
    let ops = beta_ops(p)?;
    let ring = Ring::PrimeField(p);
    let kappa = ScalarPoly::kappa(p);
    let s = [ZERO, MINUS, PLUS].map(|i| ScalarPoly::var(p, i).pow(p as u32));
    let mut degrees = Vec::new();
    for d in 0..=max_degree {
        let g = grad_matrix(&ops, d);
        let kernel_dim = g.cols() - rank(&g, ring)?;
        let std = standard_monomials(p, d);
        let polys: Vec<ScalarPoly> = std
            .iter()
            .map(|&[a, b, c, e]| kappa.pow(a).mul(&s[0].pow(b)).mul(&s[1].pow(c)).mul(&s[2].pow(e)))
            .collect();
        let closed = polys.iter().all(|f| ops.grad(f).is_zero());
        let cols: Vec<_> = polys.iter().map(|f| f.coordinates(d)).collect();
        let span_rank = crate::linalg::rank_of_columns(monomials(d).len(), cols, ring)?;
        degrees.push(H0Degree { degree: d, kernel_dim, quotient_dim: std.len(), span_rank, closed });
    }
    let frobenius = kappa.pow(p as u32) == s[0].pow(2).add(&s[1].mul(&s[2]));
    Ok(H0Structure { p, degrees, frobenius })
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightOneReport {
    pub p: u64,
    pub max_degree: u32,
    /// Curl-free forms of weight `w ≢ 0` examined.
    pub forms_checked: usize,
    /// `(degree, weight)` where `grad(f₀/w) ≠ f̂` for some curl-free `f̂`.
    pub failures: Vec<(u32, i64)>,
}

impl WeightOneReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every weight `w ≢ 0 (mod p)` and degree `≤ max_degree`, takes a basis
/// of the curl-free 1-forms of weight `w` and checks `f̂ = grad(f₀ / w)`, so
/// `H¹_DR` vanishes off weights divisible by `p`.
pub fn weight_one(p: u64, max_degree: u32) -> Result<WeightOneReport> {
    let ops = beta_ops(p)?;
    let field = PrimeField { p };
    let mut forms_checked = 0;
    let mut failures = Vec::new();
    for d in 0..=max_degree {
        let mons = monomials(d);
        let len = mons.len();
        let curl = curl_matrix(&ops, d);
        let bound = 2 * d as i64 + 2;
        for w in (-bound..=bound).step_by(2) {
            if w.rem_euclid(p as i64) == 0 {
                continue;
            }
            // weights of the coefficient of x₀, x₋, x₊ in a weight-w form
            let shift = [w, w + 2, w - 2];
            let domain: Vec<usize> =
                (0..3 * len).filter(|&j| monomial_weight(&mons[j % len]) == shift[j / len]).collect();
            if domain.is_empty() {
                continue;
            }
            let restricted = curl.select_cols(&domain);
            let red = rref(&field, domain.len(), rows_in(&field, &restricted));
            let winv = inv_mod(w.rem_euclid(p as i64) as u64, p) as i64;
            for v in kernel_from_rref(&field, &red) {
                let coords: Vec<(usize, i64)> = v.iter().map(|&(i, c)| (domain[i], c as i64)).collect();
                let form = VectorPoly::from_coordinates(p, Identification::OneForm, d, &coords);
                forms_checked += 1;
                if ops.grad(&form.c[ZERO].scale(winv)) != form {
                    failures.push((d, w));
                    break;
                }
            }
        }
    }
    Ok(WeightOneReport { p, max_degree, forms_checked, failures })
}

/// The weight-0 monomials of degree `n` are `θ_ℓ = y₀^{n−2ℓ}(y₋y₊)^ℓ`,
/// `ℓ ≤ ⌊n/2⌋`, and `Γ_ℓ = y₀^{n−2ℓ}κ^ℓ` is unitriangular in them. Checks
/// both statements for every `n ≤ max_degree`.
pub fn weight_zero_basis(p: u64, max_degree: u32) -> bool {
    (0..=max_degree).all(|n| {
        let zero: Vec<_> = monomials(n).into_iter().filter(|e| monomial_weight(e) == 0).collect();
        let count_ok = zero.len() == (n / 2 + 1) as usize;
        let theta = |l: u32| [n - 2 * l, l, l];
        let tri_ok = (0..=n / 2).all(|l| {
            let gamma = ScalarPoly::monomial(p, [n - 2 * l, 0, 0], 1).mul(&ScalarPoly::kappa(p).pow(l));
            gamma.weight() == Some(0)
                && gamma.coeff(&theta(l)) == 1
                && (l + 1..=n / 2).all(|m| gamma.coeff(&theta(m)) == 0)
                && gamma.terms().all(|(e, _)| zero.contains(e))
        });
        count_ok && tri_ok
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightConcentration {
    pub p: u64,
    pub max_hodge: usize,
    /// Weights carrying some nonzero `E₁` entry.
    pub support: Vec<i64>,
}

impl WeightConcentration {
    pub fn passed(&self) -> bool {
        self.support.iter().all(|w| w.rem_euclid(self.p as i64) == 0)
    }
}

/// Weights of all of `E₁^{s,*}`, `s ≤ max_hodge`, from the stratified Koszul
/// computation.
pub fn weight_concentration(p: u64, max_hodge: usize) -> Result<WeightConcentration> {
    let st = stratify(&sl2_complex(p)?, max_hodge)?;
    let support = st.support().into_iter().map(|w| w[0]).collect();
    Ok(WeightConcentration { p, max_hodge, support })
}

/// `dim` of `Λ(u) ⊗ F_p[κ] / (uκ^{(p−1)/2}, κ^{(p+1)/2})` at `(s, t)`.
pub fn e2_model(p: u64, s: usize, t: usize) -> usize {
    let half = (p as usize - 1) / 2;
    let k = s / 2;
    usize::from(s % 2 == 0 && ((t == 0 && k <= half) || (t == 3 && k < half)))
}

#[derive(Debug, Clone, Serialize)]
pub struct E2Check {
    pub p: u64,
    pub max_hodge: usize,
    /// Cells `(s, t, computed, model)` that disagree.
    pub mismatches: Vec<(usize, usize, usize, usize)>,
    pub cells: usize,
}

impl E2Check {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the computed `E₂` page with the model on its valid region.
pub fn e2_description(p: u64, max_hodge: usize) -> Result<E2Check> {
    let rep = compute_pages(&sl2_complex(p)?, max_hodge, false)?;
    let e2 = rep.page(2).expect("sl2 has a second page");
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for (s, t) in e2.valid_cells() {
        cells += 1;
        let (got, want) = (e2.dim(s, t), e2_model(p, s, t));
        if got != want {
            mismatches.push((s, t, got, want));
        }
    }
    Ok(E2Check { p, max_hodge, mismatches, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_koszul() {
        assert!(matches!(koszul_agreement(5, 7).unwrap(), Ok(n) if n > 0));
    }

    #[test]
    fn zero_line_mod5() {
        let h = h0_structure(5, 12).unwrap();
        assert!(h.passed(), "{h:?}");
        assert_eq!(h.dim(2), Some(1));
        assert_eq!(h.dim(5), Some(3));
        assert_eq!(h.dim(1), Some(0));
    }

    #[test]
    fn hilbert_count_degree_ten() {
        // 2a + 5k = 10 with a < 5 forces a = 0, k = 2: the six s_i s_j
        assert_eq!(standard_monomials(5, 10).len(), 6);
        assert_eq!(h0_structure(5, 10).unwrap().dim(10), Some(6));
    }

    #[test]
    fn weight_checks() {
        assert!(weight_one(5, 7).unwrap().passed());
        assert!(weight_zero_basis(7, 12));
        assert!(weight_concentration(5, 7).unwrap().passed());
    }

    #[test]
    fn second_page() {
        assert!(e2_description(5, 9).unwrap().passed());
    }
}
