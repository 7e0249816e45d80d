//! Polynomials in `y₀, y₋, y₊` over `F_p`, the Witt operators, and the
//! vector-calculus picture of the `sl₂` Koszul complex.
//!
//! With `E₀^{s,·} ≅ P_s → P_s³ → P_s³ → P_s` via
//!
//! * `Λ¹`: `f₀x₀ + f₋x₋ + f₊x₊`,
//! * `Λ²`: `g₀x₋x₊ + g₋x₊x₀ + g₊x₀x₋`,
//! * `Λ³`: `θ x₀x₋x₊`,
//!
//! the differential `d₀` becomes gradient, curl and divergence built from
//! `β₀ = 2y₊∂₊ − 2y₋∂₋`, `β₋ = −y₊∂₀ + 2y₀∂₋`, `β₊ = y₋∂₀ − 2y₀∂₊`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::koszul::{Cochain, Exps, Mask, MAX_DIM};
use crate::linalg::{is_prime, Ring};

/// Exponents `(a, b, c)` of `y₀^a y₋^b y₊^c`.
pub type Exp3 = [u32; 3];

pub const ZERO: usize = 0;
pub const MINUS: usize = 1;
pub const PLUS: usize = 2;

const LABELS: [&str; 3] = ["0", "-", "+"];

/// `β₀`-eigenvalue of a monomial.
pub fn monomial_weight(e: &Exp3) -> i64 {
    2 * (e[PLUS] as i64 - e[MINUS] as i64)
}

/// Position of a monomial inside [`monomials`] of its degree.
pub fn monomial_index(e: &Exp3) -> usize {
    let m = (e[MINUS] + e[PLUS]) as usize;
    m * (m + 1) / 2 + e[PLUS] as usize
}

/// Monomials of degree `d`, in a fixed order.
pub fn monomials(d: u32) -> Vec<Exp3> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// An element of `F_p[y₀, y₋, y₊]`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarPoly {
    p: u64,
    terms: BTreeMap<Exp3, u64>,
}

impl ScalarPoly {
    pub fn zero(p: u64) -> Self {
        ScalarPoly { p, terms: BTreeMap::new() }
    }

    pub fn monomial(p: u64, e: Exp3, c: i64) -> Self {
        let mut f = ScalarPoly::zero(p);
        f.add_term(e, c);
        f
    }

    pub fn constant(p: u64, c: i64) -> Self {
        ScalarPoly::monomial(p, [0; 3], c)
    }

    pub fn var(p: u64, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        ScalarPoly::monomial(p, e, 1)
    }

    /// The Casimir `κ = y₀² + y₋y₊`.
    pub fn kappa(p: u64) -> Self {
        ScalarPoly::monomial(p, [2, 0, 0], 1).add(&ScalarPoly::monomial(p, [0, 1, 1], 1))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add_term(&mut self, e: Exp3, c: i64) {
        let p = self.p as i64;
        let v = self.terms.get(&e).map_or(0, |&x| x as i64);
        let v = (v + c.rem_euclid(p)).rem_euclid(p) as u64;
        if v == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn coeff(&self, e: &Exp3) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(*e, c as i64);
        }
        out
    }

    pub fn sub(&self, other: &ScalarPoly) -> ScalarPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ScalarPoly {
        let k = k.rem_euclid(self.p as i64) as u64;
        let mut out = ScalarPoly::zero(self.p);
        for (e, c) in self.terms() {
            out.add_term(*e, (c * k % self.p) as i64);
        }
        out
    }

    pub fn mul(&self, other: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero(self.p);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], (x * y % self.p) as i64);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ScalarPoly {
        (0..k).fold(ScalarPoly::constant(self.p, 1), |acc, _| acc.mul(self))
    }

    /// `∂/∂y_i`.
    pub fn derivative(&self, i: usize) -> ScalarPoly {
        let mut out = ScalarPoly::zero(self.p);
        for (e, c) in self.terms() {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, (c * (e[i] as u64 % self.p) % self.p) as i64);
            }
        }
        out
    }

    /// Exact division by `y_i`; `None` if some term lacks the factor.
    pub fn divide_by_var(&self, i: usize) -> Option<ScalarPoly> {
        let mut out = ScalarPoly::zero(self.p);
        for (e, c) in self.terms() {
            if e[i] == 0 {
                return None;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(f, c as i64);
        }
        Some(out)
    }

    /// Degree, when homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Weight, when all terms share one.
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(monomial_weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Coordinates in [`monomials`]`(d)`; terms of other degrees are ignored.
    pub fn coordinates(&self, d: u32) -> Vec<(usize, i64)> {
        let mut v: Vec<(usize, i64)> =
            self.terms().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (monomial_index(e), c as i64)).collect();
        v.sort_unstable();
        v
    }

    pub fn from_coordinates(p: u64, d: u32, v: &[(usize, i64)]) -> ScalarPoly {
        let basis = monomials(d);
        let mut out = ScalarPoly::zero(p);
        for &(i, c) in v {
            out.add_term(basis[i], c);
        }
        out
    }

    /// Embeds as a cochain with the exterior part `mask`.
    pub fn to_cochain(&self, mask: Mask) -> Cochain {
        let mut out = Cochain::zero(3).in_ring(Ring::PrimeField(self.p));
        for (e, c) in self.terms() {
            out.add_term(mask, exps(e), c as i64);
        }
        out
    }
}

fn exps(e: &Exp3) -> Exps {
    let mut x = [0u8; MAX_DIM];
    for i in 0..3 {
        x[i] = e[i] as u8;
    }
    x
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("y{}", LABELS[i]) } else { format!("y{}^{}", LABELS[i], e[i]) })
                .collect();
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", mono.join(" "))?,
                _ => write!(f, "{c} {}", mono.join(" "))?,
            }
        }
        Ok(())
    }
}

/// Which exterior degree a triple of functions stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identification {
    /// `f₀x₀ + f₋x₋ + f₊x₊`
    OneForm,
    /// `g₀x₋x₊ + g₋x₊x₀ + g₊x₀x₋`
    TwoForm,
}

/// Exterior masks and signs of the three components, in the order `0, −, +`.
fn frame(id: Identification) -> [(Mask, i64); 3] {
    match id {
        Identification::OneForm => [(0b001, 1), (0b010, 1), (0b100, 1)],
        // x₊x₀ = −x₀x₊
        Identification::TwoForm => [(0b110, 1), (0b101, -1), (0b011, 1)],
    }
}

/// A triple `(f₀, f₋, f₊)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorPoly {
    pub id: Identification,
    pub c: [ScalarPoly; 3],
}

impl VectorPoly {
    pub fn new(id: Identification, c: [ScalarPoly; 3]) -> Self {
        VectorPoly { id, c }
    }

    pub fn zero(p: u64, id: Identification) -> Self {
        VectorPoly::new(id, [ScalarPoly::zero(p), ScalarPoly::zero(p), ScalarPoly::zero(p)])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(ScalarPoly::is_zero)
    }

    pub fn add(&self, other: &VectorPoly) -> VectorPoly {
        VectorPoly::new(self.id, [0, 1, 2].map(|i| self.c[i].add(&other.c[i])))
    }

    pub fn scale(&self, k: i64) -> VectorPoly {
        VectorPoly::new(self.id, [0, 1, 2].map(|i| self.c[i].scale(k)))
    }

    /// Coordinates in `monomials(d)³`, component-major.
    pub fn coordinates(&self, d: u32) -> Vec<(usize, i64)> {
        let len = monomials(d).len();
        (0..3).flat_map(|i| self.c[i].coordinates(d).into_iter().map(move |(j, x)| (i * len + j, x))).collect()
    }

    pub fn from_coordinates(p: u64, id: Identification, d: u32, v: &[(usize, i64)]) -> VectorPoly {
        let len = monomials(d).len();
        let part = |i: usize| -> Vec<(usize, i64)> {
            v.iter().filter(|e| e.0 / len == i).map(|&(j, x)| (j % len, x)).collect()
        };
        VectorPoly::new(id, [0, 1, 2].map(|i| ScalarPoly::from_coordinates(p, d, &part(i))))
    }

    pub fn to_cochain(&self) -> Cochain {
        let p = self.c[0].p();
        let mut out = Cochain::zero(3).in_ring(Ring::PrimeField(p));
        for (i, (mask, sign)) in frame(self.id).into_iter().enumerate() {
            out = out.add(&self.c[i].to_cochain(mask).scale(sign));
        }
        out
    }
}

impl fmt::Display for VectorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

/// A cochain of `sl₂` read through the identifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    Zero(ScalarPoly),
    One(VectorPoly),
    Two(VectorPoly),
    Three(ScalarPoly),
}

impl Form {
    pub fn degree(&self) -> usize {
        match self {
            Form::Zero(_) => 0,
            Form::One(_) => 1,
            Form::Two(_) => 2,
            Form::Three(_) => 3,
        }
    }

    pub fn to_cochain(&self) -> Cochain {
        match self {
            Form::Zero(f) => f.to_cochain(0),
            Form::Three(f) => f.to_cochain(0b111),
            Form::One(v) | Form::Two(v) => v.to_cochain(),
        }
    }

    /// Reads a cochain of pure exterior degree `t` over `F_p`.
    pub fn from_cochain(c: &Cochain, t: usize, p: u64) -> Result<Form> {
        let mut parts = [ScalarPoly::zero(p), ScalarPoly::zero(p), ScalarPoly::zero(p)];
        let mut scalar = ScalarPoly::zero(p);
        let id = match t {
            1 => Some(Identification::OneForm),
            2 => Some(Identification::TwoForm),
            _ => None,
        };
        for (mask, e, c) in c.terms() {
            if mask.count_ones() as usize != t || e[3..].iter().any(|&a| a != 0) {
                return Err(Error::Shape(format!("term outside Λ^{t} of sl2")));
            }
            let e3 = [e[0] as u32, e[1] as u32, e[2] as u32];
            match id {
                None => scalar.add_term(e3, c),
                Some(id) => {
                    let (i, &(_, sign)) = frame(id).iter().enumerate().find(|(_, f)| f.0 == mask).expect("mask of degree t");
                    parts[i].add_term(e3, c * sign);
                }
            }
        }
        Ok(match t {
            0 => Form::Zero(scalar),
            3 => Form::Three(scalar),
            _ => {
                let v = VectorPoly::new(id.expect("t is 1 or 2"), parts);
                if t == 1 {
                    Form::One(v)
                } else {
                    Form::Two(v)
                }
            }
        })
    }
}

/// A first-order operator `Σ c · y_a ∂_b`.
#[derive(Debug, Clone, Copy)]
pub struct WittOp {
    terms: [(i64, usize, usize); 2],
}

impl WittOp {
    pub fn apply(&self, f: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero(f.p());
        for &(c, a, b) in &self.terms {
            out = out.add(&f.derivative(b).mul(&ScalarPoly::var(f.p(), a)).scale(c));
        }
        out
    }
}

/// `β₀, β₋, β₊` on `F_p[y₀, y₋, y₊]` with the calculus built on them.
#[derive(Debug, Clone, Copy)]
pub struct WittOperators {
    pub p: u64,
    ops: [WittOp; 3],
}

/// The Witt operators over `F_p`. Refuses `p = 2`, where the structure
/// theory below breaks down at once.
pub fn beta_ops(p: u64) -> Result<WittOperators> {
    if !is_prime(p) {
        return Err(Error::InvalidRing(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime { p, reason: "the sl2 de Rham picture needs an odd prime" });
    }
    let ops = [
        WittOp { terms: [(2, PLUS, PLUS), (-2, MINUS, MINUS)] },
        WittOp { terms: [(-1, PLUS, ZERO), (2, ZERO, MINUS)] },
        WittOp { terms: [(1, MINUS, ZERO), (-2, ZERO, PLUS)] },
    ];
    Ok(WittOperators { p, ops })
}

impl WittOperators {
    /// `β_i` with `i ∈ {ZERO, MINUS, PLUS}`.
    pub fn beta(&self, i: usize, f: &ScalarPoly) -> ScalarPoly {
        self.ops[i].apply(f)
    }

    pub fn grad(&self, theta: &ScalarPoly) -> VectorPoly {
        VectorPoly::new(Identification::OneForm, [0, 1, 2].map(|i| self.beta(i, theta)))
    }

    pub fn curl(&self, v: &VectorPoly) -> VectorPoly {
        let [f0, fm, fp] = &v.c;
        let b = |i, f| self.beta(i, f);
        VectorPoly::new(
            Identification::TwoForm,
            [
                b(MINUS, fp).sub(&b(PLUS, fm)).sub(f0),
                b(PLUS, f0).sub(&b(ZERO, fp)).sub(&fp.scale(2)),
                b(ZERO, fm).sub(&b(MINUS, f0)).sub(&fm.scale(2)),
            ],
        )
    }

    pub fn div(&self, v: &VectorPoly) -> ScalarPoly {
        (0..3).fold(ScalarPoly::zero(self.p), |acc, i| acc.add(&self.beta(i, &v.c[i])))
    }

    /// `d₀` in the de Rham picture.
    pub fn d(&self, form: &Form) -> Form {
        match form {
            Form::Zero(f) => Form::One(self.grad(f)),
            Form::One(v) => Form::Two(self.curl(v)),
            Form::Two(v) => Form::Three(self.div(v)),
            // Λ⁴ = 0
            Form::Three(f) => Form::Three(ScalarPoly::zero(f.p())),
        }
    }

    /// Checks the bracket relations `[β₀,β₋] = 2β₋`, `[β₀,β₊] = −2β₊`,
    /// `[β₋,β₊] = β₀` on every monomial of degree at most `max_degree`.
    pub fn check_brackets(&self, max_degree: u32) -> bool {
        let rel = [(ZERO, MINUS, MINUS, 2), (ZERO, PLUS, PLUS, -2), (MINUS, PLUS, ZERO, 1)];
        (0..=max_degree).flat_map(monomials).all(|e| {
            let f = ScalarPoly::monomial(self.p, e, 1);
            rel.iter().all(|&(a, b, c, k)| {
                let lhs = self.beta(a, &self.beta(b, &f)).sub(&self.beta(b, &self.beta(a, &f)));
                lhs == self.beta(c, &f).scale(k)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(p: u64, a: u32, b: u32, c: u32) -> ScalarPoly {
        ScalarPoly::monomial(p, [a, b, c], 1)
    }

    #[test]
    fn brackets_and_eigenvalues() {
        let ops = beta_ops(7).unwrap();
        assert!(ops.check_brackets(3));
        let f = y(7, 1, 0, 2);
        assert_eq!(ops.beta(ZERO, &f), f.scale(4));
        let k = ScalarPoly::kappa(7);
        assert!((0..3).all(|i| ops.beta(i, &k).is_zero()));
        assert!(ops.grad(&k).is_zero());
        assert!(beta_ops(2).is_err());
    }

    #[test]
    fn derivation_rule() {
        let ops = beta_ops(5).unwrap();
        let (f, g) = (y(5, 2, 1, 0).add(&y(5, 0, 0, 1)), y(5, 1, 1, 1).scale(3));
        for i in 0..3 {
            let lhs = ops.beta(i, &f.mul(&g));
            assert_eq!(lhs, ops.beta(i, &f).mul(&g).add(&f.mul(&ops.beta(i, &g))));
        }
    }

    #[test]
    fn calculus_identities() {
        let ops = beta_ops(7).unwrap();
        let theta = y(7, 1, 1, 1);
        assert!(ops.curl(&ops.grad(&theta)).is_zero());
        for d in 0..4 {
            for e in monomials(d) {
                for i in 0..3 {
                    let mut v = VectorPoly::zero(7, Identification::OneForm);
                    v.c[i] = ScalarPoly::monomial(7, e, 1);
                    assert!(ops.div(&ops.curl(&v)).is_zero());
                }
            }
        }
    }

    #[test]
    fn divergence_family() {
        // div(0, y₋y₀^i, 0) = (i+2)y₀^{i+1} − iκy₀^{i−1}
        let p = 7;
        let ops = beta_ops(p).unwrap();
        for i in 1..=5u32 {
            let mut v = VectorPoly::zero(p, Identification::TwoForm);
            v.c[MINUS] = y(p, i, 1, 0);
            let expect = y(p, i + 1, 0, 0).scale(i as i64 + 2).sub(&ScalarPoly::kappa(p).mul(&y(p, i - 1, 0, 0)).scale(i as i64));
            assert_eq!(ops.div(&v), expect);
        }
    }

    #[test]
    fn cochain_round_trip() {
        let v = VectorPoly::new(Identification::TwoForm, [y(5, 1, 0, 0), y(5, 0, 1, 0).scale(2), y(5, 0, 0, 1)]);
        let c = v.to_cochain();
        assert_eq!(Form::from_cochain(&c, 2, 5).unwrap(), Form::Two(v));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(4).len(), 15);
        assert_eq!(monomials(0), vec![[0, 0, 0]]);
        for (i, e) in monomials(6).iter().enumerate() {
            assert_eq!(monomial_index(e), i);
        }
    }
}
