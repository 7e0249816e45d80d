//! Relations on the 3-line `H³_DR = P / div(P³)` of `sl₂` over `F_p`.
//!
//! Multiplying by `u = x₀x₋x₊` identifies `θ ∈ P` with `θu ∈ E₀^{·,3}`, so
//! `θu = 0` in `E₁` exactly when `θ` is a divergence. The relation
//! `κ^{(p−1)/2}u = 0` comes with an explicit `ĝ`; the nonvanishing of
//! `κ^{(p−3)/2}u` is an infeasible linear system (the classical proof is an
//! induction on the coefficients of a would-be preimage).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sl2::derham::{sl2_complex, solve_div};
use crate::sl2::poly::{beta_ops, ScalarPoly, VectorPoly, MINUS, PLUS, ZERO};
use crate::spectral::is_d0_exact;

/// Largest prime accepted by default.
pub const DEFAULT_P_CAP: u64 = 13;

#[derive(Debug, Clone, Serialize)]
pub struct FundamentalRelations {
    pub p: u64,
    /// `ĝ` with `div ĝ = κ^{(p−1)/2}`, rendered; `None` if none exists.
    pub relation_witness: Option<String>,
    /// Number of monomials in the witness.
    pub witness_terms: usize,
    /// `κ^{(p−3)/2}` is not a divergence.
    pub nonvanishing: bool,
    /// `y₀^{p−1}` is not a divergence, i.e. `τ ≠ 0`.
    pub tau_nonzero: bool,
    /// `s₀, s₋, s₊` are divergences, i.e. `u s_i = 0`.
    pub annihilators: [bool; 3],
    /// `κ^p = s₀² + s₋s₊`.
    pub frobenius: bool,
    /// The Koszul complex agrees: `κ^{(p−1)/2}u` is `d₀`-exact and
    /// `κ^{(p−3)/2}u` is not.
    pub koszul_agrees: bool,
}

impl FundamentalRelations {
    pub fn relation(&self) -> bool {
        self.relation_witness.is_some()
    }

    pub fn passed(&self) -> bool {
        self.relation() && self.nonvanishing && self.tau_nonzero && self.annihilators.iter().all(|&a| a) && self.frobenius && self.koszul_agrees
    }
}

pub fn fundamental_relations(p: u64) -> Result<FundamentalRelations> {
    fundamental_relations_capped(p, DEFAULT_P_CAP)
}

pub fn fundamental_relations_capped(p: u64, cap: u64) -> Result<FundamentalRelations> {
    let ops = beta_ops(p)?;
    if p > cap {
        return Err(Error::UnsupportedPrime { p, reason: "above the configured cap for the relation suite" });
    }
    let half = (p as u32 - 1) / 2;
    let kappa = ScalarPoly::kappa(p);
    let top = kappa.pow(half);
    let below = kappa.pow(half - 1);

    let witness = solve_div(&ops, &top).filter(|g| ops.div(g) == top);
    let nonvanishing = solve_div(&ops, &below).is_none();
    let tau_nonzero = solve_div(&ops, &ScalarPoly::var(p, ZERO).pow(p as u32 - 1)).is_none();
    let s = [ZERO, MINUS, PLUS].map(|i| ScalarPoly::var(p, i).pow(p as u32));
    let annihilators = [0, 1, 2].map(|i| solve_div(&ops, &s[i]).is_some());
    let frobenius = kappa.pow(p as u32) == s[0].pow(2).add(&s[1].mul(&s[2]));

    let kc = sl2_complex(p)?;
    let u = ScalarPoly::constant(p, 1).to_cochain(0b111);
    let koszul_agrees =
        is_d0_exact(&kc, &top.to_cochain(0).mul(&u))? && !is_d0_exact(&kc, &below.to_cochain(0).mul(&u))?;

    Ok(FundamentalRelations {
        p,
        witness_terms: witness.as_ref().map_or(0, |g| g.c.iter().map(ScalarPoly::len).sum()),
        relation_witness: witness.as_ref().map(VectorPoly::to_string),
        nonvanishing,
        tau_nonzero,
        annihilators,
        frobenius,
        koszul_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        for p in [3, 5, 7] {
            let r = fundamental_relations(p).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn caps_and_even_prime() {
        assert!(fundamental_relations(2).is_err());
        assert!(fundamental_relations(17).is_err());
        assert!(fundamental_relations_capped(17, 17).is_ok());
    }
}
