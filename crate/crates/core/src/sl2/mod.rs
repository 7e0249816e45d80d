//! The mod-`p` structure of `sl₂` through its de Rham model.
//!
//! [`poly`] holds the Witt operators and the calculus, [`derham`] the
//! 0-line and the weight checks, [`relations`] the relations on the 3-line,
//! and [`table`] the named generators through Hodge degree `p`.
//! [`verify_suite`] runs everything and reports one verdict per statement.

pub mod derham;
pub mod poly;
pub mod relations;
pub mod table;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
pub use derham::{
    e2_description, h0_structure, koszul_agreement, solve_div, weight_concentration, weight_one, weight_zero_basis,
};
pub use poly::{beta_ops, Form, Identification, ScalarPoly, VectorPoly, WittOperators};
pub use relations::{fundamental_relations, fundamental_relations_capped, FundamentalRelations, DEFAULT_P_CAP};
pub use table::{audit_generator_table, explore_generators, generator_table, GeneratorRecord, TableAudit};

/// One checked statement: `PASS <id> p=<p> [witness]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub p: u64,
    pub pass: bool,
    pub witness: String,
}

impl Verdict {
    pub fn new(id: &str, p: u64, pass: bool, witness: impl Into<String>) -> Self {
        Verdict { id: id.to_string(), p, pass, witness: witness.into() }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} p={} [{}]", self.id, self.p, self.witness)
    }
}

/// Every check for one prime, in a fixed order.
pub fn verdicts_for(p: u64) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let ops = beta_ops(p)?;
    out.push(Verdict::new("witt-brackets", p, ops.check_brackets(4), "[β₀,β∓] = ±2β∓, [β₋,β₊] = β₀ on degree ≤ 4"));

    let hodge = p as usize + 2;
    let agree = koszul_agreement(p, hodge)?;
    out.push(Verdict::new(
        "derham-matches-koszul",
        p,
        agree.is_ok(),
        match agree {
            Ok(n) => format!("{n} basis cochains, s ≤ {hodge}"),
            Err((s, t)) => format!("first disagreement at ({s},{t})"),
        },
    ));

    let h0 = h0_structure(p, 2 * p as u32 + 2)?;
    let bad = h0.degrees.iter().find(|d| !d.passed());
    out.push(Verdict::new(
        "h0-presentation",
        p,
        h0.passed(),
        match bad {
            None => format!("dims {:?} through degree {}", h0.degrees.iter().map(|d| d.kernel_dim).collect::<Vec<_>>(), 2 * p + 2),
            Some(d) => format!("degree {}: ker {} vs quotient {}", d.degree, d.kernel_dim, d.quotient_dim),
        },
    ));

    let w1 = weight_one(p, p as u32 + 2)?;
    out.push(Verdict::new("weight-one", p, w1.passed(), format!("{} curl-free forms, w ≢ 0", w1.forms_checked)));
    out.push(Verdict::new("weight-zero-basis", p, weight_zero_basis(p, 2 * p as u32), "⌊N/2⌋+1 monomials, unitriangular"));
    let wc = weight_concentration(p, p as usize + 1)?;
    out.push(Verdict::new("weight-concentration", p, wc.passed(), format!("E₁ weights {:?}", wc.support)));

    if p <= DEFAULT_P_CAP {
        let r = fundamental_relations(p)?;
        let half = (p - 1) / 2;
        out.push(Verdict::new(
            "fundamental-relation",
            p,
            r.relation(),
            format!("κ^{half}u = 0, div witness with {} terms", r.witness_terms),
        ));
        out.push(Verdict::new(
            "fundamental-nonvanishing",
            p,
            r.nonvanishing && r.tau_nonzero && r.koszul_agrees,
            format!("κ^{}u ≠ 0 and τ ≠ 0 by infeasibility", half - 1),
        ));
        out.push(Verdict::new("u-annihilators", p, r.annihilators.iter().all(|&a| a), "us₀ = us₋ = us₊ = 0"));
        out.push(Verdict::new("frobenius-relation", p, r.frobenius, "κ^p = s₀² + s₋s₊"));
    }

    if p >= 5 {
        let a = audit_generator_table(p)?;
        let failed = a.failures();
        out.push(Verdict::new(
            "generator-table",
            p,
            a.passed(),
            if failed.is_empty() { format!("{} rows, {} bases", a.rows.len(), a.spans.len()) } else { format!("failing rows {failed:?}") },
        ));
    }

    let e2 = e2_description(p, p as usize + 3)?;
    out.push(Verdict::new(
        "e2-description",
        p,
        e2.passed(),
        match e2.mismatches.first() {
            None => format!("{} cells", e2.cells),
            Some((s, t, got, want)) => format!("({s},{t}): {got} vs {want}"),
        },
    ));
    Ok(out)
}

/// [`verdicts_for`] over several primes in parallel; output order follows
/// `primes`.
pub fn verify_suite(primes: &[u64]) -> Result<Vec<Verdict>> {
    let per: Vec<Vec<Verdict>> = primes.par_iter().map(|&p| verdicts_for(p)).collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_format() {
        let v = Verdict::new("frobenius-relation", 5, true, "κ^p = s₀² + s₋s₊");
        assert_eq!(v.to_string(), "PASS frobenius-relation p=5 [κ^p = s₀² + s₋s₊]");
    }

    #[test]
    fn suite_mod3() {
        let v = verify_suite(&[3]).unwrap();
        assert!(v.iter().all(|x| x.pass), "{v:#?}");
        assert!(v.iter().all(|x| x.id != "generator-table"));
    }
}
