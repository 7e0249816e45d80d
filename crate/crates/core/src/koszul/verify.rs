//! Mechanical checks of the differential axioms.
//!
//! `d₀²`, `d₁²` and `d₀d₁ + d₁d₀` are checked column by column: each basis
//! element is pushed through both differentials with exact arithmetic in the
//! complex's ring. Blocks above a column budget are checked on a seeded
//! random sample of columns; since all three composites are derivations,
//! vanishing on the generators together with the Leibniz rule (sampled
//! separately) forces them to vanish everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::koszul::basis::{Exps, Mask, MAX_DIM};
use crate::koszul::{Cochain, Diff, KoszulComplex};

#[derive(Debug, Clone)]
pub struct AxiomOptions {
    pub max_hodge: usize,
    /// Blocks with at most this many columns are checked exhaustively.
    pub full_budget: usize,
    /// Columns sampled from larger blocks.
    pub samples_per_block: usize,
    /// Random monomial pairs for the Leibniz rule.
    pub leibniz_pairs: usize,
    pub seed: u64,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { max_hodge: 8, full_budget: 20_000, samples_per_block: 200, leibniz_pairs: 500, seed: 7 }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub ring: String,
    pub blocks_full: usize,
    pub blocks_sampled: usize,
    pub columns_checked: u64,
    pub leibniz_pairs: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Acc = Vec<(Mask, Exps, i64)>;

fn compose(kc: &KoszulComplex, first: Diff, second: Diff, mask: Mask, e: &Exps, acc: &mut Acc, scratch: &mut Acc) {
    scratch.clear();
    kc.terms(first, mask, e, scratch);
    for &(m, f, c) in scratch.iter() {
        let start = acc.len();
        kc.terms(second, m, &f, acc);
        for term in &mut acc[start..] {
            term.2 *= c;
        }
    }
}

fn vanishes(kc: &KoszulComplex, acc: &mut Acc) -> bool {
    let ring = kc.ring();
    acc.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut i = 0;
    while i < acc.len() {
        let key = (acc[i].0, acc[i].1);
        let mut sum = 0i64;
        while i < acc.len() && (acc[i].0, acc[i].1) == key {
            sum += acc[i].2;
            i += 1;
        }
        if ring.reduce(sum) != 0 {
            return false;
        }
    }
    true
}

/// Checks the three identities on one basis element; returns the name of the
/// first that fails.
pub fn check_element(kc: &KoszulComplex, mask: Mask, e: &Exps) -> Option<&'static str> {
    let mut acc = Acc::new();
    let mut scratch = Acc::new();
    compose(kc, Diff::D0, Diff::D0, mask, e, &mut acc, &mut scratch);
    if !vanishes(kc, &mut acc) {
        return Some("d0^2");
    }
    acc.clear();
    compose(kc, Diff::D1, Diff::D1, mask, e, &mut acc, &mut scratch);
    if !vanishes(kc, &mut acc) {
        return Some("d1^2");
    }
    acc.clear();
    compose(kc, Diff::D0, Diff::D1, mask, e, &mut acc, &mut scratch);
    compose(kc, Diff::D1, Diff::D0, mask, e, &mut acc, &mut scratch);
    if !vanishes(kc, &mut acc) {
        return Some("d0d1+d1d0");
    }
    None
}

fn random_element(kc: &KoszulComplex, rng: &mut ChaCha8Rng, s: usize, t: usize) -> (Mask, Exps) {
    let dim = kc.block_dim(s, t);
    kc.element(s, t, rng.gen_range(0..dim))
}

pub fn verify_axioms(kc: &KoszulComplex, opts: &AxiomOptions) -> AxiomReport {
    let n = kc.n();
    let mut report = AxiomReport {
        algebra: kc.algebra().name().to_string(),
        ring: kc.ring().label(),
        ..Default::default()
    };
    let blocks: Vec<(usize, usize)> = (0..=opts.max_hodge).flat_map(|s| (0..=n).map(move |t| (s, t))).collect();
    let results: Vec<(bool, u64, Option<String>)> = blocks
        .par_iter()
        .map(|&(s, t)| {
            let dim = kc.block_dim(s, t);
            let full = dim <= opts.full_budget;
            let cols: Vec<usize> = if full {
                (0..dim).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((s as u64) << 32 | t as u64));
                (0..opts.samples_per_block).map(|_| rng.gen_range(0..dim)).collect()
            };
            let mut fail = None;
            for &c in &cols {
                let (m, e) = kc.element(s, t, c);
                if let Some(what) = check_element(kc, m, &e) {
                    fail = Some(format!("{what} ≠ 0 on column {c} of block ({s},{t})"));
                    break;
                }
            }
            (full, cols.len() as u64, fail)
        })
        .collect();
    for (full, checked, fail) in results {
        if full {
            report.blocks_full += 1;
        } else {
            report.blocks_sampled += 1;
        }
        report.columns_checked += checked;
        report.failures.extend(fail);
    }
    // generators, exhaustively
    for i in 0..n {
        let mut e = [0u8; MAX_DIM];
        if let Some(w) = check_element(kc, 1 << i, &e) {
            report.failures.push(format!("{w} ≠ 0 on x_{i}"));
        }
        e[i] = 1;
        if let Some(w) = check_element(kc, 0, &e) {
            report.failures.push(format!("{w} ≠ 0 on y_{i}"));
        }
    }
    // Leibniz rule on random monomial pairs
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ring = kc.ring();
    for _ in 0..opts.leibniz_pairs {
        let (s1, t1) = (rng.gen_range(0..=opts.max_hodge / 2), rng.gen_range(0..=n));
        let (s2, t2) = (rng.gen_range(0..=opts.max_hodge / 2), rng.gen_range(0..=n - t1));
        let (ma, ea) = random_element(kc, &mut rng, s1, t1);
        let (mb, eb) = random_element(kc, &mut rng, s2, t2);
        let a = Cochain::monomial(n, ma, ea, 1).in_ring(ring);
        let b = Cochain::monomial(n, mb, eb, 1).in_ring(ring);
        let sign = if t1 % 2 == 0 { 1 } else { -1 };
        for d in [Diff::D0, Diff::D1] {
            let lhs = a.mul(&b).apply(kc, d);
            let rhs = a.apply(kc, d).mul(&b).add(&a.mul(&b.apply(kc, d)).scale(sign));
            if lhs != rhs {
                report.failures.push(format!("Leibniz rule fails for {d:?} on a pair in ({s1},{t1})×({s2},{t2})"));
            }
        }
        report.leibniz_pairs += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::linalg::Ring;

    #[test]
    fn sl2_axioms_hold() {
        for ring in [Ring::Integers, Ring::PrimeField(3)] {
            let kc = KoszulComplex::new(&builtin("sl2", ring).unwrap()).unwrap();
            let r = verify_axioms(&kc, &AxiomOptions { max_hodge: 4, leibniz_pairs: 50, ..Default::default() });
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(r.blocks_sampled, 0);
        }
    }

    #[test]
    fn broken_algebra_is_caught() {
        // [h,e] = 3e breaks Jacobi, hence d₀² ≠ 0
        let l = crate::lie::LieAlgebra::new("bad", 3, Ring::Integers, [(0, 1, 1, 3), (0, 2, 2, -2), (1, 2, 0, 1)], None, None)
            .unwrap();
        let kc = KoszulComplex::new(&l).unwrap();
        let r = verify_axioms(&kc, &AxiomOptions { max_hodge: 1, leibniz_pairs: 0, ..Default::default() });
        assert!(!r.passed());
    }
}
