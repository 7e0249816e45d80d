//! Integral cohomology of sl₂(Z) against a frozen Smith-normal-form table
//! produced by `oracle/sl2_torsion.py` (an independent Chevalley–Eilenberg
//! implementation on top of sympy).

use std::collections::BTreeMap;

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::torsion::{elementary_divisors, integral_table, torsion_primes, PrimePower};

const ORACLE: &str = include_str!("oracle/sl2_torsion.json");

fn oracle() -> BTreeMap<usize, BTreeMap<usize, Vec<u64>>> {
    let raw: BTreeMap<String, BTreeMap<String, Vec<u64>>> = serde_json::from_str(ORACLE).unwrap();
    raw.into_iter()
        .map(|(s, row)| (s.parse().unwrap(), row.into_iter().map(|(t, v)| (t.parse().unwrap(), v)).collect()))
        .collect()
}

fn sl2z() -> KoszulComplex {
    KoszulComplex::new(&builtin("sl2", Ring::Integers).unwrap()).unwrap()
}

#[test]
fn torsion_matches_oracle() {
    let expected = oracle();
    for h in integral_table(&sl2z(), 6).unwrap() {
        let mut want: Vec<PrimePower> = expected[&h.s][&h.t].iter().flat_map(|&d| elementary_divisors(d)).collect();
        want.sort();
        assert_eq!(h.torsion, want, "torsion of H^{} at s = {}", h.t, h.s);
    }
}

#[test]
fn first_occurrences_match_oracle() {
    let mut first: BTreeMap<u64, usize> = BTreeMap::new();
    for (s, row) in oracle() {
        for d in row.values().flatten() {
            for q in elementary_divisors(*d) {
                first.entry(q.p).or_insert(s);
            }
        }
    }
    let got = torsion_primes(&sl2z(), 6).unwrap();
    assert_eq!(got.first_occurrence, first);
    assert_eq!(first[&3], 2);
    assert_eq!(first[&5], 4);
}

#[test]
fn free_ranks_are_rational_dimensions() {
    let q = KoszulComplex::new(&builtin("sl2", Ring::Rationals).unwrap()).unwrap();
    let e1 = lie_sseq::spectral::compute_e1(&q, 6).unwrap();
    for h in integral_table(&sl2z(), 6).unwrap() {
        assert_eq!(h.free_rank, e1.dim(h.s, h.t), "({}, {})", h.s, h.t);
    }
}
