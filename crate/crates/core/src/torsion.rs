//! Integral cohomology `H^t(g_Z, Sˢ(ad*))`, torsion primes, and the
//! universal-coefficient comparison with `F_p`.
//!
//! For a cochain complex of free abelian groups,
//! `H^t(C ⊗ F_p) ≅ H^t(C) ⊗ F_p ⊕ Tor(H^{t+1}(C), F_p)`, so
//! `dim_{F_p} H^t = free rank + #p-torsion summands of H^t + #p-torsion
//! summands of H^{t+1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::koszul::{block_strata, KoszulComplex};
use crate::linalg::{cohomology::cohomology_at_named, prime_factors, rank, Ring, SparseMatrix};

/// A cyclic summand `Z/p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.k)
    }
}

impl Serialize for PrimePower {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Splits an invariant factor into prime-power summands.
pub fn elementary_divisors(mut d: u64) -> Vec<PrimePower> {
    prime_factors(d)
        .into_iter()
        .map(|p| {
            let mut k = 0;
            while d % p == 0 {
                d /= p;
                k += 1;
            }
            PrimePower { p, k }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralCohomology {
    pub s: usize,
    pub t: usize,
    pub free_rank: usize,
    /// Torsion as a sorted multiset of prime powers.
    pub torsion: Vec<PrimePower>,
}

impl IntegralCohomology {
    /// Number of cyclic `p`-power summands.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|q| q.p == p).count()
    }

    pub fn primes(&self) -> BTreeSet<u64> {
        self.torsion.iter().map(|q| q.p).collect()
    }
}

fn require_integers(kc: &KoszulComplex, op: &'static str) -> Result<()> {
    match kc.ring() {
        Ring::Integers => Ok(()),
        r => Err(Error::NeedsIntegers { op, ring: r.label() }),
    }
}

fn d0_or_empty(kc: &KoszulComplex, s: usize, t: isize) -> Result<SparseMatrix> {
    if t < 0 {
        Ok(SparseMatrix::zeros(kc.block_dim(s, 0), 0))
    } else {
        kc.d0(s, t as usize)
    }
}

/// Free rank and torsion of `H^t` at Hodge degree `s`, one weight stratum at
/// a time when the algebra has weights.
pub fn integral_cohomology(kc: &KoszulComplex, s: usize, t: usize) -> Result<IntegralCohomology> {
    require_integers(kc, "integral_cohomology")?;
    let n = kc.n();
    if t > n {
        return Err(Error::OutOfRange(format!("exterior degree {t} exceeds dimension {n}")));
    }
    let d_in = d0_or_empty(kc, s, t as isize - 1)?;
    let d_out = kc.d0(s, t)?;
    let stratify = kc.algebra().weights().is_some();
    let here = block_strata(kc, s, t, stratify)?;
    let before = (t > 0).then(|| block_strata(kc, s, t - 1, stratify)).transpose()?;
    let after = (t < n).then(|| block_strata(kc, s, t + 1, stratify)).transpose()?;
    let mut free_rank = 0;
    let mut torsion = Vec::new();
    for (w, cols) in &here.classes {
        let prev = before.as_ref().map_or(&[][..], |b| b.members(w));
        let next = after.as_ref().map_or(&[][..], |a| a.members(w));
        let din = d_in.select_rows(cols).select_cols(prev);
        let dout = d_out.select_rows(next).select_cols(cols);
        let h = cohomology_at_named(&din, &dout, Ring::Integers, &format!("({s}, {t})"))?;
        free_rank += h.rank();
        for d in h.torsion() {
            let d = d.to_u64().ok_or_else(|| Error::OutOfRange(format!("torsion coefficient {d} exceeds 64 bits")))?;
            torsion.extend(elementary_divisors(d));
        }
    }
    torsion.sort();
    Ok(IntegralCohomology { s, t, free_rank, torsion })
}

/// Integral cohomology of every cell with `s ≤ max_hodge`, computed in
/// parallel.
pub fn integral_table(kc: &KoszulComplex, max_hodge: usize) -> Result<Vec<IntegralCohomology>> {
    require_integers(kc, "integral_table")?;
    let cells: Vec<(usize, usize)> = (0..=max_hodge).flat_map(|s| (0..=kc.n()).map(move |t| (s, t))).collect();
    cells.par_iter().map(|&(s, t)| integral_cohomology(kc, s, t)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionPrimes {
    /// Primes dividing some torsion coefficient at each Hodge degree.
    pub by_hodge: BTreeMap<usize, BTreeSet<u64>>,
    /// Least Hodge degree at which each prime occurs.
    pub first_occurrence: BTreeMap<u64, usize>,
}

impl TorsionPrimes {
    pub fn all(&self) -> BTreeSet<u64> {
        self.first_occurrence.keys().copied().collect()
    }
}

pub fn torsion_primes(kc: &KoszulComplex, max_hodge: usize) -> Result<TorsionPrimes> {
    let table = integral_table(kc, max_hodge)?;
    Ok(primes_of(&table, max_hodge))
}

pub fn primes_of(table: &[IntegralCohomology], max_hodge: usize) -> TorsionPrimes {
    let mut by_hodge: BTreeMap<usize, BTreeSet<u64>> = (0..=max_hodge).map(|s| (s, BTreeSet::new())).collect();
    let mut first_occurrence = BTreeMap::new();
    for h in table {
        for p in h.primes() {
            by_hodge.entry(h.s).or_default().insert(p);
            first_occurrence.entry(p).and_modify(|s: &mut usize| *s = (*s).min(h.s)).or_insert(h.s);
        }
    }
    TorsionPrimes { by_hodge, first_occurrence }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UcfVerdict {
    /// `dim_{F_p} = dim_Q`.
    Match,
    /// Dimensions differ by exactly the adjacent `p`-torsion.
    TorsionExplained,
    Violation,
}

#[derive(Debug, Clone, Serialize)]
pub struct UcfEntry {
    pub s: usize,
    pub t: usize,
    pub dim_fp: usize,
    pub free_rank: usize,
    pub torsion_here: usize,
    pub torsion_next: usize,
    pub verdict: UcfVerdict,
}

/// `dim H^t` of the `d₀` complex reduced mod `p`, from the integral matrices.
fn dim_mod_p(kc: &KoszulComplex, s: usize, t: usize, p: u64) -> Result<usize> {
    let ring = Ring::prime_field(p)?;
    let n = kc.n();
    let r_out = if t < n { rank(&kc.d0(s, t)?, ring)? } else { 0 };
    let r_in = if t > 0 { rank(&kc.d0(s, t - 1)?, ring)? } else { 0 };
    Ok(kc.block_dim(s, t) - r_out - r_in)
}

/// Compares `F_p` cohomology with the integral answer on every cell
/// `s ≤ max_hodge`.
pub fn ucf_compare(kc: &KoszulComplex, p: u64, max_hodge: usize) -> Result<Vec<UcfEntry>> {
    let table = integral_table(kc, max_hodge)?;
    ucf_against(kc, &table, p)
}

/// As [`ucf_compare`], reusing a precomputed integral table.
pub fn ucf_against(kc: &KoszulComplex, table: &[IntegralCohomology], p: u64) -> Result<Vec<UcfEntry>> {
    let lookup: BTreeMap<(usize, usize), &IntegralCohomology> = table.iter().map(|h| ((h.s, h.t), h)).collect();
    table
        .par_iter()
        .map(|h| {
            let dim_fp = dim_mod_p(kc, h.s, h.t, p)?;
            let torsion_here = h.p_torsion_count(p);
            let torsion_next = lookup.get(&(h.s, h.t + 1)).map_or(0, |n| n.p_torsion_count(p));
            let verdict = if dim_fp != h.free_rank + torsion_here + torsion_next {
                UcfVerdict::Violation
            } else if torsion_here + torsion_next == 0 {
                UcfVerdict::Match
            } else {
                UcfVerdict::TorsionExplained
            };
            Ok(UcfEntry { s: h.s, t: h.t, dim_fp, free_rank: h.free_rank, torsion_here, torsion_next, verdict })
        })
        .collect()
}

/// Renders an integral table grouped by Hodge degree.
pub fn render_table(table: &[IntegralCohomology]) -> String {
    let mut out = String::new();
    let mut last = None;
    for h in table {
        if last != Some(h.s) {
            out.push_str(&format!("s = {}\n", h.s));
            last = Some(h.s);
        }
        let tors = if h.torsion.is_empty() {
            String::new()
        } else {
            let parts: Vec<String> = h.torsion.iter().map(|q| format!("Z/{}", q.p.pow(q.k))).collect();
            format!(" + {}", parts.join(" + "))
        };
        out.push_str(&format!("  H^{} = Z^{}{tors}\n", h.t, h.free_rank));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;

    fn kc(name: &str) -> KoszulComplex {
        KoszulComplex::new(&builtin(name, Ring::Integers).unwrap()).unwrap()
    }

    #[test]
    fn divisors() {
        assert_eq!(elementary_divisors(12), vec![PrimePower { p: 2, k: 2 }, PrimePower { p: 3, k: 1 }]);
        assert!(elementary_divisors(1).is_empty());
    }

    #[test]
    fn sl2_top_class() {
        let h = integral_cohomology(&kc("sl2"), 0, 3).unwrap();
        assert_eq!((h.free_rank, h.torsion.len()), (1, 0));
    }

    #[test]
    fn abelian_has_no_torsion() {
        let k = kc("abelian(2)");
        for s in 0..=3 {
            for t in 0..=2 {
                let h = integral_cohomology(&k, s, t).unwrap();
                assert_eq!(h.free_rank, [1, 2, 1][t] * (s + 1));
                assert!(h.torsion.is_empty());
            }
        }
        assert!(torsion_primes(&k, 3).unwrap().all().is_empty());
    }

    #[test]
    fn needs_integers() {
        let k = KoszulComplex::new(&builtin("sl2", Ring::Rationals).unwrap()).unwrap();
        assert!(integral_cohomology(&k, 0, 0).is_err());
    }

    #[test]
    fn sl2_universal_coefficients() {
        let k = kc("sl2");
        let table = integral_table(&k, 4).unwrap();
        for p in [2, 3, 5, 7] {
            assert!(ucf_against(&k, &table, p).unwrap().iter().all(|e| e.verdict != UcfVerdict::Violation));
        }
    }
}
