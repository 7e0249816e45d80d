//! Pages of the spectral sequence inside a Hodge window.
//!
//! `E₁^{s,t} = H^t(g, Sˢ(ad*))` is computed blockwise from `d₀`; the higher
//! pages come from the filtration subquotients `Z_r / B_r` (see [`engine`]).
//! All work is split by weight and run in parallel; results are
//! deterministic sums.

pub mod checks;
pub mod engine;
pub mod report;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::koszul::KoszulComplex;
pub use checks::{convolve, exact_sequence, is_d0_exact, zigzag, ExactnessCheck};
use engine::{e1_column, Grid, StratumPages};
pub use report::{weight_key, DifferentialRank, PageReport, SpectralReport, StratifiedReport};

/// Index of the page at which the sequence has stopped changing:
/// `E_m = E_∞` once `2m − 1 > dim g`.
pub fn final_page(n: usize) -> usize {
    (n + 1) / 2 + 1
}

fn has_weights(kc: &KoszulComplex) -> bool {
    kc.algebra().weights().is_some()
}

fn e1_strata(grid: &Grid) -> BTreeMap<Vec<i64>, PageReport> {
    let weights = grid.weights();
    let jobs: Vec<(usize, usize)> =
        (0..weights.len()).flat_map(|w| (0..=grid.max_hodge).map(move |s| (w, s))).collect();
    let cols: Vec<(usize, usize, Vec<usize>)> =
        jobs.par_iter().map(|&(w, s)| (w, s, e1_column(grid, s, &weights[w]))).collect();
    let mut out: BTreeMap<Vec<i64>, PageReport> =
        weights.iter().map(|w| (w.clone(), PageReport::new(1, grid.n(), grid.max_hodge))).collect();
    for (w, s, col) in cols {
        let page = out.get_mut(&weights[w]).expect("weight listed");
        for (t, d) in col.into_iter().enumerate() {
            page.set(s, t, d);
        }
    }
    out
}

fn sum_pages<'p>(r: usize, n: usize, max_hodge: usize, pages: impl Iterator<Item = &'p PageReport>) -> PageReport {
    let mut out = PageReport::new(r, n, max_hodge);
    for p in pages {
        for (s, t, d) in p.nonzero() {
            out.add(s, t, d);
        }
    }
    out
}

/// `E₁` for `s ≤ max_hodge` over a field.
pub fn compute_e1(kc: &KoszulComplex, max_hodge: usize) -> Result<PageReport> {
    compute_e1_with(kc, max_hodge, has_weights(kc))
}

/// As [`compute_e1`], choosing whether to split by weight.
pub fn compute_e1_with(kc: &KoszulComplex, max_hodge: usize, by_weight: bool) -> Result<PageReport> {
    let grid = Grid::new(kc, max_hodge, by_weight)?;
    let strata = e1_strata(&grid);
    Ok(sum_pages(1, kc.n(), max_hodge, strata.values()))
}

/// `E₁` split by weight. The algebra must carry weights.
pub fn stratify(kc: &KoszulComplex, max_hodge: usize) -> Result<StratifiedReport> {
    if !has_weights(kc) {
        return Err(Error::MissingWeights(kc.algebra().name().to_string()));
    }
    let grid = Grid::new(kc, max_hodge, true)?;
    let strata = e1_strata(&grid);
    let total = sum_pages(1, kc.n(), max_hodge, strata.values());
    Ok(StratifiedReport {
        algebra: kc.algebra().name().to_string(),
        ring: kc.ring().label(),
        max_hodge,
        total,
        strata,
    })
}

struct StratumResult {
    pages: Vec<PageReport>,
    diffs: Vec<DifferentialRank>,
}

fn stratum_pages(grid: &Grid, w: &[i64], e1: PageReport, last: usize) -> StratumResult {
    let (n, big_n) = (grid.n(), grid.max_hodge);
    let mut eng = StratumPages::new(grid, w.to_vec());
    let mut pages = vec![e1];
    let mut diffs = Vec::new();
    for r in 1..=last {
        if r > 1 {
            let prev = pages[r - 2].clone();
            // E_r vanishes wherever E_{r−1} does
            let mut page = PageReport::new(r, n, big_n);
            for (s, t, _) in prev.nonzero() {
                if page.is_valid(s, t) {
                    page.set(s, t, eng.page_dim(r, s, t));
                }
            }
            pages.push(page);
        }
        if r < last {
            let cur = pages[r - 1].clone();
            for (s, t, _) in cur.nonzero() {
                if s + r <= big_n {
                    let rank = eng.d_rank(r, s, t);
                    if rank > 0 {
                        diffs.push(DifferentialRank { r, s, t, rank });
                    }
                }
            }
        }
    }
    StratumResult { pages, diffs }
}

/// Pages `E₁ … E_final` for `s ≤ max_hodge`, with the nonzero ranks of the
/// differentials `d_1 … d_{final−1}`. Page `r` is exact for
/// `s ≤ max_hodge − r + 1`; other cells are reported as unknown.
pub fn compute_pages(kc: &KoszulComplex, max_hodge: usize, keep_strata: bool) -> Result<SpectralReport> {
    let grid = Grid::new(kc, max_hodge, has_weights(kc))?;
    let last = final_page(kc.n());
    let e1 = e1_strata(&grid);
    let results: Vec<(Vec<i64>, StratumResult)> = e1
        .into_par_iter()
        .map(|(w, p)| {
            let res = if p.nonzero().next().is_some() {
                stratum_pages(&grid, &w, p, last)
            } else {
                let empty = (1..=last).map(|r| PageReport::new(r, kc.n(), max_hodge)).collect();
                StratumResult { pages: empty, diffs: Vec::new() }
            };
            (w, res)
        })
        .collect();
    let pages = (1..=last)
        .map(|r| sum_pages(r, kc.n(), max_hodge, results.iter().map(|(_, res)| &res.pages[r - 1])))
        .collect();
    let mut total: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (_, res) in &results {
        for d in &res.diffs {
            *total.entry((d.r, d.s, d.t)).or_insert(0) += d.rank;
        }
    }
    let differentials = total.into_iter().map(|((r, s, t), rank)| DifferentialRank { r, s, t, rank }).collect();
    let strata = (keep_strata && has_weights(kc)).then(|| {
        results
            .into_iter()
            .filter(|(_, res)| res.pages[0].nonzero().next().is_some())
            .map(|(w, res)| (weight_key(&w), res.pages))
            .collect()
    });
    Ok(SpectralReport {
        algebra: kc.algebra().name().to_string(),
        ring: kc.ring().label(),
        max_hodge,
        pages,
        differentials,
        strata,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerCheck {
    pub s: usize,
    pub dims: Vec<usize>,
    pub sum: i64,
}

impl EulerCheck {
    pub fn passed(&self) -> bool {
        self.sum == 0
    }
}

/// Alternating sum `Σ_t (−1)^t dim E₁^{s,t}`; zero for every nonzero algebra.
pub fn euler_poincare_check(kc: &KoszulComplex, s: usize) -> Result<EulerCheck> {
    let e1 = compute_e1(kc, s)?;
    Ok(EulerCheck { s, dims: e1.column(s), sum: e1.euler_characteristic(s) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::linalg::Ring;

    fn kc(name: &str, ring: Ring) -> KoszulComplex {
        KoszulComplex::new(&builtin(name, ring).unwrap()).unwrap()
    }

    #[test]
    fn sl2_rational_e1() {
        let e1 = compute_e1(&kc("sl2", Ring::Rationals), 8).unwrap();
        for s in 0..=8 {
            let expect = if s % 2 == 0 { vec![1, 0, 0, 1] } else { vec![0; 4] };
            assert_eq!(e1.column(s), expect, "s = {s}");
        }
    }

    #[test]
    fn sl2_mod5_phase_transition() {
        let e1 = compute_e1(&kc("sl2", Ring::PrimeField(5)), 5).unwrap();
        assert_eq!(e1.column(4), vec![1, 3, 3, 1]);
        assert_eq!(e1.column(5), vec![3, 4, 1, 0]);
    }

    #[test]
    fn sl2_rational_pages() {
        let rep = compute_pages(&kc("sl2", Ring::Rationals), 6, false).unwrap();
        assert_eq!(rep.pages.len(), 3);
        for s in 0..=5 {
            assert_eq!(rep.page(2).unwrap().column(s), rep.page(1).unwrap().column(s));
        }
        assert!(rep.last().is_point());
        assert_eq!(rep.d_rank(2, 0, 3), 1);
    }

    #[test]
    fn nonabelian2_pages() {
        let rep = compute_pages(&kc("nonabelian2", Ring::PrimeField(3)), 6, false).unwrap();
        assert!(rep.page(2).unwrap().is_point());
        // Λ(h, eE²) ⊗ F₃[H, E³]
        let e1 = rep.page(1).unwrap();
        assert_eq!(e1.column(3), vec![2, 3, 1]);
    }

    #[test]
    fn integers_are_redirected() {
        assert!(matches!(compute_e1(&kc("sl2", Ring::Integers), 2), Err(Error::NeedsField { .. })));
    }

    #[test]
    fn strata_sum_to_total() {
        let st = stratify(&kc("sl2", Ring::PrimeField(5)), 6).unwrap();
        assert_eq!(st.sum(), st.total);
        assert_eq!(st.total, compute_e1_with(&kc("sl2", Ring::PrimeField(5)), 6, false).unwrap());
        assert!(st.support().iter().all(|w| w[0] % 5 == 0));
        assert!(stratify(&kc("so3", Ring::Rationals), 2).is_err());
    }
}
