//! Rank computations behind the pages.
//!
//! Everything is done one weight stratum at a time: both differentials
//! preserve weight, so every matrix below is block diagonal by weight and
//! ranks add up.
//!
//! For a page `r` and a cell `(s, t)`:
//!
//! * `Z_r` is the space of leading parts `x_s` of chains
//!   `x_s + x_{s+1} + … + x_{s+r−1}`, `x_{s+k} ∈ E₀^{s+k, t−2k}`, whose total
//!   differential vanishes in Hodge degrees `s … s+r−1`;
//! * `B_r` is the set of Hodge-`s` components of `D(y)` for chains
//!   `y = y_{s−r+1} + … + y_s` with `D(y)` vanishing below Hodge degree `s`;
//! * `E_r^{s,t} = Z_r / B_r`.
//!
//! Both are images of kernels, so their dimensions are differences of ranks
//! of stacked matrices. Using only blocks with `s ≤ N`, the result is exact
//! for `s ≤ N − r + 1`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::koszul::{block_strata, BlockStrata, Diff, KoszulComplex};
use crate::linalg::{rank_of_columns, Ring};

/// Prime used for the modular pre-pass of rational ranks.
pub const CERT_PRIME: u64 = 2_147_483_647;

pub type Column = Vec<(usize, i64)>;

/// Weight partitions of every block in a Hodge window.
pub struct Grid<'a> {
    pub kc: &'a KoszulComplex,
    pub ring: Ring,
    pub max_hodge: usize,
    strata: Vec<Vec<BlockStrata>>,
}

impl<'a> Grid<'a> {
    pub fn new(kc: &'a KoszulComplex, max_hodge: usize, stratify: bool) -> Result<Self> {
        let ring = kc.ring();
        if !ring.is_field() {
            return Err(Error::NeedsField { op: "spectral sequence pages" });
        }
        let n = kc.n();
        let strata = (0..=max_hodge)
            .into_par_iter()
            .map(|s| (0..=n).map(|t| block_strata(kc, s, t, stratify)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Grid { kc, ring, max_hodge, strata })
    }

    pub fn n(&self) -> usize {
        self.kc.n()
    }

    /// Every weight carried by some block of the window.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let all: Vec<&BlockStrata> = self.strata.iter().flatten().collect();
        crate::koszul::weight::weights_in(&all)
    }

    fn in_window(&self, s: isize, t: isize) -> bool {
        s >= 0 && t >= 0 && s as usize <= self.max_hodge && t as usize <= self.n()
    }

    pub fn dim(&self, s: isize, t: isize, w: &[i64]) -> usize {
        if self.in_window(s, t) {
            self.strata[s as usize][t as usize].size(w)
        } else {
            0
        }
    }

    /// Columns of `d` on the weight-`w` part of block `(s, t)`, in local
    /// coordinates of the target stratum. Empty when the target lies outside
    /// the window.
    pub fn columns(&self, d: Diff, s: usize, t: usize, w: &[i64]) -> Vec<Column> {
        let (ts, tt) = d.target(s, t);
        let members = self.strata[s][t].members(w);
        if !self.in_window(ts as isize, tt) {
            return vec![Vec::new(); members.len()];
        }
        let target = &self.strata[ts][tt as usize];
        let mut buf = Vec::new();
        members
            .iter()
            .map(|&c| {
                let mut v = self.kc.column(d, s, t, c, self.ring, &mut buf);
                for e in v.iter_mut() {
                    e.0 = target.local[e.0] as usize;
                }
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

fn field_rank(dim: usize, cols: Vec<Column>, ring: Ring) -> usize {
    rank_of_columns(dim, cols, ring).expect("field ring")
}

/// `dim H^t` of the `d₀` complex of one stratum at Hodge degree `s`, for
/// `t = 0..=n`.
///
/// Over Q the ranks are first computed modulo a large prime. A modular rank
/// never exceeds the rational one, and `rank d_t + rank d_{t−1} ≤ dim C^t`;
/// so wherever the modular cohomology vanishes, both adjacent modular ranks
/// are the rational ones. Only the remaining maps are eliminated over Q.
pub fn e1_column(grid: &Grid, s: usize, w: &[i64]) -> Vec<usize> {
    let n = grid.n();
    let dims: Vec<usize> = (0..=n).map(|t| grid.dim(s as isize, t as isize, w)).collect();
    let cols: Vec<Vec<Column>> = (0..n).map(|t| grid.columns(Diff::D0, s, t, w)).collect();
    let ranks: Vec<usize> = match grid.ring {
        Ring::Rationals => {
            let modp = Ring::PrimeField(CERT_PRIME);
            let rp: Vec<usize> = (0..n).map(|t| field_rank(dims[t + 1], cols[t].clone(), modp)).collect();
            let h = |t: usize| dims[t] - rp.get(t).copied().unwrap_or(0) - if t > 0 { rp[t - 1] } else { 0 };
            (0..n)
                .map(|t| {
                    let full = rp[t] == dims[t].min(dims[t + 1]);
                    if full || h(t) == 0 || h(t + 1) == 0 {
                        rp[t]
                    } else {
                        field_rank(dims[t + 1], cols[t].clone(), Ring::Rationals)
                    }
                })
                .collect()
        }
        ring => cols.iter().enumerate().map(|(t, c)| field_rank(dims[t + 1], c.clone(), ring)).collect(),
    };
    (0..=n)
        .map(|t| dims[t] - if t < n { ranks[t] } else { 0 } - if t > 0 { ranks[t - 1] } else { 0 })
        .collect()
}

/// Stacked-rank engine for one weight stratum, with column and rank caches.
pub struct StratumPages<'g, 'a> {
    grid: &'g Grid<'a>,
    w: Vec<i64>,
    cols: HashMap<(Diff, usize, usize), Vec<Column>>,
    z: HashMap<(usize, usize, usize), usize>,
}

type Cell = (isize, isize);

impl<'g, 'a> StratumPages<'g, 'a> {
    pub fn new(grid: &'g Grid<'a>, w: Vec<i64>) -> Self {
        StratumPages { grid, w, cols: HashMap::new(), z: HashMap::new() }
    }

    fn cols(&mut self, d: Diff, s: usize, t: usize) -> &[Column] {
        let (grid, w) = (self.grid, &self.w);
        self.cols.entry((d, s, t)).or_insert_with(|| grid.columns(d, s, t, w))
    }

    /// Rank of the total differential from the variable cells into the
    /// equation cells (components landing elsewhere are dropped).
    fn stacked_rank(&mut self, vars: &[Cell], eqs: &[Cell]) -> usize {
        let mut offsets = HashMap::new();
        let mut rows = 0;
        for &(s, t) in eqs {
            offsets.insert((s, t), rows);
            rows += self.grid.dim(s, t, &self.w);
        }
        if rows == 0 {
            return 0;
        }
        let mut stacked: Vec<Column> = Vec::new();
        for &(s, t) in vars {
            if self.grid.dim(s, t, &self.w) == 0 {
                continue;
            }
            let (su, tu) = (s as usize, t as usize);
            let o0 = offsets.get(&(s, t + 1)).copied();
            let o1 = offsets.get(&(s + 1, t - 1)).copied();
            let c0 = o0.map(|_| self.cols(Diff::D0, su, tu).to_vec());
            let c1 = o1.map(|_| self.cols(Diff::D1, su, tu).to_vec());
            let len = self.grid.dim(s, t, &self.w);
            for j in 0..len {
                let mut v: Column = Vec::new();
                if let (Some(o), Some(c)) = (o0, &c0) {
                    v.extend(c[j].iter().map(|&(i, x)| (i + o, x)));
                }
                if let (Some(o), Some(c)) = (o1, &c1) {
                    v.extend(c[j].iter().map(|&(i, x)| (i + o, x)));
                }
                if !v.is_empty() {
                    v.sort_unstable_by_key(|e| e.0);
                    stacked.push(v);
                }
            }
        }
        field_rank(rows, stacked, self.grid.ring)
    }

    /// `dim Z_r^{s,t}`; requires `s + r − 1 ≤ N`.
    pub fn z_dim(&mut self, r: usize, s: usize, t: usize) -> usize {
        if let Some(&v) = self.z.get(&(r, s, t)) {
            return v;
        }
        let (si, ti) = (s as isize, t as isize);
        let x0 = self.grid.dim(si, ti, &self.w);
        let v = if x0 == 0 {
            0
        } else {
            let vars: Vec<Cell> = (0..r as isize).map(|k| (si + k, ti - 2 * k)).collect();
            let eqs: Vec<Cell> = (0..r as isize)
                .map(|k| (si + k, ti - 2 * k + 1))
                .filter(|&(a, b)| self.grid.dim(a, b, &self.w) > 0)
                .collect();
            let full = self.stacked_rank(&vars, &eqs);
            let rest = self.stacked_rank(&vars[1..], &eqs);
            x0 + rest - full
        };
        self.z.insert((r, s, t), v);
        v
    }

    /// `dim B_r^{s,t}`.
    pub fn b_dim(&mut self, r: usize, s: usize, t: usize) -> usize {
        let (si, ti) = (s as isize, t as isize);
        if self.grid.dim(si, ti, &self.w) == 0 {
            return 0;
        }
        let lo = (si - r as isize + 1).max(0);
        let vars: Vec<Cell> = (lo..=si).map(|h| (h, ti - 1 + 2 * (si - h))).collect();
        let eqs: Vec<Cell> = (lo..si).map(|h| (h, ti + 2 * (si - h))).collect();
        let mut with_out = eqs.clone();
        with_out.push((si, ti));
        self.stacked_rank(&vars, &with_out) - self.stacked_rank(&vars, &eqs)
    }

    pub fn page_dim(&mut self, r: usize, s: usize, t: usize) -> usize {
        self.z_dim(r, s, t) - self.b_dim(r, s, t)
    }

    /// Rank of `d_r` leaving `(s, t)`; requires `s + r ≤ N`.
    pub fn d_rank(&mut self, r: usize, s: usize, t: usize) -> usize {
        self.z_dim(r, s, t) - self.z_dim(r + 1, s, t)
    }
}
