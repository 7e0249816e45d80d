use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Dimensions of one page inside a Hodge window. Only cells in the valid
/// region (`s ≤ N − r + 1`) are stored; the others are unknown, not zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageReport {
    pub r: usize,
    pub n: usize,
    pub max_hodge: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

impl PageReport {
    pub fn new(r: usize, n: usize, max_hodge: usize) -> Self {
        PageReport { r, n, max_hodge, entries: BTreeMap::new() }
    }

    /// Largest Hodge degree whose entries are unaffected by truncation.
    pub fn valid_max_s(&self) -> Option<usize> {
        (self.max_hodge + 1).checked_sub(self.r)
    }

    pub fn is_valid(&self, s: usize, t: usize) -> bool {
        t <= self.n && self.valid_max_s().is_some_and(|m| s <= m)
    }

    pub fn set(&mut self, s: usize, t: usize, dim: usize) {
        debug_assert!(self.is_valid(s, t));
        if dim == 0 {
            self.entries.remove(&(s, t));
        } else {
            self.entries.insert((s, t), dim);
        }
    }

    pub fn add(&mut self, s: usize, t: usize, dim: usize) {
        if dim > 0 {
            *self.entries.entry((s, t)).or_insert(0) += dim;
        }
    }

    /// Dimension at `(s, t)`; `None` outside the valid region.
    pub fn get(&self, s: usize, t: usize) -> Option<usize> {
        if t > self.n {
            return Some(0);
        }
        self.is_valid(s, t).then(|| self.entries.get(&(s, t)).copied().unwrap_or(0))
    }

    /// Dimension at `(s, t)`, panicking outside the valid region.
    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.get(s, t).unwrap_or_else(|| panic!("E_{}^{{{s},{t}}} lies outside the valid region", self.r))
    }

    /// `(t = 0..=n)` dimensions at Hodge degree `s`.
    pub fn column(&self, s: usize) -> Vec<usize> {
        (0..=self.n).map(|t| self.dim(s, t)).collect()
    }

    pub fn valid_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let top = self.valid_max_s().map_or(0, |m| m + 1);
        (0..top).flat_map(move |s| (0..=self.n).map(move |t| (s, t)))
    }

    /// Nonzero valid entries `(s, t, dim)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().filter(|e| *e.1 > 0).map(|(&(s, t), &d)| (s, t, d))
    }

    /// True if the valid region holds exactly the cohomology of a point.
    pub fn is_point(&self) -> bool {
        self.valid_cells().all(|(s, t)| self.dim(s, t) == usize::from(s == 0 && t == 0))
    }

    pub fn euler_characteristic(&self, s: usize) -> i64 {
        self.column(s).iter().enumerate().map(|(t, &d)| if t % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// ASCII grid: rows `t = n..0`, columns `s = 0..N`; `.` is zero and `?`
    /// marks cells outside the valid region.
    pub fn render_grid(&self) -> String {
        let cell = |s: usize, t: usize| match self.get(s, t) {
            None => "?".to_string(),
            Some(0) => ".".to_string(),
            Some(d) => d.to_string(),
        };
        let width = (0..=self.max_hodge)
            .flat_map(|s| (0..=self.n).map(move |t| (s, t)))
            .map(|(s, t)| cell(s, t).len())
            .chain([self.max_hodge.to_string().len()])
            .max()
            .unwrap_or(1);
        let label = self.n.to_string().len().max(1);
        let mut out = format!("E_{}\n", self.r);
        for t in (0..=self.n).rev() {
            let _ = write!(out, "{t:>label$} |");
            for s in 0..=self.max_hodge {
                let _ = write!(out, " {:>width$}", cell(s, t));
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>label$} +", "");
        out.push_str(&"-".repeat((width + 1) * (self.max_hodge + 1)));
        out.push('\n');
        let _ = write!(out, "{:>label$}  ", "");
        for s in 0..=self.max_hodge {
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
        out
    }

    /// CSV rows `r,s,t,dim` for the valid region.
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for (s, t) in self.valid_cells() {
            let _ = writeln!(out, "{},{s},{t},{}", self.r, self.dim(s, t));
        }
        out
    }
}

impl Serialize for PageReport {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<[usize; 3]> = self.valid_cells().map(|(s, t)| [s, t, self.dim(s, t)]).collect();
        let valid: Vec<[usize; 2]> = self.valid_cells().map(|(s, t)| [s, t]).collect();
        let mut st = ser.serialize_struct("PageReport", 3)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("valid", &valid)?;
        st.end()
    }
}

/// Rank of `d_r: E_r^{s,t} → E_r^{s+r, t+1−2r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DifferentialRank {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub rank: usize,
}

/// Key of a weight stratum in reports, e.g. `"0"` or `"2,-1"`.
pub fn weight_key(w: &[i64]) -> String {
    w.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub algebra: String,
    pub ring: String,
    #[serde(rename = "N")]
    pub max_hodge: usize,
    pub pages: Vec<PageReport>,
    /// Nonzero ranks of the higher differentials inside the valid region.
    pub differentials: Vec<DifferentialRank>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strata: Option<BTreeMap<String, Vec<PageReport>>>,
}

impl SpectralReport {
    pub fn page(&self, r: usize) -> Option<&PageReport> {
        self.pages.iter().find(|p| p.r == r)
    }

    pub fn last(&self) -> &PageReport {
        self.pages.last().expect("at least E_1")
    }

    pub fn d_rank(&self, r: usize, s: usize, t: usize) -> usize {
        self.differentials.iter().find(|d| (d.r, d.s, d.t) == (r, s, t)).map_or(0, |d| d.rank)
    }
}

/// Page 1 split by weight.
#[derive(Debug, Clone, Serialize)]
pub struct StratifiedReport {
    pub algebra: String,
    pub ring: String,
    #[serde(rename = "N")]
    pub max_hodge: usize,
    pub total: PageReport,
    #[serde(serialize_with = "strata_by_key")]
    pub strata: BTreeMap<Vec<i64>, PageReport>,
}

fn strata_by_key<S: Serializer>(m: &BTreeMap<Vec<i64>, PageReport>, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_map(m.iter().map(|(w, p)| (weight_key(w), p)))
}

impl StratifiedReport {
    /// Weights whose stratum has a nonzero entry.
    pub fn support(&self) -> Vec<&Vec<i64>> {
        self.strata.iter().filter(|(_, p)| p.nonzero().next().is_some()).map(|(w, _)| w).collect()
    }

    /// Entrywise sum of the strata.
    pub fn sum(&self) -> PageReport {
        let mut out = PageReport::new(self.total.r, self.total.n, self.total.max_hodge);
        for p in self.strata.values() {
            for (s, t, d) in p.nonzero() {
                out.add(s, t, d);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (w, p) in &self.strata {
            if p.nonzero().next().is_none() {
                continue;
            }
            let _ = writeln!(out, "weight ({})", weight_key(w));
            out.push_str(&p.render_grid());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_marks_truncation() {
        let mut p = PageReport::new(2, 1, 2);
        p.set(0, 0, 1);
        p.set(1, 1, 12);
        let g = p.render_grid();
        assert!(g.contains("?"));
        assert!(g.lines().nth(1).unwrap().contains("12"));
        assert_eq!(p.get(2, 0), None);
        assert_eq!(p.get(1, 0), Some(0));
        assert!(!p.is_point());
    }

    #[test]
    fn json_lists_valid_cells() {
        let mut p = PageReport::new(1, 1, 1);
        p.set(0, 0, 1);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        assert_eq!(v["entries"][0], serde_json::json!([0, 0, 1]));
    }
}
