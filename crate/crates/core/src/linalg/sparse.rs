use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::linalg::Ring;

/// Sparse matrix with small integer entries, stored as sorted `(row, col, value)`
/// triplets. The ring the entries live in is carried by the caller; over `F_p`
/// entries are kept as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    /// Validating constructor: rejects duplicates, stored zeros and
    /// out-of-range indices.
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i64)>) -> Result<Self> {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::InvalidMatrix(format!(
                    "duplicate entry at ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(r, c, v) in &entries {
            if r >= rows || c >= cols {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            if v == 0 {
                return Err(Error::InvalidMatrix(format!("stored zero at ({r}, {c})")));
            }
        }
        Ok(SparseMatrix { rows, cols, entries })
    }

    /// Sums duplicate positions, reduces in `ring` and drops zeros.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
        ring: Ring,
    ) -> Self {
        let mut raw: Vec<(usize, usize, i128)> = triplets
            .into_iter()
            .map(|(r, c, v)| {
                assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
                (r, c, v as i128)
            })
            .collect();
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries = Vec::with_capacity(raw.len());
        let mut i = 0;
        while i < raw.len() {
            let (r, c, mut acc) = raw[i];
            i += 1;
            while i < raw.len() && raw[i].0 == r && raw[i].1 == c {
                acc += raw[i].2;
                i += 1;
            }
            let v = ring.reduce_wide(acc);
            if v != 0 {
                entries.push((r, c, v));
            }
        }
        SparseMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, entries: (0..n).map(|i| (i, i, 1)).collect() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    entries.push((r, c, v));
                }
            }
        }
        SparseMatrix { rows: nrows, cols: ncols, entries }
    }

    /// Builds a matrix from its columns, each a list of `(row, value)`.
    pub fn from_columns(rows: usize, columns: &[Vec<(usize, i64)>], ring: Ring) -> Self {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)));
        SparseMatrix::from_triplets(rows, columns.len(), trip, ring)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by_key(&(r, c), |&(a, b, _)| (a, b))
            .map_or(0, |i| self.entries[i].2)
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn row_vectors(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r].push((c, v));
        }
        out
    }

    pub fn column_vectors(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            out[c].push((r, v));
        }
        out
    }

    /// Matrix product `self · rhs` computed in `ring`.
    pub fn mul(&self, rhs: &SparseMatrix, ring: Ring) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let left_cols = self.column_vectors();
        let mut acc = vec![0i128; self.rows];
        let mut touched = Vec::new();
        let mut entries = Vec::new();
        for (c, col) in rhs.column_vectors().into_iter().enumerate() {
            for (k, b) in col {
                for &(r, a) in &left_cols[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] += a as i128 * b as i128;
                    if acc[r] == 0 {
                        // keep r in `touched`; it is filtered below
                    }
                }
                if let Ring::PrimeField(p) = ring {
                    for &r in &touched {
                        acc[r] %= p as i128;
                    }
                }
            }
            for &r in &touched {
                let v = ring.reduce_wide(acc[r]);
                if v != 0 {
                    entries.push((r, c, v));
                }
                acc[r] = 0;
            }
            touched.clear();
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        entries.dedup_by_key(|e| (e.0, e.1));
        Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, entries })
    }

    pub fn add(&self, rhs: &SparseMatrix, ring: Ring) -> Result<SparseMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(rhs.entries.iter()).copied(),
            ring,
        ))
    }

    pub fn scale(&self, k: i64, ring: Ring) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().map(|&(r, c, v)| (r, c, v * k)),
            ring,
        )
    }

    /// Reinterprets the entries in `ring` (e.g. reduction mod p).
    pub fn reduce(&self, ring: Ring) -> SparseMatrix {
        SparseMatrix::from_triplets(self.rows, self.cols, self.entries.iter().copied(), ring)
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, v: &[(usize, i64)], ring: Ring) -> Vec<(usize, i64)> {
        let m = SparseMatrix::from_columns(self.cols, &[v.to_vec()], ring);
        let prod = self.mul(&m, ring).expect("shape checked by from_columns");
        prod.entries.iter().map(|&(r, _, v)| (r, v)).collect()
    }

    pub fn select_rows(&self, keep: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.rows];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .filter(|e| map[e.0] != usize::MAX)
            .map(|&(r, c, v)| (map[r], c, v))
            .collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix { rows: keep.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, keep: &[usize]) -> SparseMatrix {
        self.transpose().select_rows(keep).transpose()
    }

    /// Applies row and column permutations: entry `(r, c)` moves to
    /// `(row_perm[r], col_perm[c])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|&(r, c, v)| (row_perm[r], col_perm[c], v))
            .collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Block matrix assembled from `(row_offset, col_offset, block)` pieces.
    pub fn assemble(rows: usize, cols: usize, blocks: &[(usize, usize, &SparseMatrix)], ring: Ring) -> SparseMatrix {
        let trip = blocks.iter().flat_map(|&(ro, co, b)| {
            assert!(ro + b.rows <= rows && co + b.cols <= cols, "block does not fit");
            b.entries.iter().map(move |&(r, c, v)| (r + ro, c + co, v))
        });
        SparseMatrix::from_triplets(rows, cols, trip, ring)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    /// Writes one `row col value` line per stored entry (0-based indices),
    /// preceded by a `% rows cols nnz` header.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "% {} {} {}", self.rows, self.cols, self.entries.len())?;
        for &(r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_rejects_malformed() {
        assert!(SparseMatrix::new(2, 2, vec![(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(SparseMatrix::new(2, 2, vec![(0, 0, 0)]).is_err());
        assert!(SparseMatrix::new(2, 2, vec![(2, 0, 1)]).is_err());
        assert!(SparseMatrix::new(2, 2, vec![(1, 1, 3), (0, 1, 1)]).is_ok());
    }

    #[test]
    fn triplets_sum_and_reduce() {
        let m = SparseMatrix::from_triplets(2, 2, [(0, 0, 3), (0, 0, 2), (1, 1, 7)], Ring::PrimeField(5));
        assert_eq!(m.entries(), &[(1, 1, 2)]);
    }

    #[test]
    fn product_matches_dense() {
        let a = SparseMatrix::from_dense(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = SparseMatrix::from_dense(&[vec![2, 0], vec![1, 1], vec![0, 4]]);
        let ab = a.mul(&b, Ring::Integers).unwrap();
        assert_eq!(ab.to_dense(), vec![vec![4, 2], vec![-1, 11]]);
        let ab5 = a.mul(&b, Ring::PrimeField(5)).unwrap();
        assert_eq!(ab5.to_dense(), vec![vec![4, 2], vec![4, 1]]);
        assert!(a.mul(&a, Ring::Integers).is_err());
    }

    #[test]
    fn product_cancellation_drops_entry() {
        let a = SparseMatrix::from_dense(&[vec![1, 1]]);
        let b = SparseMatrix::from_dense(&[vec![1], vec![-1]]);
        assert!(a.mul(&b, Ring::Rationals).unwrap().is_zero());
    }

    #[test]
    fn triplet_dump() {
        let m = SparseMatrix::from_dense(&[vec![0, 5], vec![-2, 0]]);
        let mut buf = Vec::new();
        m.write_triplets(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "% 2 2 2\n0 1 5\n1 0 -2\n");
    }
}
