use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Ring;

/// A Lie algebra given by structure constants `[x_i, x_j] = Σ_k c_{ij}^k x_k`.
///
/// Only `i < j` is stored; the other half follows from antisymmetry.
/// Indices are 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    ring: Ring,
    /// `(i, j, k, c)` with `i < j`, sorted, `c` nonzero and reduced in `ring`.
    constants: Vec<(usize, usize, usize, i64)>,
    basis_names: Vec<String>,
    weights: Option<Vec<Vec<i64>>>,
}

/// Outcome of [`LieAlgebra::jacobi_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum JacobiVerdict {
    Pass,
    /// The Jacobi sum of this basis triple is nonzero.
    Violation { triple: [usize; 3], names: [String; 3] },
    /// `c_{ij}^k ≠ 0` although `weight(i) + weight(j) ≠ weight(k)`.
    WeightMismatch { triple: [usize; 3], names: [String; 3] },
}

impl JacobiVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, JacobiVerdict::Pass)
    }
}

impl fmt::Display for JacobiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobiVerdict::Pass => write!(f, "Jacobi identity holds"),
            JacobiVerdict::Violation { names, .. } => {
                write!(f, "Jacobi identity fails on ({}, {}, {})", names[0], names[1], names[2])
            }
            JacobiVerdict::WeightMismatch { names, .. } => write!(
                f,
                "bracket [{}, {}] has a {} component but weights do not add up",
                names[0], names[1], names[2]
            ),
        }
    }
}

impl LieAlgebra {
    /// Validating constructor. Constants may be listed with `i > j` (they are
    /// flipped with a sign); duplicates are summed; entries are reduced in
    /// `ring`. Diagonal brackets `[x_i, x_i]` must vanish.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        ring: Ring,
        constants: impl IntoIterator<Item = (usize, usize, usize, i64)>,
        basis_names: Option<Vec<String>>,
        weights: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let mut raw = Vec::new();
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "constant ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if i == j {
                if ring.reduce(c) != 0 {
                    return Err(Error::InvalidAlgebra(format!("[x_{i}, x_{i}] must vanish")));
                }
                continue;
            }
            if i < j {
                raw.push((i, j, k, c as i128));
            } else {
                raw.push((j, i, k, -(c as i128)));
            }
        }
        raw.sort_unstable_by_key(|&(i, j, k, _)| (i, j, k));
        let mut consts = Vec::with_capacity(raw.len());
        let mut idx = 0;
        while idx < raw.len() {
            let (i, j, k, mut c) = raw[idx];
            idx += 1;
            while idx < raw.len() && (raw[idx].0, raw[idx].1, raw[idx].2) == (i, j, k) {
                c += raw[idx].3;
                idx += 1;
            }
            let c = ring.reduce_wide(c);
            if c != 0 {
                consts.push((i, j, k, c));
            }
        }
        let basis_names = match basis_names {
            Some(n) if n.len() != dim => {
                return Err(Error::InvalidAlgebra(format!("{} basis names for dimension {dim}", n.len())))
            }
            Some(n) => n,
            None => (1..=dim).map(|i| format!("x{i}")).collect(),
        };
        if let Some(w) = &weights {
            if w.len() != dim {
                return Err(Error::InvalidAlgebra(format!("{} weights for dimension {dim}", w.len())));
            }
            if let Some(first) = w.first() {
                if w.iter().any(|v| v.len() != first.len()) {
                    return Err(Error::InvalidAlgebra("weight vectors of unequal length".into()));
                }
            }
        }
        Ok(LieAlgebra { name: name.into(), dim, ring, constants: consts, basis_names, weights })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn constants(&self) -> &[(usize, usize, usize, i64)] {
        &self.constants
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn weights(&self) -> Option<&[Vec<i64>]> {
        self.weights.as_deref()
    }

    /// Length of the weight vectors (0 without weights).
    pub fn weight_rank(&self) -> usize {
        self.weights.as_ref().and_then(|w| w.first()).map_or(0, Vec::len)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::InvalidAlgebra(format!("{} basis names for dimension {}", names.len(), self.dim)));
        }
        self.basis_names = names;
        Ok(self)
    }

    pub fn with_weights(mut self, weights: Option<Vec<Vec<i64>>>) -> Result<Self> {
        if let Some(w) = &weights {
            if w.len() != self.dim {
                return Err(Error::InvalidAlgebra(format!("{} weights for dimension {}", w.len(), self.dim)));
            }
        }
        self.weights = weights;
        Ok(self)
    }

    /// The same constants interpreted over another ring (extension of
    /// scalars; over `F_p` this reduces mod p).
    pub fn over(&self, ring: Ring) -> LieAlgebra {
        let mut consts = Vec::with_capacity(self.constants.len());
        for &(i, j, k, c) in &self.constants {
            let c = ring.reduce(c);
            if c != 0 {
                consts.push((i, j, k, c));
            }
        }
        LieAlgebra { ring, constants: consts, ..self.clone() }
    }

    /// `[x_i, x_j]` as a sparse vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let start = self.constants.partition_point(|&(x, y, _, _)| (x, y) < (a, b));
        self.constants[start..]
            .iter()
            .take_while(|&&(x, y, _, _)| (x, y) == (a, b))
            .map(|&(_, _, k, c)| (k, self.ring.reduce(sign * c)))
            .collect()
    }

    /// Dense tensor `c[i][j][k]` over both orderings of `(i, j)`.
    pub fn structure_tensor(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.dim;
        let mut c = vec![vec![vec![0; n]; n]; n];
        for &(i, j, k, v) in &self.constants {
            c[i][j][k] = v;
            c[j][i][k] = self.ring.reduce(-v);
        }
        c
    }

    /// Bracket of two arbitrary elements given by coordinate vectors.
    fn bracket_vec(&self, tensor: &[Vec<Vec<i64>>], a: &[i128], b: &[i128]) -> Vec<i128> {
        let n = self.dim;
        let mut out = vec![0i128; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += a[i] * b[j] * tensor[i][j][k] as i128;
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on every basis triple and, when weights are
    /// present, that every bracket respects them.
    pub fn jacobi_check(&self) -> JacobiVerdict {
        let n = self.dim;
        let tensor = self.structure_tensor();
        let names = |t: [usize; 3]| t.map(|i| self.basis_names[i].clone());
        let unit = |i: usize| {
            let mut v = vec![0i128; n];
            v[i] = 1;
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let t1 = self.bracket_vec(&tensor, &self.bracket_vec(&tensor, &x, &y), &z);
                    let t2 = self.bracket_vec(&tensor, &self.bracket_vec(&tensor, &y, &z), &x);
                    let t3 = self.bracket_vec(&tensor, &self.bracket_vec(&tensor, &z, &x), &y);
                    let nonzero = (0..n).any(|m| self.ring.reduce_wide(t1[m] + t2[m] + t3[m]) != 0);
                    if nonzero {
                        let triple = [i, j, k];
                        return JacobiVerdict::Violation { triple, names: names(triple) };
                    }
                }
            }
        }
        if let Some(w) = &self.weights {
            for &(i, j, k, _) in &self.constants {
                let ok = (0..w[i].len()).all(|a| w[i][a] + w[j][a] == w[k][a]);
                if !ok {
                    let triple = [i, j, k];
                    return JacobiVerdict::WeightMismatch { triple, names: names(triple) };
                }
            }
        }
        JacobiVerdict::Pass
    }

    /// Direct sum; constants vanish across summands, weights are padded with
    /// zeros so both summands share one lattice.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.ring != other.ring {
            return Err(Error::InvalidAlgebra(format!(
                "cannot sum algebras over {} and {}",
                self.ring, other.ring
            )));
        }
        let n = self.dim;
        let consts = self
            .constants
            .iter()
            .copied()
            .chain(other.constants.iter().map(|&(i, j, k, c)| (i + n, j + n, k + n, c)));
        let names: Vec<String> = self.basis_names.iter().chain(&other.basis_names).cloned().collect();
        let weights = match (&self.weights, &other.weights) {
            (None, None) => None,
            _ => {
                let (ra, rb) = (self.weight_rank(), other.weight_rank());
                let mut w = Vec::with_capacity(n + other.dim);
                for i in 0..n {
                    let mut v = self.weights.as_ref().map_or(vec![0; ra], |w| w[i].clone());
                    v.extend(std::iter::repeat(0).take(rb));
                    w.push(v);
                }
                for i in 0..other.dim {
                    let mut v = vec![0; ra];
                    v.extend(other.weights.as_ref().map_or(vec![0; rb], |w| w[i].clone()));
                    w.push(v);
                }
                Some(w)
            }
        };
        // disambiguate clashing names
        let names = if has_duplicates(&names) {
            names
                .iter()
                .enumerate()
                .map(|(i, s)| if i < n { format!("{s}_1") } else { format!("{s}_2") })
                .collect()
        } else {
            names
        };
        LieAlgebra::new(
            format!("{}+{}", self.name, other.name),
            n + other.dim,
            self.ring,
            consts,
            Some(names),
            weights,
        )
    }
}

fn has_duplicates(v: &[String]) -> bool {
    let mut s: Vec<&String> = v.iter().collect();
    s.sort();
    s.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_with_he(he: i64) -> LieAlgebra {
        // basis (h, e, f)
        LieAlgebra::new(
            "sl2",
            3,
            Ring::Integers,
            [(0, 1, 1, he), (0, 2, 2, -2), (1, 2, 0, 1)],
            Some(vec!["h".into(), "e".into(), "f".into()]),
            None,
        )
        .unwrap()
    }

    #[test]
    fn jacobi_detects_violation() {
        assert!(sl2_with_he(2).jacobi_check().is_pass());
        match sl2_with_he(3).jacobi_check() {
            JacobiVerdict::Violation { names, .. } => assert_eq!(names, ["h", "e", "f"].map(String::from)),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn antisymmetry_and_normalisation() {
        let a = LieAlgebra::new("t", 2, Ring::Integers, [(1, 0, 1, 1)], None, None).unwrap();
        assert_eq!(a.constants(), &[(0, 1, 1, -1)]);
        assert_eq!(a.bracket(1, 0), vec![(1, 1)]);
        assert!(LieAlgebra::new("t", 2, Ring::Integers, [(0, 0, 1, 1)], None, None).is_err());
        assert!(LieAlgebra::new("t", 2, Ring::Integers, [(0, 2, 1, 1)], None, None).is_err());
    }

    #[test]
    fn reduction_mod_p() {
        let a = sl2_with_he(2).over(Ring::PrimeField(2));
        assert_eq!(a.constants(), &[(1, 2, 0, 1)]);
        assert!(a.jacobi_check().is_pass());
    }
}
