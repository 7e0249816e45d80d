//! External JSON format:
//! `{ "name", "dim", "ring": "Z"|"Q"|"Fp:<p>", "constants": [[i, j, k, c], …], "weights"?, "basis_names"? }`
//! with 1-based indices and `i < j`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub ring: Ring,
    pub constants: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
}

impl AlgebraJson {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let default_names: Vec<String> = (1..=l.dim()).map(|i| format!("x{i}")).collect();
        AlgebraJson {
            name: l.name().to_string(),
            dim: l.dim(),
            ring: l.ring(),
            constants: l
                .constants()
                .iter()
                .map(|&(i, j, k, c)| [i as i64 + 1, j as i64 + 1, k as i64 + 1, c])
                .collect(),
            weights: l.weights().map(<[_]>::to_vec),
            basis_names: (l.basis_names() != default_names.as_slice()).then(|| l.basis_names().to_vec()),
        }
    }

    pub fn into_algebra(self) -> Result<LieAlgebra> {
        let mut consts = Vec::with_capacity(self.constants.len());
        for [i, j, k, c] in self.constants {
            if i < 1 || j < 1 || k < 1 {
                return Err(Error::InvalidAlgebra(format!("indices are 1-based, got [{i}, {j}, {k}, {c}]")));
            }
            if i >= j {
                return Err(Error::InvalidAlgebra(format!("constants must have i < j, got [{i}, {j}, {k}, {c}]")));
            }
            consts.push((i as usize - 1, j as usize - 1, k as usize - 1, c));
        }
        LieAlgebra::new(self.name, self.dim, self.ring, consts, self.basis_names, self.weights)
    }
}

pub fn to_json(l: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(l)).expect("serialisable")
}

pub fn from_json(s: &str) -> Result<LieAlgebra> {
    let j: AlgebraJson = serde_json::from_str(s)?;
    j.into_algebra()
}

pub fn load(path: &Path) -> Result<LieAlgebra> {
    from_json(&std::fs::read_to_string(path)?)
}

/// Ring override: reinterpret the loaded constants over `ring`.
pub fn load_over(path: &Path, ring: Option<Ring>) -> Result<LieAlgebra> {
    let l = load(path)?;
    Ok(match ring {
        Some(r) if r != l.ring() => l.over(r),
        _ => l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;

    #[test]
    fn roundtrip_is_bit_exact() {
        for name in ["sl2", "sp4", "so4", "nonabelian2", "abelian2", "sl2+nonabelian2"] {
            let l = builtin(name, Ring::PrimeField(7)).unwrap();
            let s = to_json(&l);
            let back = from_json(&s).unwrap();
            assert_eq!(back, l, "{name}");
            assert_eq!(to_json(&back), s, "{name}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad = r#"{"name":"x","dim":2,"ring":"Q","constants":[[2,1,1,1]]}"#;
        assert!(from_json(bad).is_err());
        let bad = r#"{"name":"x","dim":2,"ring":"Fp:4","constants":[]}"#;
        assert!(from_json(bad).is_err());
        let bad = r#"{"name":"x","dim":2,"ring":"Q","constants":[[1,3,1,1]]}"#;
        assert!(from_json(bad).is_err());
    }

    #[test]
    fn ring_parses() {
        let ok = r#"{"name":"x","dim":2,"ring":"Fp:5","constants":[[1,2,2,-1]]}"#;
        let l = from_json(ok).unwrap();
        assert_eq!(l.ring(), Ring::PrimeField(5));
        assert_eq!(l.constants(), &[(0, 1, 1, 4)]);
    }
}
