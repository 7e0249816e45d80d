use std::collections::BTreeMap;

use crate::error::Result;
use crate::koszul::KoszulComplex;

/// Partition of one block's basis by weight. Algebras without weights get a
/// single class keyed by the empty vector.
#[derive(Debug, Clone)]
pub struct BlockStrata {
    pub classes: BTreeMap<Vec<i64>, Vec<usize>>,
    /// Position of each column inside its class.
    pub local: Vec<u32>,
}

impl BlockStrata {
    pub fn members(&self, w: &[i64]) -> &[usize] {
        self.classes.get(w).map_or(&[], Vec::as_slice)
    }

    pub fn size(&self, w: &[i64]) -> usize {
        self.members(w).len()
    }
}

/// Weight partition of block `(s, t)`; `stratify = false` yields one class.
pub fn block_strata(kc: &KoszulComplex, s: usize, t: usize, stratify: bool) -> Result<BlockStrata> {
    let dim = kc.block_dim(s, t);
    let mut classes: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    let mut local = vec![0u32; dim];
    if !stratify || kc.algebra().weights().is_none() {
        if dim > 0 {
            classes.insert(Vec::new(), (0..dim).collect());
        }
        for (i, l) in local.iter_mut().enumerate() {
            *l = i as u32;
        }
        return Ok(BlockStrata { classes, local });
    }
    let monos = kc.monos(s);
    let mono_w: Vec<Vec<i64>> = monos.iter().map(|e| kc.weight_of(0, e)).collect::<Result<_>>()?;
    let nm = monos.len();
    for (si, &mask) in kc.tables().subsets(t).iter().enumerate() {
        let mw = kc.weight_of(mask, &[0; crate::koszul::MAX_DIM])?;
        for (mi, w) in mono_w.iter().enumerate() {
            let key: Vec<i64> = mw.iter().zip(w).map(|(a, b)| a + b).collect();
            let col = si * nm + mi;
            let list = classes.entry(key).or_default();
            local[col] = list.len() as u32;
            list.push(col);
        }
    }
    Ok(BlockStrata { classes, local })
}

/// All weights occurring in any of the given blocks.
pub fn weights_in(strata: &[&BlockStrata]) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = strata.iter().flat_map(|s| s.classes.keys().cloned()).collect();
    all.sort();
    all.dedup();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::linalg::Ring;

    #[test]
    fn sl2_weights() {
        let kc = KoszulComplex::new(&builtin("sl2", Ring::Integers).unwrap()).unwrap();
        // κ = y₀² + y₋y₊ has weight 0 termwise
        assert_eq!(kc.weight_of(0, &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap(), vec![0]);
        assert_eq!(kc.weight_of(0, &[0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap(), vec![0]);
        let mut e = [0u8; 16];
        e[2] = 5;
        assert_eq!(kc.weight_of(0, &e).unwrap(), vec![10]);
        let st = block_strata(&kc, 2, 1, true).unwrap();
        let total: usize = st.classes.values().map(Vec::len).sum();
        assert_eq!(total, kc.block_dim(2, 1));
    }

    #[test]
    fn missing_weights_error() {
        let kc = KoszulComplex::new(&builtin("so3", Ring::Integers).unwrap()).unwrap();
        assert!(kc.weight_of(0, &[0; 16]).is_err());
        assert_eq!(block_strata(&kc, 1, 1, true).unwrap().classes.len(), 1);
    }
}
