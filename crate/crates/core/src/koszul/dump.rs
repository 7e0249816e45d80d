use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use crate::error::Result;
use crate::koszul::KoszulComplex;

/// Writes `d0_s{s}_t{t}.txt` and `d1_s{s}_t{t}.txt` for every block with
/// `s ≤ max_hodge`, one `row col value` line per entry, plus `basis_s{s}_t{t}.txt`
/// listing the basis in order. Returns the number of files written.
pub fn dump_blocks(kc: &KoszulComplex, max_hodge: usize, dir: &Path) -> Result<usize> {
    std::fs::create_dir_all(dir)?;
    let names = kc.algebra().basis_names().to_vec();
    let mut count = 0;
    for s in 0..=max_hodge {
        for t in 0..=kc.n() {
            for (tag, m) in [("d0", kc.d0(s, t)?), ("d1", kc.d1(s, t)?)] {
                let f = File::create(dir.join(format!("{tag}_s{s}_t{t}.txt")))?;
                m.write_triplets(BufWriter::new(f))?;
                count += 1;
            }
            let mut text = String::new();
            for (i, b) in kc.block_basis(s, t)?.iter().enumerate() {
                text.push_str(&format!("{i} {}\n", b.render(&names)));
            }
            std::fs::write(dir.join(format!("basis_s{s}_t{t}.txt")), text)?;
            count += 1;
        }
    }
    Ok(count)
}
