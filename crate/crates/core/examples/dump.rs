//! Writes the d₀ and d₁ blocks as sparse `row col value` triples, with the
//! basis ordering, for use in other systems.
//!
//!     cargo run --release --example dump -- sl2 Z 3 /tmp/blocks

use std::path::PathBuf;

use lie_sseq::koszul::dump::dump_blocks;
use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "sl2".into());
    let ring: Ring = args.next().unwrap_or_else(|| "Z".into()).parse()?;
    let n: usize = args.next().map_or(3, |s| s.parse().expect("Hodge bound"));
    let dir = args.next().map_or_else(|| std::env::temp_dir().join("lie-sseq-blocks"), PathBuf::from);

    std::fs::create_dir_all(&dir)?;
    let files = dump_blocks(&KoszulComplex::new(&builtin(&name, ring)?)?, n, &dir)?;
    println!("{files} files in {}", dir.display());
    Ok(())
}
