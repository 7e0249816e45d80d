//! Prints the E₁ page of a built-in algebra as a grid.
//!
//!     cargo run --release --example e1_grid -- sl3 Q 6

use std::time::Instant;

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::spectral::compute_e1;

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "sl2".into());
    let ring: Ring = args.next().unwrap_or_else(|| "Q".into()).parse()?;
    let max_hodge: usize = args.next().map_or(6, |s| s.parse().expect("Hodge bound"));

    let kc = KoszulComplex::new(&builtin(&name, ring)?)?;
    let start = Instant::now();
    let e1 = compute_e1(&kc, max_hodge)?;
    println!("{name} over {ring}, s ≤ {max_hodge}");
    print!("{}", e1.render_grid());
    println!("({:.2?})", start.elapsed());
    Ok(())
}
