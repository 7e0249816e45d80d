//! Every page of the sequence inside a Hodge window, with the ranks of the
//! higher differentials. For sl2 over Q the Casimir κ is hit by u on E₂ and
//! E₃ is already the cohomology of a point.
//!
//!     cargo run --release --example pages -- sl2 Q 10

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::spectral::compute_pages;

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "sl2".into());
    let ring: Ring = args.next().unwrap_or_else(|| "Q".into()).parse()?;
    let n: usize = args.next().map_or(10, |s| s.parse().expect("Hodge bound"));

    let rep = compute_pages(&KoszulComplex::new(&builtin(&name, ring)?)?, n, false)?;
    for page in &rep.pages {
        println!("{}", page.render_grid());
    }
    for d in rep.differentials.iter().filter(|d| d.r > 1) {
        println!("d_{} : ({},{}) -> ({},{})  rank {}", d.r, d.s, d.t, d.s + d.r, d.t + 1 - 2 * d.r, d.rank);
    }
    // '?' marks cells the window can no longer see
    println!("last page is a point: {}", rep.last().is_point());
    Ok(())
}
