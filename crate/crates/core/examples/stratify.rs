//! The weight decomposition of E₁. Over Q only weight zero survives; over
//! F_p everything lives in weights divisible by p.
//!
//!     cargo run --release --example stratify -- sl2 Fp:5 6

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::spectral::stratify;

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "sl2".into());
    let ring: Ring = args.next().unwrap_or_else(|| "Fp:5".into()).parse()?;
    let n: usize = args.next().map_or(6, |s| s.parse().expect("Hodge bound"));

    let st = stratify(&KoszulComplex::new(&builtin(&name, ring)?)?, n)?;
    print!("{}", st.render());
    println!("support: {:?}", st.support());
    assert_eq!(st.sum(), st.total);
    Ok(())
}
