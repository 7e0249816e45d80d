//! E₁ of a direct sum is the bigraded convolution of the factors' pages.
//!
//!     cargo run --release --example tensor -- abelian1 nonabelian2

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::spectral::{compute_e1, convolve};

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = args.next().unwrap_or_else(|| "abelian1".into());
    let b = args.next().unwrap_or_else(|| "nonabelian2".into());
    let n = 5;
    let e1 = |name: &str| -> lie_sseq::Result<_> { compute_e1(&KoszulComplex::new(&builtin(name, Ring::Rationals)?)?, n) };

    let product = convolve(&e1(&a)?, &e1(&b)?);
    let sum = e1(&format!("{a}+{b}"))?;
    print!("{}", sum.render_grid());
    println!("equals the convolution: {}", product == sum);
    Ok(())
}
