//! Representatives of higher differentials by the zig-zag: for sl2 over Q,
//! d₂ sends u = x₀x₋x₊ to a nonzero multiple of the Casimir.
//!
//!     cargo run --release --example zigzag

use lie_sseq::koszul::{Cochain, KoszulComplex};
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::spectral::zigzag;

fn main() -> lie_sseq::Result<()> {
    let alg = builtin("sl2", Ring::Rationals)?;
    let kc = KoszulComplex::new(&alg)?;
    let u = Cochain::x(3, 0).mul(&Cochain::x(3, 1)).mul(&Cochain::x(3, 2)).in_ring(Ring::Rationals);
    let names: Vec<String> = alg.basis_names().to_vec();
    println!("u = {}", u.render(&names));
    match zigzag(&kc, &u, 2)? {
        Some(img) => println!("d₂ u ~ {}", img.render(&names)),
        None => println!("zig-zag stopped"),
    }
    Ok(())
}
