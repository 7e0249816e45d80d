//! The four-term d₁ sequence of sl2 over F_p,
//! E₁^{s,3} → E₁^{s+1,2} → E₁^{s+2,1} → E₁^{s+3,0},
//! injective on the left, surjective on the right, exact in the middle.
//!
//!     cargo run --release --example exactness -- 5 10

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::spectral::{euler_poincare_check, exact_sequence};

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map_or(5, |s| s.parse().expect("prime"));
    let top: usize = args.next().map_or(10, |s| s.parse().expect("Hodge bound"));

    let kc = KoszulComplex::new(&builtin("sl2", Ring::prime_field(p)?)?)?;
    for s in p as usize - 2..=top.saturating_sub(3) {
        let c = exact_sequence(&kc, s)?;
        println!("s = {s:2}: dims {:?}, d₁ ranks {:?}, exact: {}", c.dims, c.ranks, c.exact());
    }
    for s in 0..=top {
        let e = euler_poincare_check(&kc, s)?;
        println!("χ(E₁^{{{s},·}}) = {}", e.sum);
    }
    Ok(())
}
