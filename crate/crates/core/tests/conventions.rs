//! The generator formulas quoted in the README.

use lie_sseq::koszul::{Cochain, KoszulComplex};
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;

const H: usize = 0;
const E: usize = 1;
const F: usize = 2;

fn x(i: usize) -> Cochain {
    Cochain::x(3, i).in_ring(Ring::Integers)
}

fn y(i: usize) -> Cochain {
    Cochain::y(3, i).in_ring(Ring::Integers)
}

#[test]
fn sl2_generators() {
    let kc = KoszulComplex::new(&builtin("sl2", Ring::Integers).unwrap()).unwrap();
    // x₀ = x_h, x₋ = x_e, x₊ = x_f
    assert_eq!(x(H).d0(&kc), x(F).mul(&x(E)));
    assert_eq!(y(H).d0(&kc), y(E).mul(&x(F)).sub(&y(F).mul(&x(E))));
    assert_eq!(y(F).d0(&kc), y(F).mul(&x(H)).scale(2).sub(&y(H).mul(&x(F)).scale(2)));
    assert_eq!(x(E).d1(&kc), y(E));
    assert!(y(H).mul(&y(H)).add(&y(E).mul(&y(F))).d0(&kc).is_zero());
}
