//! The de Rham model of sl2 over F_p: the Witt operators β₀, β₋, β₊ act on
//! F_p[y₀, y₋, y₊], and grad, curl, div built from them reproduce d₀ on the
//! Koszul complex.
//!
//!     cargo run --release --example derham -- 5

use lie_sseq::sl2::poly::{MINUS, PLUS, ZERO};
use lie_sseq::sl2::{beta_ops, koszul_agreement, solve_div, ScalarPoly};

fn main() -> lie_sseq::Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(5, |s| s.parse().expect("odd prime"));
    let ops = beta_ops(p)?;
    let kappa = ScalarPoly::kappa(p);
    println!("κ = {kappa}");
    for (i, name) in [(ZERO, "β₀"), (MINUS, "β₋"), (PLUS, "β₊")] {
        println!("{name} κ = {}", ops.beta(i, &kappa));
    }

    let y = ScalarPoly::var(p, PLUS).mul(&ScalarPoly::var(p, ZERO));
    let g = ops.grad(&y);
    println!("grad(y₊y₀) = {g}");
    println!("curl grad = {}", ops.curl(&g));
    println!("div curl grad = {}", ops.div(&ops.curl(&g)));

    // which powers of κ are divergences?
    for k in 0..p as u32 {
        let witness = solve_div(&ops, &kappa.pow(k));
        println!("κ^{k}: {}", if witness.is_some() { "divergence" } else { "not a divergence" });
    }
    match koszul_agreement(p, p as usize + 1)? {
        Ok(n) => println!("matches d₀ on {n} basis cochains"),
        Err((s, t)) => println!("disagrees with d₀ at ({s},{t})"),
    }
    Ok(())
}
