//! Relations on the top exterior line of sl2 over F_p, through the
//! divergence: θ·u vanishes in E₁ iff θ = div g for some polynomial field g.
//!
//!     cargo run --release --example fundamental_relations -- 3 5 7 11 13

use lie_sseq::sl2::fundamental_relations;

fn main() -> lie_sseq::Result<()> {
    let primes: Vec<u64> = std::env::args().skip(1).map(|s| s.parse().expect("prime")).collect();
    let primes = if primes.is_empty() { vec![3, 5, 7] } else { primes };
    for p in primes {
        let r = fundamental_relations(p)?;
        let half = (p - 1) / 2;
        println!("p = {p}");
        match &r.relation_witness {
            Some(g) if g.len() < 300 => println!("  κ^{half} = div({g})"),
            Some(_) => println!("  κ^{half} = div(g), g with {} terms", r.witness_terms),
            None => println!("  κ^{half} is not a divergence"),
        }
        println!("  κ^{}·u ≠ 0: {}   τ ≠ 0: {}", half - 1, r.nonvanishing, r.tau_nonzero);
        println!("  u·s_i = 0: {:?}   κ^p = s₀² + s₋s₊: {}", r.annihilators, r.frobenius);
        println!("  Koszul complex agrees: {}", r.koszul_agrees);
    }
    Ok(())
}
