//! Checks d₀² = 0, d₁² = 0 and d₀d₁ + d₁d₀ = 0 on every block of a Hodge
//! window, exhaustively where blocks are small and by seeded sampling above
//! a column budget.
//!
//!     cargo run --release --example axioms -- sp4 Fp:5 8 2000

use std::time::Instant;

use lie_sseq::koszul::verify::{verify_axioms, AxiomOptions};
use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;

fn main() -> lie_sseq::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("sl3", String::as_str);
    let ring = args.get(1).map_or("Q", String::as_str).parse()?;
    let max_hodge = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(8);
    let full_budget = args.get(3).and_then(|a| a.parse().ok()).unwrap_or(2_000);

    let kc = KoszulComplex::new(&builtin(name, ring)?)?;
    let opts = AxiomOptions { max_hodge, full_budget, ..Default::default() };
    let start = Instant::now();
    let r = verify_axioms(&kc, &opts);
    println!(
        "{} over {}: {} blocks exhaustive, {} sampled, {} columns, {} Leibniz pairs, {:.1?}",
        r.algebra,
        r.ring,
        r.blocks_full,
        r.blocks_sampled,
        r.columns_checked,
        r.leibniz_pairs,
        start.elapsed()
    );
    for f in &r.failures {
        println!("  {f}");
    }
    println!("{}", if r.passed() { "all identities hold" } else { "FAILED" });
    Ok(())
}
