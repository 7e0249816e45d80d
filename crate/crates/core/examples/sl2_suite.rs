//! Runs every sl₂ de Rham check for a list of odd primes.
//!
//!     cargo run --release --example sl2_suite -- 3 5 7

use std::time::Instant;

use lie_sseq::sl2::verify_suite;

fn main() -> lie_sseq::Result<()> {
    let primes: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let primes = if primes.is_empty() { vec![3, 5, 7] } else { primes };
    let start = Instant::now();
    let verdicts = verify_suite(&primes)?;
    for v in &verdicts {
        println!("{v}");
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    println!("{} checks, {failed} failed, {:.1?}", verdicts.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(3);
    }
    Ok(())
}
