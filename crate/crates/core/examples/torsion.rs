//! Integral Koszul cohomology by Smith normal form, and the check that the
//! mod-p dimensions are exactly what the universal coefficient theorem
//! predicts.
//!
//!     cargo run --release --example torsion -- sl2 6

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::builtin;
use lie_sseq::linalg::Ring;
use lie_sseq::torsion::{integral_table, primes_of, render_table, ucf_against, UcfVerdict};

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "sl2".into());
    let n: usize = args.next().map_or(6, |s| s.parse().expect("Hodge bound"));

    let kc = KoszulComplex::new(&builtin(&name, Ring::Integers)?)?;
    let table = integral_table(&kc, n)?;
    print!("{}", render_table(&table));

    let primes = primes_of(&table, n);
    for (s, ps) in &primes.by_hodge {
        println!("s = {s}: torsion primes {ps:?}");
    }
    for p in [2, 3, 5, 7] {
        let audit = ucf_against(&kc, &table, p)?;
        let explained = audit.iter().filter(|e| e.verdict == UcfVerdict::TorsionExplained).count();
        let bad = audit.iter().filter(|e| e.verdict == UcfVerdict::Violation).count();
        println!("F_{p}: {explained} cells differ from Q, all explained by torsion: {}", bad == 0);
    }
    Ok(())
}
