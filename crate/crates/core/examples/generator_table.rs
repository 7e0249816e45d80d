//! Audits the seventeen named generators of E₁[sl₂(F_p)] and then probes
//! how far their products reach.
//!
//!     cargo run --release --example generator_table -- 5 12

use lie_sseq::sl2::{audit_generator_table, explore_generators, generator_table};

fn main() -> lie_sseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let reach: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(2 * p as usize);

    let names: Vec<String> = ["h", "e", "f"].iter().map(|s| s.to_string()).collect();
    for g in generator_table(p)? {
        println!("{:>3}  (s,t,w) = ({},{},{:>3})  {}", g.name, g.s, g.t, g.w, g.cochain.render(&names));
    }

    let audit = audit_generator_table(p)?;
    println!();
    if audit.partial {
        println!("note: p < 5, several rows sit in degenerate positions");
    }
    for r in &audit.rows {
        let d1 = r.d1.as_ref().map_or(String::new(), |d| {
            format!("  d₁ → {} ({})", d.target, if d.exact { "exact" } else if d.in_e1 { "in E₁" } else { "fails" })
        });
        println!("{} {:>3}{d1}", if r.passed() { "ok  " } else { "FAIL" }, r.name);
    }
    for s in &audit.spans {
        println!("{} E₁^({},{}) dim {} spanned by {:?} (rank {})", if s.passed() { "ok  " } else { "FAIL" }, s.s, s.t, s.dim, s.elements, s.rank);
    }

    println!("\nproducts of generators against E₁, s ≤ {reach}:");
    let ex = explore_generators(p, reach)?;
    for c in ex.cells.iter().filter(|c| c.dim > 0) {
        let mark = if c.rank < c.dim { "  <- gap" } else { "" };
        println!("  ({:>2},{}) dim {:>2} rank {:>2}{mark}", c.s, c.t, c.dim, c.rank);
    }
    match ex.first_gap() {
        Some(c) => println!("first cell not generated: ({},{})", c.s, c.t),
        None => println!("every cell generated"),
    }
    Ok(())
}
