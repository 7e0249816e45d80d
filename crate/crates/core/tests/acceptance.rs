//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
//!
//!     cargo test --release --test acceptance

use lie_sseq::acceptance;

fn main() {
    let outcomes = acceptance::run(&[]);
    for o in &outcomes {
        println!("{o} [{:.1}s]", o.seconds);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("acceptance: {}/{} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if outcomes.len() != 12 || !failed.is_empty() {
        std::process::exit(1);
    }
}
