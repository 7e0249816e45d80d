//! The numbered acceptance battery, one line per criterion.
//!
//!     cargo run --release --example acceptance -- 2 7 12

use lie_sseq::acceptance;

fn main() {
    let ids: Vec<u8> = std::env::args().skip(1).map(|s| s.parse().expect("criterion id")).collect();
    let outcomes = acceptance::run(&ids);
    for o in &outcomes {
        println!("{o}  ({:.1}s)", o.seconds);
    }
    if outcomes.iter().any(|o| !o.pass) {
        std::process::exit(3);
    }
}
