//! Structure constants from JSON. Indices are 1-based, `[i, j, k, c]`
//! meaning `[e_i, e_j] = c e_k + …`; antisymmetry is implied.
//!
//!     cargo run --release --example json_algebra -- my_algebra.json

use lie_sseq::koszul::KoszulComplex;
use lie_sseq::lie::{json, JacobiVerdict};
use lie_sseq::spectral::compute_e1;

// the Heisenberg algebra: [x, y] = z
const HEISENBERG: &str = r#"{
  "name": "heisenberg",
  "dim": 3,
  "ring": "Q",
  "basis_names": ["x", "y", "z"],
  "constants": [[1, 2, 3, 1]]
}"#;

fn main() -> lie_sseq::Result<()> {
    let alg = match std::env::args().nth(1) {
        Some(path) => json::load(path.as_ref())?,
        None => json::from_json(HEISENBERG)?,
    };
    let verdict = alg.jacobi_check();
    println!("{verdict}");
    if verdict != JacobiVerdict::Pass {
        std::process::exit(2);
    }
    let e1 = compute_e1(&KoszulComplex::new(&alg)?, 4)?;
    print!("{}", e1.render_grid());
    println!("{}", json::to_json(&alg));
    Ok(())
}
