//! The bigraded dga `E₀^{s,t} = Λᵗ(g*) ⊗ Sˢ(g*)` with `d₀` and `d₁`.

pub mod basis;
pub mod cochain;
pub mod complex;
pub mod dump;
pub mod verify;
pub mod weight;

pub use basis::{BasisElement, BasisTables, Exps, Mask, MAX_DIM, MAX_HODGE};
pub use cochain::Cochain;
pub use complex::{CochainBlock, Diff, KoszulComplex};
pub use weight::{block_strata, BlockStrata};
