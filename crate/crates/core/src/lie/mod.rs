//! Lie algebras by structure constants.

pub mod algebra;
pub mod builtins;
pub mod invariants;
pub mod json;
pub mod killing;

pub use algebra::{JacobiVerdict, LieAlgebra};
pub use builtins::{builtin, builtin_with_cap};
pub use invariants::{sigma_invariant, InvariantPolynomial};
pub use killing::{killing_form, BilinearForm};
