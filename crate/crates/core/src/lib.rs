//! Exact computation of the classifying spectral sequence of a Lie algebra.
//!
//! The bigraded algebra `E₀^{s,t} = Λᵗ(g*) ⊗ Sˢ(g*)` carries two commuting
//! (anticommuting) differentials: the Koszul differential `d₀` computing
//! `H*(g, Sˢ(ad*))` and the suspension `d₁: x_i ↦ y_i`. This crate builds
//! them exactly over Z, Q and F_p, computes the pages of the resulting
//! spectral sequence inside a Hodge-degree window, finds integral torsion,
//! and checks the mod-p structure of sl₂ through its de Rham model.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod koszul;
pub mod lie;
pub mod linalg;
pub mod spectral;
pub mod sl2;
pub mod torsion;

pub use error::{Error, Result};
