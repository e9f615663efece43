//! de Sitter space: round balls, domains `B₀⁺(S)` and cosmological time.

pub mod cosmo;
pub mod domain;
