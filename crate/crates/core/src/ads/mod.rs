//! Anti-de Sitter space: models, regular domains and cosmological time.

pub mod cosmo;
pub mod domain;
pub mod model;
