//! Deterministic generators for worked examples and seeded random families.

pub mod algebras;
pub mod contexts;
pub mod corings;
pub mod modules;
pub mod random;
