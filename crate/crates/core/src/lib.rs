//! Finitely generated integral monoids, finite fibered categories, and the
//! characteristic-level models connecting them.

pub mod category;
pub mod harness;
pub mod models;
pub mod monoid;
