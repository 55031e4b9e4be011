//! Finite categories, fibrations, minimal objects and the descent construction.

pub mod constructions;
pub mod descent;
pub mod error;
pub mod fibration;
pub mod finite;
pub mod functor;
pub mod lifting;
pub mod phi;
pub mod spec;
pub mod terminal;
pub mod tower;

pub use constructions::{coproduct, full_subcategory, inflate, product, subcategory};
pub use descent::{descent_construct, minimal_subfibration, Descent, DescentCheck, MinimalSubfibration};
pub use error::{CategoryError, Result};
pub use fibration::{
    associated_groupoid_fibration, cartesian_table, fiber_category, groupoid_fibration_defect, is_cartesian,
    is_fibered, is_groupoid_fibration, AssociatedGroupoidFibration,
};
pub use finite::{examples, Bounds, FiniteCategory, Mor, MorphismDecl, Obj};
pub use functor::{FunctorData, NaturalTransformation};
pub use lifting::{check_lifting_lemmas, LiftingReport};
pub use phi::{phi, LogCfg, Phi};
pub use terminal::{is_pseudo_terminal, weakly_terminal, WeaklyTerminal};
pub use tower::{ConditionReport, Tower};

#[cfg(test)]
mod tests;
pub use spec::{read_json, CategoryRef, CategorySpec, FunctorMapSpec, LogCfgSpec, MorphismSpec, TowerSpec};
