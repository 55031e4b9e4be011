//! Finitely generated integral monoids inside finitely generated abelian groups.

pub mod error;
pub mod face;
pub mod fgmonoid;
pub mod group;
pub mod hilbert;
pub mod hom;
pub mod integral;
pub mod lp;
pub mod pushout;
pub mod snf;
pub mod splitting;

pub use error::{MonoidError, Result};
pub use face::{is_face, kernel_face, quotient_by_face};
pub use fgmonoid::FgMonoid;
pub use group::{FgAbelianGroup, GroupElement, QuotientMap, Subgroup};
pub use hilbert::{hilbert_basis, is_saturated, saturate};
pub use hom::MonoidHom;
pub use integral::{is_integral_morphism, IntegralMono, Nilpotence};
pub use pushout::{monoid_pushout, verify_z_presentation, Pushout};
pub use snf::{smith_normal_form, IntMatrix, Snf};
pub use splitting::{
    cokernel, pushout_z_presentation, split_n, verify_split, CheckOutcome, Cokernel, CokernelClass, ZPresentation,
};
