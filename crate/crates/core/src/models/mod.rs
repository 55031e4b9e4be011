//! Characteristic-monoid models of log curves, log points and finite
//! categories of log schemes.

pub mod curve;
pub mod error;
pub mod logsch;
pub mod point;

pub use curve::{basify_curve, is_basic_curve, structure_classify, CurveFiberDatum, CurvePointDatum, CurveStructure};
pub use error::{ModelError, Result};
pub use logsch::{build_finite_logsch, build_logsch_from_homs, FiniteLogSch, CONVENTION};
pub use point::{char_log_point_basic, CharLogPointDatum, PointBasic};
