//! Growth curves, domination and equivalence of functions, length functions
//! on `Z`, and direct products of measured factors.

mod compare;
mod curve;
mod lenfun;
mod product;

pub use compare::{dominates, equivalent, Counterexample, EquivalenceReport, Relation};
pub use curve::{growth_curve, CurveMeta, GrowthCurve, GrowthSample, NOracleConfig};
pub use lenfun::{check_length_function, AxiomResult, LengthFunctionReport, LengthFunctionZ, LengthKind};
pub use product::{factor_growth_curve, Factor, FreeFactor, ProductGroup, RipsFactor};
