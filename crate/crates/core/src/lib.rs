//! Exact computation of genus-0 open Gromov-Witten invariants of toric
//! Calabi-Yau manifolds of the form `K_Y` (the canonical bundle over a
//! compact toric Fano base), by inverting the toric mirror map of the
//! compactified `P^1`-bundle over the base, together with verification that
//! the mirror-map components are annihilated by the associated GKZ-type
//! differential operators.
//!
//! All arithmetic is exact: arbitrary-precision rationals, truncated
//! multivariate power series, and integer lattice geometry. No floating
//! point is used anywhere.

pub mod gkz;
pub mod manifest;
pub mod mirror;
pub mod opengw;
pub mod render;
pub mod series;
pub mod toric;

pub use gkz::{GkzOperator, GkzReport};
pub use mirror::MirrorMap;
pub use opengw::OpenGw;
pub use series::{Coeff, LogSeries, MultiSeries, SeriesError};
pub use toric::{
    CompactifiedData, CurveDegree, DivisorClass, ToricCYData, ToricError, ToricGeometry,
    ValidationReport, Violation,
};
